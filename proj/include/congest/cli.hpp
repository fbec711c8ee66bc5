#pragma once

#include <ostream>

namespace congest {

/// Command-line entry point: run, trials, gen and oracle subcommands.
/// Returns 0 on success, 1 when execution faults, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace congest
