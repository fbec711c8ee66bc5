#pragma once

#include <string>

#include "json.hpp"

#include "congest/graph.hpp"
#include "congest/oracles.hpp"
#include "congest/simulator.hpp"

namespace congest {

using Json = nlohmann::ordered_json;

/// rounds_used, reject, per_round_messages, max_message_bits, bandwidth_bits,
/// hit_round_cap and a verdict histogram.
Json transcript_json(const Transcript& t);

Json stats_json(const RejectionStats& s);

Json graph_json(const Graph& g);

Json certificate_json(const FarnessCertificate& c);
/// Inverse of certificate_json; throws std::invalid_argument on malformed input.
FarnessCertificate certificate_from_json(const Json& j);

/// Stable two-space rendering with a trailing newline.
std::string render(const Json& j);

}  // namespace congest
