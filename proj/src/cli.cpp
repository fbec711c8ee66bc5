#include "congest/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "congest/bipartite_walks.hpp"
#include "congest/cycle_free.hpp"
#include "congest/dense_emulation.hpp"
#include "congest/generators.hpp"
#include "congest/oracles.hpp"
#include "congest/report.hpp"
#include "congest/triangle_free.hpp"

namespace congest {

namespace {

/// Bad flags, missing parameters or unreadable inputs; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string algorithm;
  std::string graph_path;
  std::string output;
  std::string params_json;
  std::string property;
  std::string model = "general";
  std::string family = "far";
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t threads = 1;
  std::size_t n = 0;
  std::size_t k = 3;
  std::optional<std::size_t> d;
  std::optional<std::size_t> max_rounds;
  double epsilon = 0.1;
  double lb_c = 8.0;
  std::size_t degree_cap = 16;
  Json flags = Json::object();  // explicitly given algorithm parameters
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parameter record: --params-json first, explicit flags on top.
Json parameter_bag(const Options& opt) {
  Json bag = Json::object();
  if (!opt.params_json.empty()) {
    const std::string text = opt.params_json.front() == '@' ? slurp(opt.params_json.substr(1)) : opt.params_json;
    try {
      bag = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("--params-json: ") + e.what());
    }
    if (!bag.is_object()) throw UsageError("--params-json must be a JSON object");
  }
  for (const auto& [key, value] : opt.flags.items()) bag[key] = value;
  return bag;
}

template <class T>
T require(const Json& bag, const std::string& key, const std::string& algorithm) {
  if (!bag.contains(key)) throw UsageError("--" + key + " is required for algorithm '" + algorithm + "'");
  try {
    return bag.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError("--" + key + " has the wrong type");
  }
}

template <class T>
T optional_param(const Json& bag, const std::string& key, T fallback) {
  if (!bag.contains(key)) return fallback;
  try {
    return bag.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError("--" + key + " has the wrong type");
  }
}

Graph load_graph(const std::string& path) {
  try {
    return read_edge_list_file(path);
  } catch (const GraphError& e) {
    throw UsageError("--graph '" + path + "': " + e.what());
  }
}

std::string sidecar_path(const std::string& graph_path) { return graph_path + ".cert.json"; }

std::optional<Json> load_sidecar(const std::string& graph_path) {
  const std::string path = sidecar_path(graph_path);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    return certificate_json(certificate_from_json(Json::parse(slurp(path))));
  } catch (const std::exception& e) {
    throw UsageError("certificate '" + path + "': " + e.what());
  }
}

/// A configured tester: its factory, its parameter echo and its round budget.
struct Experiment {
  AlgorithmFactory factory;
  Json params;
  std::size_t round_budget = 0;
  std::optional<NamedChecker> checker;
  std::optional<EmulationParams> emulation;
};

Experiment configure(const std::string& algorithm, const Json& bag, const Graph& g) {
  const std::size_t n = g.num_vertices();
  Experiment e;
  if (algorithm == "triangle") {
    TriangleParams p{require<double>(bag, "epsilon", algorithm)};
    p.validate();
    e.factory = triangle_factory(p);
    e.params = {{"epsilon", p.epsilon}, {"iterations", p.iterations()}};
    e.round_budget = p.rounds();
  } else if (algorithm == "bipartite") {
    const auto d = require<std::size_t>(bag, "d", algorithm);
    const auto eps = require<double>(bag, "epsilon", algorithm);
    const auto mode = optional_param<std::string>(bag, "mode", "scaled");
    BipartiteParams p;
    if (mode == "scaled") {
      p = BipartiteParams::scaled(d, eps, require<std::size_t>(bag, "L", algorithm),
                                  require<std::size_t>(bag, "eta", algorithm));
    } else if (mode == "paper_faithful") {
      p = BipartiteParams::paper_faithful(n, d, eps, optional_param<double>(bag, "c_k", 1.0),
                                          optional_param<double>(bag, "c_l", 1.0));
    } else {
      throw UsageError("--mode must be 'scaled' or 'paper_faithful', got '" + mode + "'");
    }
    e.factory = bipartite_factory(g, p);
    e.params = {{"d", p.d},
                {"epsilon", p.epsilon},
                {"mode", mode},
                {"L", p.walk_length},
                {"eta", p.iterations},
                {"K", p.analysis_k},
                {"c_k", p.c_k},
                {"c_l", p.c_l},
                {"gamma", p.gamma(n)},
                {"xi", p.congestion_cap(n)},
                {"rounds_per_move", p.rounds_per_move(n)}};
    e.round_budget = p.round_budget(n);
  } else if (algorithm == "cycle") {
    CycleParams p;
    p.epsilon = require<double>(bag, "epsilon", algorithm);
    p.log_base = optional_param<double>(bag, "log_base", 2.0);
    p.force_no_deletion = optional_param<bool>(bag, "force_no_deletion", false);
    p.validate();
    e.factory = cycle_factory(p);
    e.params = {{"epsilon", p.epsilon},
                {"log_base", p.log_base},
                {"force_no_deletion", p.force_no_deletion},
                {"deletion_probability", p.deletion_probability()},
                {"phase_one_rounds", p.phase_one_rounds(n)},
                {"phase_two_rounds", p.phase_two_rounds(n)}};
    e.round_budget = p.total_rounds(n);
  } else if (algorithm == "emulate") {
    EmulationParams p;
    p.q = require<std::size_t>(bag, "q", algorithm);
    p.validate();
    NamedChecker checker = make_checker(require<std::string>(bag, "checker", algorithm));
    e.factory = emulation_factory(checker.check, p);
    e.params = {{"q", p.q},
                {"checker", checker.name},
                {"pick_probability", p.pick_probability(n)},
                {"inner_iterations", p.inner_iterations()},
                {"edge_cap", p.edge_cap()},
                {"round_constant", EmulationParams::kRoundConstant},
                {"round_bound", p.round_bound()}};
    e.round_budget = p.total_rounds();
    e.checker = std::move(checker);
    e.emulation = p;
  } else {
    throw UsageError("--algorithm must be one of emulate, triangle, bipartite, cycle; got '" + algorithm + "'");
  }
  return e;
}

SimConfig sim_config(const Options& opt, const Experiment& e) {
  SimConfig cfg;
  cfg.seed = opt.seed;
  cfg.max_rounds = opt.max_rounds.value_or(std::max<std::size_t>(1, e.round_budget));
  cfg.validate();
  return cfg;
}

Json experiment_header(const std::string& command, const Options& opt, const Graph& g, const Experiment& e) {
  Json j;
  j["command"] = command;
  j["algorithm"] = opt.algorithm;
  j["seed"] = opt.seed;
  j["graph"] = graph_json(g);
  j["graph"]["path"] = std::filesystem::path(opt.graph_path).filename().string();
  j["params"] = e.params;
  j["round_budget"] = e.round_budget;
  return j;
}

Json command_run(const Options& opt) {
  const Graph g = load_graph(opt.graph_path);
  const Experiment e = configure(opt.algorithm, parameter_bag(opt), g);
  const SimConfig cfg = sim_config(opt, e);
  Json report = experiment_header("run", opt, g, e);
  if (e.emulation) {
    const EmulationRun r = emulate(g, e.checker->check, *e.emulation, cfg);
    report["transcript"] = transcript_json(r.transcript);
    Json picked = Json::array();
    for (const auto& c : r.picked_counts) picked.push_back(c ? Json(*c) : Json(nullptr));
    report["emulation"] = {{"round_constant", r.round_constant},
                           {"round_bound", r.round_bound},
                           {"picked_counts", picked},
                           {"capped_vertices", r.capped_vertices},
                           {"sends_while_capped", r.sends_while_capped}};
  } else {
    report["transcript"] = transcript_json(run(g, e.factory, cfg));
  }
  if (auto cert = load_sidecar(opt.graph_path)) report["certificate"] = *cert;
  return report;
}

Json command_trials(const Options& opt) {
  if (opt.trials == 0) throw UsageError("--trials must be at least 1");
  if (opt.threads == 0) throw UsageError("--threads must be at least 1");
  const Graph g = load_graph(opt.graph_path);
  const Experiment e = configure(opt.algorithm, parameter_bag(opt), g);
  if (e.checker) {
    if (const std::string failure = checker_self_test(e.checker->check); !failure.empty()) {
      throw ContractViolation("checker '" + e.checker->name + "' failed its self-test: " + failure);
    }
  }
  const SimConfig cfg = sim_config(opt, e);
  Json report = experiment_header("trials", opt, g, e);
  report["trials"] = opt.trials;
  report["stats"] = stats_json(run_trials(g, e.factory, cfg, opt.trials, opt.threads));
  if (auto cert = load_sidecar(opt.graph_path)) report["certificate"] = *cert;
  return report;
}

Json command_gen(const Options& opt) {
  if (opt.output.empty()) throw UsageError("--output is required for gen (edge-list path)");
  if (opt.n == 0) throw UsageError("--n must be at least 1");
  const Property property = parse_property(opt.property);
  const Model model = parse_model(opt.model);
  Json report;
  report["command"] = "gen";
  report["family"] = opt.family;
  report["seed"] = opt.seed;
  Graph g;
  FarnessCertificate cert;
  if (opt.family == "far") {
    FarInstance inst = far_instance(property, opt.n, opt.epsilon, model, opt.seed, opt.d);
    g = std::move(inst.graph);
    cert = inst.certificate;
    report["sample_seed"] = inst.seed;
    report["attempts"] = inst.attempts;
  } else if (opt.family == "lower_bound") {
    LowerBoundParams params;
    params.n = opt.n;
    params.c = opt.lb_c;
    params.degree_cap = opt.degree_cap;
    LowerBoundInstance inst = lower_bound_instance(params, opt.seed);
    g = std::move(inst.graph);
    const auto& log = inst.log;
    report["construction"] = {{"c", params.c},
                              {"degree_cap", params.degree_cap},
                              {"initial_edges", log.initial_edges},
                              {"over_cap_vertices", log.over_cap_vertices},
                              {"edges_removed_degree", log.edges_removed_degree},
                              {"short_cycles_found", log.short_cycles_found},
                              {"edges_removed_cycles", log.edges_removed_cycles},
                              {"final_edges", log.final_edges},
                              {"max_broken_length", log.max_broken_length}};
    cert = certify(g, property, opt.epsilon, model, opt.d, opt.k);
  } else {
    throw UsageError("--family must be 'far' or 'lower_bound', got '" + opt.family + "'");
  }
  write_edge_list_file(g, opt.output);
  std::ofstream side(sidecar_path(opt.output));
  if (!side) throw std::runtime_error("cannot write '" + sidecar_path(opt.output) + "'");
  side << render(certificate_json(cert));
  report["graph"] = graph_json(g);
  report["graph"]["path"] = std::filesystem::path(opt.output).filename().string();
  report["certificate"] = certificate_json(cert);
  return report;
}

Json command_oracle(const Options& opt) {
  const Graph g = load_graph(opt.graph_path);
  const Property property = parse_property(opt.property);
  const Model model = parse_model(opt.model);
  Json report;
  report["command"] = "oracle";
  report["graph"] = graph_json(g);
  report["graph"]["path"] = std::filesystem::path(opt.graph_path).filename().string();
  report["certificate"] = certificate_json(certify(g, property, opt.epsilon, model, opt.d, opt.k));
  return report;
}

void add_algorithm_flags(CLI::App& sub, Options& opt) {
  sub.add_option("--algorithm", opt.algorithm, "emulate | triangle | bipartite | cycle")->required();
  sub.add_option("--graph", opt.graph_path, "edge-list file")->required();
  sub.add_option("--seed", opt.seed, "base seed");
  sub.add_option("--output", opt.output, "write the report here instead of stdout");
  sub.add_option("--params-json", opt.params_json, "parameter record as JSON text or @file");
  sub.add_option("--max-rounds", opt.max_rounds, "engine round cap (default: the round budget)");
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help, auto tag) {
    using T = decltype(tag);
    sub.add_option_function<T>(name, [&opt, key](const T& v) { opt.flags[key] = v; }, help);
  };
  flag("--epsilon", "epsilon", "distance parameter", double{});
  flag("--d", "d", "degree bound (bipartite)", std::size_t{});
  flag("--mode", "mode", "scaled | paper_faithful (bipartite)", std::string{});
  flag("--L", "L", "walk length (bipartite, scaled mode)", std::size_t{});
  flag("--eta", "eta", "iterations (bipartite, scaled mode)", std::size_t{});
  flag("--c-k", "c_k", "constant of K (bipartite, paper_faithful mode)", double{});
  flag("--c-l", "c_l", "constant of L (bipartite, paper_faithful mode)", double{});
  flag("--log-base", "log_base", "logarithm base for phase lengths (cycle)", double{});
  flag("--q", "q", "witness size bound (emulate)", std::size_t{});
  flag("--checker", "checker", "k-colorability:<k> | perfect (emulate)", std::string{});
  sub.add_flag_callback("--force-no-deletion", [&opt] { opt.flags["force_no_deletion"] = true; },
                        "skip sparsification (cycle, test hook)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Distributed property testers on a simulated CONGEST network", "congest"};
  app.require_subcommand(1, 1);

  CLI::App* run_cmd = app.add_subcommand("run", "run one simulation and report its transcript");
  add_algorithm_flags(*run_cmd, opt);

  CLI::App* trials_cmd = app.add_subcommand("trials", "Monte Carlo trials with seeds seed..seed+trials-1");
  add_algorithm_flags(*trials_cmd, opt);
  trials_cmd->add_option("--trials", opt.trials, "number of trials");
  trials_cmd->add_option("--threads", opt.threads, "worker threads (results do not depend on it)");

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a certified instance");
  gen_cmd->add_option("--property", opt.property, "bipartite | triangle_free | cycle_free | k_colorable")->required();
  gen_cmd->add_option("--n", opt.n, "vertex count")->required();
  gen_cmd->add_option("--epsilon", opt.epsilon, "target distance");
  gen_cmd->add_option("--model", opt.model, "dense | general | sparse");
  gen_cmd->add_option("--seed", opt.seed, "seed");
  gen_cmd->add_option("--d", opt.d, "degree bound");
  gen_cmd->add_option("--k", opt.k, "colors (k_colorable)");
  gen_cmd->add_option("--family", opt.family, "far | lower_bound");
  gen_cmd->add_option("--c", opt.lb_c, "expected degree (lower_bound)");
  gen_cmd->add_option("--degree-cap", opt.degree_cap, "degree cap (lower_bound)");
  gen_cmd->add_option("--output", opt.output, "edge-list path; certificate goes to <path>.cert.json")->required();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "certify a graph's distance from a property");
  oracle_cmd->add_option("--graph", opt.graph_path, "edge-list file")->required();
  oracle_cmd->add_option("--property", opt.property, "bipartite | triangle_free | cycle_free | k_colorable")
      ->required();
  oracle_cmd->add_option("--epsilon", opt.epsilon, "distance parameter");
  oracle_cmd->add_option("--model", opt.model, "dense | general | sparse");
  oracle_cmd->add_option("--d", opt.d, "degree bound");
  oracle_cmd->add_option("--k", opt.k, "colors (k_colorable)");
  oracle_cmd->add_option("--output", opt.output, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Json report;
    if (run_cmd->parsed()) {
      report = command_run(opt);
    } else if (trials_cmd->parsed()) {
      report = command_trials(opt);
    } else if (gen_cmd->parsed()) {
      report = command_gen(opt);
    } else {
      report = command_oracle(opt);
    }
    const std::string text = render(report);
    if (!opt.output.empty() && !gen_cmd->parsed()) {
      std::ofstream file(opt.output);
      if (!file) throw UsageError("--output: cannot write '" + opt.output + "'");
      file << text;
    } else {
      out << text;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace congest
