#include "congest/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace congest {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kAccept:
      return "accept";
    case Verdict::kReject:
      return "reject";
    case Verdict::kUndecided:
      break;
  }
  return "undecided";
}

void SimConfig::validate() const {
  if (!(bandwidth_multiplier > 0.0) || !std::isfinite(bandwidth_multiplier)) {
    throw std::invalid_argument("bandwidth multiplier must be positive");
  }
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
}

std::size_t SimConfig::bandwidth_bits(std::size_t n) const {
  const double bits = std::ceil(bandwidth_multiplier * std::log2(static_cast<double>(n) + 1.0));
  return static_cast<std::size_t>(std::max(1.0, bits));
}

SimulationFault::SimulationFault(FaultKind kind, VertexId vertex, std::size_t round, std::size_t bits,
                                 const std::string& what)
    : std::runtime_error(what), kind_(kind), vertex_(vertex), round_(round), bits_(bits) {}

TrialFault::TrialFault(std::size_t trial, const std::string& what)
    : std::runtime_error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}

std::size_t Transcript::total_messages() const {
  std::size_t total = 0;
  for (auto c : per_round_messages) total += c;
  return total;
}

std::size_t Transcript::count(Verdict v) const { return static_cast<std::size_t>(std::count(verdicts.begin(), verdicts.end(), v)); }

void Outbox::send(VertexId to, const Message& msg) { sim_.deliver(self_, to, msg); }

void Outbox::send_all(const Message& msg, std::optional<VertexId> except) {
  for (VertexId w : sim_.graph().neighbors(self_)) {
    if (except && *except == w) continue;
    sim_.deliver(self_, w, msg);
  }
}

Simulation::Simulation(const Graph& g, const AlgorithmFactory& factory, const SimConfig& cfg)
    : graph_(g), cfg_(cfg) {
  cfg_.validate();
  const std::size_t n = g.num_vertices();
  bandwidth_ = cfg_.bandwidth_bits(n);
  automata_.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    automata_.push_back(factory(VertexInit{v, g.neighbors(v), n, bandwidth_, RngStream(cfg_.seed, v)}));
  }
  inbox_.resize(n);
  slot_offset_.assign(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) slot_offset_[v + 1] = slot_offset_[v] + g.degree(v);
  edge_stamp_.assign(slot_offset_[n], 0);
}

void Simulation::deliver(VertexId from, VertexId to, const Message& msg) {
  const auto index = graph_.neighbor_index(from, to);
  if (!index) {
    throw SimulationFault(FaultKind::kNotNeighbor, from, current_round_, msg.bit_size(),
                          "vertex " + std::to_string(from) + " sent to non-neighbor " + std::to_string(to) +
                              " in round " + std::to_string(current_round_));
  }
  if (msg.bit_size() > bandwidth_) {
    throw SimulationFault(FaultKind::kBandwidth, from, current_round_, msg.bit_size(),
                          "bandwidth violation: vertex " + std::to_string(from) + " sent " +
                              std::to_string(msg.bit_size()) + " bits (budget " + std::to_string(bandwidth_) +
                              ") in round " + std::to_string(current_round_));
  }
  auto& stamp = edge_stamp_[slot_offset_[from] + *index];
  if (stamp == current_round_ + 1) {
    throw SimulationFault(FaultKind::kDuplicateSend, from, current_round_, msg.bit_size(),
                          "vertex " + std::to_string(from) + " sent two messages to " + std::to_string(to) +
                              " in round " + std::to_string(current_round_));
  }
  stamp = current_round_ + 1;
  inbox_[to].push_back(Incoming{from, msg});
  ++round_messages_;
  max_bits_ = std::max(max_bits_, msg.bit_size());
}

Transcript Simulation::run(const RoundObserver& observer) {
  const std::size_t n = graph_.num_vertices();
  Transcript t;
  t.bandwidth_bits = bandwidth_;
  t.verdicts.assign(n, Verdict::kUndecided);

  auto all_terminated = [&] {
    return std::all_of(automata_.begin(), automata_.end(), [](const auto& a) { return a->terminated(); });
  };

  bool rejected = false;
  for (current_round_ = 0; current_round_ < cfg_.max_rounds; ++current_round_) {
    if (all_terminated()) break;
    round_messages_ = 0;
    for (auto& box : inbox_) box.clear();

    for (VertexId v = 0; v < n; ++v) {
      if (automata_[v]->terminated()) continue;
      Outbox out(*this, v);
      automata_[v]->send(current_round_, out);
    }
    for (VertexId v = 0; v < n; ++v) {
      if (automata_[v]->terminated()) continue;
      automata_[v]->receive(current_round_, inbox_[v]);
      const Verdict now = automata_[v]->verdict();
      if (t.verdicts[v] == Verdict::kReject && now != Verdict::kReject) {
        throw SimulationFault(FaultKind::kVerdictFlip, v, current_round_, 0,
                              "vertex " + std::to_string(v) + " withdrew a reject verdict in round " +
                                  std::to_string(current_round_));
      }
      t.verdicts[v] = now;
      if (now == Verdict::kReject) {
        rejected = true;
        if (cfg_.halt_policy == HaltPolicy::kImmediate) break;
      }
    }
    t.per_round_messages.push_back(round_messages_);
    t.rounds_used = current_round_ + 1;
    if (observer) observer(current_round_, *this);
    if (rejected) break;
  }
  if (!rejected && !all_terminated()) t.hit_round_cap = true;

  for (VertexId v = 0; v < n; ++v) {
    const Verdict now = automata_[v]->verdict();
    if (t.verdicts[v] == Verdict::kReject && now != Verdict::kReject) {
      throw SimulationFault(FaultKind::kVerdictFlip, v, t.rounds_used, 0,
                            "vertex " + std::to_string(v) + " withdrew a reject verdict");
    }
    t.verdicts[v] = now;
  }
  t.max_message_bits = max_bits_;
  t.global_verdict = rejected || t.count(Verdict::kReject) > 0 ? Verdict::kReject
                     : t.count(Verdict::kUndecided) > 0       ? Verdict::kUndecided
                                                              : Verdict::kAccept;
  return t;
}

Transcript run(const Graph& g, const AlgorithmFactory& factory, const SimConfig& cfg) {
  Simulation sim(g, factory, cfg);
  return sim.run();
}

RejectionStats summarize(std::span<const Transcript> transcripts) {
  RejectionStats stats;
  stats.trials = transcripts.size();
  double rounds = 0.0;
  for (const auto& t : transcripts) {
    if (t.rejected()) ++stats.rejections;
    rounds += static_cast<double>(t.rounds_used);
    stats.max_rounds = std::max(stats.max_rounds, t.rounds_used);
    stats.max_congestion_observed = std::max(stats.max_congestion_observed, t.max_message_bits);
  }
  if (stats.trials > 0) {
    stats.reject_fraction = static_cast<double>(stats.rejections) / static_cast<double>(stats.trials);
    stats.mean_rounds = rounds / static_cast<double>(stats.trials);
  }
  return stats;
}

RejectionStats run_trials(const Graph& g, const AlgorithmFactory& factory, const SimConfig& cfg, std::size_t trials,
                          std::size_t threads) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  cfg.validate();
  std::vector<Transcript> transcripts(trials);
  std::vector<std::exception_ptr> errors(trials);

  auto run_one = [&](std::size_t trial) {
    SimConfig trial_cfg = cfg;
    trial_cfg.seed = cfg.seed + trial;
    try {
      transcripts[trial] = run(g, factory, trial_cfg);
    } catch (...) {
      errors[trial] = std::current_exception();
    }
  };

  threads = std::clamp<std::size_t>(threads, 1, trials);
  if (threads == 1) {
    for (std::size_t t = 0; t < trials; ++t) run_one(t);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < trials; t += threads) run_one(t);
      });
    }
  }

  for (std::size_t t = 0; t < trials; ++t) {
    if (!errors[t]) continue;
    try {
      std::rethrow_exception(errors[t]);
    } catch (const std::exception& e) {
      throw TrialFault(t, e.what());
    }
  }
  return summarize(transcripts);
}

double binomial_sigma(double p, std::size_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace congest
