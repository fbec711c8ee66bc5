#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "congest/graph.hpp"
#include "congest/message.hpp"
#include "congest/rng.hpp"

namespace congest {

class Simulation;

enum class Verdict : std::uint8_t { kUndecided, kAccept, kReject };

const char* to_string(Verdict v);

/// What happens to the rest of a round once some vertex rejects.
enum class HaltPolicy : std::uint8_t {
  kEndOfRound,  // finish the round for every vertex, then stop
  kImmediate,   // stop right after the rejecting vertex's receive step
};

struct SimConfig {
  double bandwidth_multiplier = 4.0;
  std::size_t max_rounds = 1'000'000;
  std::uint64_t seed = 0;
  HaltPolicy halt_policy = HaltPolicy::kEndOfRound;

  void validate() const;

  /// Per-message budget B = ceil(c * log2(n + 1)) bits.
  std::size_t bandwidth_bits(std::size_t n) const;
};

struct Incoming {
  VertexId from;
  Message message;
};

/// Everything a vertex automaton learns at construction time.
struct VertexInit {
  VertexId id;
  std::span<const VertexId> neighbors;
  std::size_t num_vertices;
  std::size_t bandwidth_bits;
  RngStream rng;
};

class Outbox;

/// Per-vertex automaton driven by the engine.
///
/// Each round the engine calls send() on every live vertex, delivers the
/// messages, then calls receive() with the vertex's inbox ordered by sender
/// id. A vertex may send at most one message per neighbor per round.
class VertexAlgorithm {
 public:
  virtual ~VertexAlgorithm() = default;

  virtual void send(std::size_t round, Outbox& out) = 0;
  virtual void receive(std::size_t round, std::span<const Incoming> inbox) = 0;
  virtual Verdict verdict() const = 0;
  virtual bool terminated() const = 0;
};

using AlgorithmFactory = std::function<std::unique_ptr<VertexAlgorithm>(VertexInit)>;

enum class FaultKind : std::uint8_t { kBandwidth, kDuplicateSend, kNotNeighbor, kVerdictFlip };

class SimulationFault : public std::runtime_error {
 public:
  SimulationFault(FaultKind kind, VertexId vertex, std::size_t round, std::size_t bits, const std::string& what);

  FaultKind kind() const { return kind_; }
  VertexId vertex() const { return vertex_; }
  std::size_t round() const { return round_; }
  std::size_t bits() const { return bits_; }

 private:
  FaultKind kind_;
  VertexId vertex_;
  std::size_t round_;
  std::size_t bits_;
};

/// A fault raised inside run_trials, tagged with the failing trial.
class TrialFault : public std::runtime_error {
 public:
  TrialFault(std::size_t trial, const std::string& what);
  std::size_t trial() const { return trial_; }

 private:
  std::size_t trial_;
};

struct Transcript {
  std::size_t rounds_used = 0;
  std::vector<std::size_t> per_round_messages;
  std::size_t max_message_bits = 0;
  std::size_t bandwidth_bits = 0;
  std::vector<Verdict> verdicts;
  Verdict global_verdict = Verdict::kUndecided;
  bool hit_round_cap = false;

  bool rejected() const { return global_verdict == Verdict::kReject; }
  std::size_t total_messages() const;
  std::size_t count(Verdict v) const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

class Outbox {
 public:
  /// Queues `msg` for neighbor `to`; the engine validates the contract.
  void send(VertexId to, const Message& msg);
  /// Sends `msg` to every neighbor, optionally skipping one.
  void send_all(const Message& msg, std::optional<VertexId> except = std::nullopt);

 private:
  friend class Simulation;
  Outbox(Simulation& sim, VertexId self) : sim_(sim), self_(self) {}

  Simulation& sim_;
  VertexId self_;
};

/// Round-synchronous CONGEST engine over one graph and one configuration.
///
/// Keeps the automata alive after run() so callers can inspect final vertex
/// state; vertex_as<T>() downcasts to the concrete automaton type.
class Simulation {
 public:
  using RoundObserver = std::function<void(std::size_t round, const Simulation&)>;

  Simulation(const Graph& g, const AlgorithmFactory& factory, const SimConfig& cfg);

  Transcript run(const RoundObserver& observer = {});

  const Graph& graph() const { return graph_; }
  std::size_t bandwidth_bits() const { return bandwidth_; }

  VertexAlgorithm& vertex(VertexId v) { return *automata_[v]; }
  const VertexAlgorithm& vertex(VertexId v) const { return *automata_[v]; }

  template <class T>
  T& vertex_as(VertexId v) {
    return static_cast<T&>(*automata_[v]);
  }
  template <class T>
  const T& vertex_as(VertexId v) const {
    return static_cast<const T&>(*automata_[v]);
  }

 private:
  friend class Outbox;
  void deliver(VertexId from, VertexId to, const Message& msg);

  const Graph& graph_;
  SimConfig cfg_;
  std::size_t bandwidth_;
  std::vector<std::unique_ptr<VertexAlgorithm>> automata_;
  std::vector<std::vector<Incoming>> inbox_;
  // Last round (plus one) in which each directed edge slot carried a message.
  std::vector<std::size_t> edge_stamp_;
  std::vector<std::size_t> slot_offset_;
  std::size_t current_round_ = 0;
  std::size_t round_messages_ = 0;
  std::size_t max_bits_ = 0;
};

/// Runs one simulation to completion.
Transcript run(const Graph& g, const AlgorithmFactory& factory, const SimConfig& cfg);

struct RejectionStats {
  std::size_t trials = 0;
  std::size_t rejections = 0;
  double reject_fraction = 0.0;
  double mean_rounds = 0.0;
  std::size_t max_rounds = 0;
  // Largest number of bits carried by one edge in one round over all trials.
  std::size_t max_congestion_observed = 0;

  friend bool operator==(const RejectionStats&, const RejectionStats&) = default;
};

/// Monte Carlo harness: trial t runs with seed cfg.seed + t. Trials may run on
/// several threads; results are aggregated by trial index.
RejectionStats run_trials(const Graph& g, const AlgorithmFactory& factory, const SimConfig& cfg, std::size_t trials,
                          std::size_t threads = 1);

/// Aggregates per-trial transcripts in trial order.
RejectionStats summarize(std::span<const Transcript> transcripts);

/// Binomial standard error sqrt(p(1-p)/trials).
double binomial_sigma(double p, std::size_t trials);

}  // namespace congest
