#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "congest/graph.hpp"
#include "congest/simulator.hpp"

namespace congest {

/// Pure predicate: true iff the graph cannot be an induced subgraph of any
/// graph with the property.
using WitnessChecker = std::function<bool(const Graph&)>;

/// Raised when a checker fails the non-disjointedness or monotonicity probe.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// True iff some component of `g` is not k-colorable. Components are checked
/// exactly; k >= 3 is capped at 25 vertices.
bool witness_k_colorability(const Graph& g, std::size_t k);

/// True iff `g` has an induced odd cycle of length >= 5 or the complement of
/// one. Capped at 14 vertices.
bool witness_perfect_graph(const Graph& g);

inline constexpr std::size_t kMaxPerfectCheckVertices = 14;

struct NamedChecker {
  std::string name;
  WitnessChecker check;
};

/// Registry lookup: "k-colorability:<k>" or "perfect".
NamedChecker make_checker(const std::string& name);

/// Probes `checker` on small fixtures: the disjoint union of two non-witnesses
/// must not be a witness, and witnesses must stay witnesses in induced
/// supergraphs. Returns an empty string on success, otherwise the failure.
std::string checker_self_test(const WitnessChecker& checker);

struct EmulationParams {
  std::size_t q = 1;
  std::optional<std::size_t> edge_cap_override;  // test hook

  static constexpr std::size_t kOuterIterations = 2;
  // Every configuration finishes within kRoundConstant * q^2 rounds.
  static constexpr std::size_t kRoundConstant = 242;

  void validate() const;
  double pick_probability(std::size_t n) const;
  std::size_t inner_iterations() const { return 10 * q; }
  std::size_t edge_cap() const { return edge_cap_override.value_or(100 * q * q); }
  /// Flooding rounds per outer iteration: enough to pipeline every item of a
  /// component with at most 10q picked vertices.
  std::size_t flood_rounds() const { return 100 * q * q + 2 * inner_iterations(); }
  std::size_t rounds_per_outer() const { return 1 + flood_rounds(); }
  std::size_t total_rounds() const { return kOuterIterations * rounds_per_outer(); }
  std::size_t round_bound() const { return kRoundConstant * q * q; }
};

/// Per-vertex automaton of the emulation; exposed for post-run inspection.
class EmulationVertex final : public VertexAlgorithm {
 public:
  EmulationVertex(VertexInit init, WitnessChecker checker, EmulationParams params);

  void send(std::size_t round, Outbox& out) override;
  void receive(std::size_t round, std::span<const Incoming> inbox) override;
  Verdict verdict() const override { return verdict_; }
  bool terminated() const override { return done_; }

  bool picked_in(std::size_t outer) const { return picked_in_[outer]; }
  bool capped_in(std::size_t outer) const { return capped_in_[outer]; }
  /// Messages sent while capped; zero by construction.
  std::size_t sends_while_capped() const { return sends_while_capped_; }
  /// Edges (original ids) of the subgraph that triggered the reject.
  const std::vector<Edge>& evidence() const { return evidence_; }
  std::size_t known_edge_count() const { return known_edges_.size(); }

 private:
  void start_outer(std::size_t outer);
  void learn(std::uint64_t item, std::optional<VertexId> from);
  void check_witness();

  VertexId id_;
  std::span<const VertexId> neighbors_;
  std::size_t id_bits_;
  RngStream rng_;
  WitnessChecker checker_;
  EmulationParams params_;
  double pick_probability_;

  Verdict verdict_ = Verdict::kUndecided;
  bool done_ = false;
  std::array<bool, EmulationParams::kOuterIterations> picked_in_{};
  std::array<bool, EmulationParams::kOuterIterations> capped_in_{};
  std::size_t sends_while_capped_ = 0;

  // State of the current outer iteration.
  std::size_t outer_ = 0;
  bool picked_ = false;
  bool capped_ = false;
  std::vector<VertexId> picked_neighbors_;
  std::set<std::uint64_t> known_items_;
  std::vector<Edge> known_edges_;
  std::vector<std::set<std::uint64_t>> pending_;  // per picked neighbor
  std::vector<Edge> evidence_;
};

AlgorithmFactory emulation_factory(WitnessChecker checker, const EmulationParams& params);

struct EmulationRun {
  Transcript transcript;
  std::size_t round_constant = EmulationParams::kRoundConstant;
  std::size_t round_bound = 0;
  // Picked-vertex count per outer iteration that actually ran.
  std::array<std::optional<std::size_t>, EmulationParams::kOuterIterations> picked_counts{};
  std::array<std::size_t, EmulationParams::kOuterIterations> capped_vertices{};
  std::size_t sends_while_capped = 0;
  // Rejecting vertices with the edge sets they rejected on.
  std::vector<std::pair<VertexId, std::vector<Edge>>> evidence;
};

/// Runs the emulation after probing the checker contract; throws
/// ContractViolation if the probe fails.
EmulationRun emulate(const Graph& g, const WitnessChecker& checker, const EmulationParams& params,
                     const SimConfig& cfg);

}  // namespace congest
