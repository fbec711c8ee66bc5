#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "congest/graph.hpp"
#include "congest/simulator.hpp"

namespace congest {

struct CycleParams {
  double epsilon = 0.25;
  double log_base = 2.0;
  bool force_no_deletion = false;

  void validate() const;
  /// max(2, ceil(20 log n / epsilon)).
  std::size_t phase_one_rounds(std::size_t n) const;
  /// ceil(10 log n / epsilon).
  std::size_t phase_two_rounds(std::size_t n) const;
  double deletion_probability() const { return force_no_deletion ? 0.0 : epsilon / 2.0; }
  /// One sparsification round plus both phases.
  std::size_t total_rounds(std::size_t n) const { return 1 + phase_one_rounds(n) + phase_two_rounds(n); }
};

/// Root identifier: a plain vertex id in the first phase (rank 0), the pair
/// (rank, vertex) in the second.
struct RootId {
  std::uint32_t rank = 0;
  VertexId vertex = 0;

  friend auto operator<=>(const RootId&, const RootId&) = default;
};

struct BfsTuple {
  RootId root;
  std::uint32_t depth = 0;
  VertexId parent = 0;

  friend auto operator<=>(const BfsTuple&, const BfsTuple&) = default;
};

enum class Priority : std::uint8_t { kLowestRoot, kHighestRoot };

/// One vertex's share of a prioritized multi-source BFS.
///
/// Tuples are kept deduplicated. Depths saturate at `depth_cap`; a tuple that
/// long has already revisited a vertex, so nothing observable is lost.
class BfsState {
 public:
  struct Forward {
    RootId root;
    std::uint32_t depth;
    VertexId skip;  // parent of the selected tuple; never a neighbor for own BFS
  };

  BfsState(VertexId self, RootId own, Priority priority, std::uint32_t depth_cap);

  const std::optional<Forward>& pending() const { return pending_; }
  void absorb(const BfsTuple& tuple);
  /// Selects the winning tuple and schedules its forward if anything arrived.
  void finish_round();

  bool duplicate_root() const { return duplicate_; }
  std::uint32_t max_depth() const { return max_depth_; }
  const std::set<BfsTuple>& tuples() const { return tuples_; }
  const BfsTuple& selected() const { return best_; }

 private:
  bool beats(const BfsTuple& a, const BfsTuple& b) const;

  VertexId self_;
  Priority priority_;
  std::uint32_t depth_cap_;
  std::set<BfsTuple> tuples_;
  BfsTuple best_;
  std::optional<Forward> pending_;
  bool received_ = false;
  bool duplicate_ = false;
  std::uint32_t max_depth_ = 0;
};

/// Wire widths for one BFS phase. The parent is the sender and is not sent.
struct BfsWire {
  std::size_t rank_bits = 0;
  std::size_t id_bits = 0;
  std::size_t depth_bits = 0;

  static BfsWire make(std::size_t n, std::uint32_t max_rank, std::uint32_t depth_cap);
  Message encode(RootId root, std::uint32_t depth) const;
  std::pair<RootId, std::uint32_t> decode(const Message& m) const;
};

/// Standalone prioritized BFS for `length` forwarding rounds.
class BfsVertex final : public VertexAlgorithm {
 public:
  BfsVertex(VertexInit init, RootId own, Priority priority, std::size_t length, BfsWire wire);

  void send(std::size_t round, Outbox& out) override;
  void receive(std::size_t round, std::span<const Incoming> inbox) override;
  Verdict verdict() const override { return done_ ? Verdict::kAccept : Verdict::kUndecided; }
  bool terminated() const override { return done_; }

  const BfsState& state() const { return state_; }

 private:
  std::span<const VertexId> neighbors_;
  std::size_t length_;
  BfsWire wire_;
  BfsState state_;
  bool done_ = false;
};

/// Per-vertex tuple lists after `length` rounds. ids must be distinct.
std::vector<std::set<BfsTuple>> prioritized_bfs(const Graph& g, std::size_t length, Priority priority,
                                                const std::vector<RootId>& ids, const SimConfig& cfg = {});

struct Sparsification {
  Graph graph;
  std::vector<bool> deleted;  // indexed like g.edges()
};

/// The edge {u, v} with u < v is deleted when v's stream (seed, v) says so;
/// v walks its smaller neighbors in increasing order, one Bernoulli draw each.
/// Matches the decisions made in round 0 of the distributed test.
Sparsification sparsify(const Graph& g, double p, std::uint64_t seed);

class CycleVertex final : public VertexAlgorithm {
 public:
  CycleVertex(VertexInit init, const CycleParams& params);

  void send(std::size_t round, Outbox& out) override;
  void receive(std::size_t round, std::span<const Incoming> inbox) override;
  Verdict verdict() const override { return verdict_; }
  bool terminated() const override { return done_; }

  /// Tuple lists of the finished phases (phase two is empty until it runs).
  const std::set<BfsTuple>& phase_one_tuples() const { return phase_one_->tuples(); }
  const std::set<BfsTuple>& phase_two_tuples() const;
  std::uint32_t rank() const { return rank_; }
  /// Deletion flag per neighbor index.
  const std::vector<bool>& deleted() const { return deleted_; }
  /// 1 or 2 if the vertex rejected, in that phase.
  std::optional<int> rejected_in_phase() const { return rejected_phase_; }

 private:
  std::size_t index_of(VertexId u) const;
  void forward(const BfsState& state, const BfsWire& wire, bool sparse_only, Outbox& out) const;

  VertexId id_;
  std::span<const VertexId> neighbors_;
  std::size_t n_;
  RngStream rng_;
  double deletion_probability_;
  std::size_t phase_one_rounds_;
  std::size_t phase_two_rounds_;
  std::vector<bool> deleted_;
  BfsWire wire_one_;
  BfsWire wire_two_;
  std::optional<BfsState> phase_one_;
  std::optional<BfsState> phase_two_;
  std::uint32_t rank_ = 0;
  std::optional<int> rejected_phase_;
  Verdict verdict_ = Verdict::kUndecided;
  bool done_ = false;
};

AlgorithmFactory cycle_factory(const CycleParams& params);

Transcript run_cycle_test(const Graph& g, const CycleParams& params, const SimConfig& cfg);

}  // namespace congest
