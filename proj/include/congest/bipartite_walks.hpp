#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "congest/graph.hpp"
#include "congest/rng.hpp"
#include "congest/simulator.hpp"

namespace congest {

class DegreeBoundViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A walk in flight: number of actual vertex changes so far and its origin.
struct WalkToken {
  std::uint32_t moves = 0;
  VertexId origin = 0;

  bool odd() const { return (moves & 1u) != 0; }
  friend bool operator==(const WalkToken&, const WalkToken&) = default;
};

/// One lazy step from v: each neighbor with probability 1/(2d), stay otherwise.
/// Uses a single uniform draw from [0, 2d).
VertexId lazy_step(VertexId v, const Graph& g, std::size_t d, RngStream& rng);

/// True iff some origin appears with both an even and an odd move count.
bool detect_violation(std::span<const WalkToken> history);

/// Tokens seen at a vertex, kept as (origin, parity) pairs.
class WalkHistory {
 public:
  void record(const WalkToken& token);
  bool violation() const { return violation_; }
  std::size_t size() const { return keys_.size(); }
  void clear();

 private:
  std::unordered_set<std::uint64_t> keys_;
  bool violation_ = false;
};

struct WalkState {
  std::vector<std::vector<WalkToken>> resident;
  std::vector<WalkHistory> history;

  /// Two tokens (0, v) resident at and recorded by every vertex v.
  static WalkState initial(std::size_t n);
  std::size_t total_tokens() const;
};

/// One synchronous move of every walk. A vertex holding at most `congestion_cap`
/// tokens steps each of them in order; larger vertices freeze for this move.
/// Arrivals are appended ordered by (sender id, sender's token order) and
/// recorded in the receiver's history. rngs[v] is vertex v's stream.
WalkState move_walks_once(const WalkState& state, double congestion_cap, const Graph& g, std::size_t d,
                          std::span<RngStream> rngs);

enum class WalkMode { kPaperFaithful, kScaled };

// Logarithm bases: the congestion cap uses natural logs, the walk length log2.
inline constexpr double kWalkLengthLogBase = 2.0;

struct BipartiteParams {
  std::size_t d = 4;
  double epsilon = 0.1;
  std::size_t walk_length = 64;  // L
  std::size_t iterations = 200;  // eta
  std::size_t analysis_k = 0;    // K, informational
  WalkMode mode = WalkMode::kScaled;
  double c_k = 1.0;
  double c_l = 1.0;

  static BipartiteParams scaled(std::size_t d, double epsilon, std::size_t walk_length, std::size_t iterations);
  /// L = ceil(c_l eps^-8 (log2 n)^6), K = ceil(c_k eps^-4 sqrt(n) sqrt(ln(n/eps))),
  /// eta = ceil(320 K^2 / (n eps)).
  static BipartiteParams paper_faithful(std::size_t n, std::size_t d, double epsilon, double c_k = 1.0,
                                        double c_l = 1.0);

  void validate() const;
  /// 3 (2 ln n + ln L).
  double gamma(std::size_t n) const;
  /// gamma + 2.
  double congestion_cap(std::size_t n) const { return gamma(n) + 2.0; }
  /// Rounds reserved per move: floor of the cap.
  std::size_t rounds_per_move(std::size_t n) const;
  std::size_t round_budget(std::size_t n) const { return iterations * walk_length * rounds_per_move(n); }
};

class BipartiteVertex final : public VertexAlgorithm {
 public:
  BipartiteVertex(VertexInit init, const Graph& g, const BipartiteParams& params);

  void send(std::size_t round, Outbox& out) override;
  void receive(std::size_t round, std::span<const Incoming> inbox) override;
  Verdict verdict() const override { return verdict_; }
  bool terminated() const override { return done_; }

  const std::vector<WalkToken>& resident() const { return resident_; }
  const WalkHistory& history() const { return history_; }
  /// Largest resident count seen at the start of a move.
  std::size_t max_resident() const { return max_resident_; }
  std::size_t frozen_moves() const { return frozen_moves_; }
  /// Longest queue of tokens for a single edge within one move.
  std::size_t max_edge_batch() const { return max_edge_batch_; }

 private:
  void plan_move();

  VertexId id_;
  const Graph& graph_;
  std::span<const VertexId> neighbors_;
  RngStream rng_;
  std::size_t d_;
  std::size_t walk_length_;
  std::size_t iterations_;
  double cap_;
  std::size_t rounds_per_move_;
  std::size_t moves_bits_;
  std::size_t id_bits_;

  std::vector<WalkToken> resident_;
  WalkHistory history_;
  std::vector<std::vector<WalkToken>> outgoing_;  // per neighbor index, front at back()
  std::vector<std::pair<VertexId, WalkToken>> arrivals_;
  std::size_t max_resident_ = 0;
  std::size_t frozen_moves_ = 0;
  std::size_t max_edge_batch_ = 0;
  Verdict verdict_ = Verdict::kUndecided;
  bool done_ = false;
};

AlgorithmFactory bipartite_factory(const Graph& g, const BipartiteParams& params);

/// Runs the tester; throws DegreeBoundViolation if some degree exceeds d.
Transcript run_bipartite_test(const Graph& g, const BipartiteParams& params, const SimConfig& cfg);

}  // namespace congest
