#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "congest/graph.hpp"
#include "congest/oracles.hpp"

namespace congest {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Each unordered pair is an edge independently with probability p.
Graph gnp(std::size_t n, double p, std::uint64_t seed);

/// Uniformly random graph with exactly m edges.
Graph gnm(std::size_t n, std::size_t m, std::uint64_t seed);

/// Pairing model on d stubs per vertex; loops and repeated pairs are dropped,
/// so every degree is at most d.
Graph random_bounded_degree(std::size_t n, std::size_t d, std::uint64_t seed);

/// Pairing model between the halves [0, n/2) and [n/2, n): bipartite, degree <= d.
Graph random_bipartite_bounded_degree(std::size_t n, std::size_t d, std::uint64_t seed);

/// Random bipartite graph on random sides with edge probability p across.
Graph random_bipartite(std::size_t n, double p, std::uint64_t seed);

/// Random recursive tree: vertex v > 0 attaches to a uniform earlier vertex.
Graph random_tree(std::size_t n, std::uint64_t seed);

/// Random forest: a random tree with each edge kept with probability keep.
Graph random_forest(std::size_t n, double keep, std::uint64_t seed);

/// Random recursive tree whose vertex degrees never exceed d (d >= 2).
Graph random_bounded_degree_tree(std::size_t n, std::size_t d, std::uint64_t seed);

struct LowerBoundParams {
  std::size_t n = 0;
  double c = 1000.0;
  std::size_t degree_cap = 2000;
  std::size_t cycle_budget = 5'000'000;  // DFS steps allowed for cycle enumeration

  void validate() const;
  double edge_probability() const;
  /// log n / log c.
  double girth_threshold() const;
  /// Longest cycle length that gets broken.
  std::size_t max_broken_length() const;
};

struct ConstructionLog {
  std::size_t initial_edges = 0;
  std::size_t over_cap_vertices = 0;
  std::size_t edges_removed_degree = 0;
  std::size_t short_cycles_found = 0;
  std::size_t edges_removed_cycles = 0;
  std::size_t final_edges = 0;
  std::size_t max_broken_length = 0;
};

struct LowerBoundInstance {
  Graph graph;
  ConstructionLog log;
};

/// Random graph with alterations: sample gnp(n, c/n), clear every vertex of
/// degree above the cap, then break every cycle of length <= log n / log c by
/// removing its lexicographically smallest edge (cycles in sorted order).
LowerBoundInstance lower_bound_instance(const LowerBoundParams& params, std::uint64_t seed);

/// All simple cycles with 3 <= length <= max_length, each as a vertex
/// sequence starting at its smallest vertex with the smaller neighbor second;
/// sorted lexicographically. Throws GenerationError past `budget` DFS steps.
std::vector<std::vector<VertexId>> enumerate_short_cycles(const Graph& g, std::size_t max_length,
                                                          std::size_t budget = 5'000'000);

/// Length of a shortest cycle, or nullopt for forests.
std::optional<std::size_t> girth(const Graph& g);

struct FarInstance {
  Graph graph;
  FarnessCertificate certificate;
  std::uint64_t seed = 0;  // seed of the released sample
  std::size_t attempts = 0;
};

/// Certified epsilon-far instance for bipartite, triangle_free or cycle_free.
/// Recipes: bounded-degree pairing graphs (bipartite), complete or dense
/// random graphs (triangle_free), gnm with m = 2n (cycle_free). Sample i uses
/// seed + i; throws after `max_attempts` uncertified samples.
FarInstance far_instance(Property property, std::size_t n, double epsilon, Model model, std::uint64_t seed,
                         std::optional<std::size_t> d = std::nullopt, std::size_t max_attempts = 64);

}  // namespace congest
