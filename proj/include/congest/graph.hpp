#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace congest {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Thrown for edge lists that violate the simple-graph contract.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure carrying the 1-based line number of the offending line.
class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Optional maximum degree, present in bounded-degree contexts.
struct DegreeBound {
  std::size_t d = 0;
};

/// Immutable undirected simple graph on vertices 0..n-1.
///
/// Neighbor lists are sorted ascending; adjacency is stored in CSR form so a
/// vertex's neighborhood is a contiguous span.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Rejects self-loops, duplicate edges
  /// (in either orientation) and out-of-range endpoints.
  Graph(std::size_t n, std::span<const Edge> edges);

  static Graph empty(std::size_t n) { return Graph(n, {}); }

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;

  bool has_edge(VertexId u, VertexId v) const;

  /// Position of `v` in `u`'s neighbor list, or nullopt.
  std::optional<std::size_t> neighbor_index(VertexId u, VertexId v) const;

  /// Edges as (min, max) pairs in canonical (lexicographic) order.
  std::vector<Edge> edges() const;

  bool satisfies(const DegreeBound& bound) const { return max_degree() <= bound.d; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> neighbors_;
};

/// Reads the "n m" header followed by m "u v" lines.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);

/// Canonical form: header, then edges sorted by (min endpoint, max endpoint).
std::string serialize_edge_list(const Graph& g);

Graph read_edge_list_file(const std::string& path);
void write_edge_list_file(const Graph& g, const std::string& path);

/// Connected components, each sorted ascending, ordered by smallest member.
std::vector<std::vector<VertexId>> connected_components(const Graph& g);

/// Component label per vertex (labels follow the order of connected_components).
std::vector<std::size_t> component_labels(const Graph& g);

/// Subgraph induced by `vertices`, relabelled 0..k-1 in the given order.
Graph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

/// Graph on the same vertex set keeping only edges for which `keep[i]` holds,
/// where i indexes g.edges().
Graph edge_subgraph(const Graph& g, const std::vector<bool>& keep);

Graph disjoint_union(const Graph& a, const Graph& b);
Graph complement(const Graph& g);

/// Breadth-first distances from `source`; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source);

// Small named families used throughout tests and generators.
Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_complete(std::size_t n);
Graph make_star(std::size_t leaves);
Graph make_complete_bipartite(std::size_t a, std::size_t b);
Graph make_grid(std::size_t rows, std::size_t cols);

}  // namespace congest
