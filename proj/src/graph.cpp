#include "congest/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

namespace congest {

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string edge_text(VertexId u, VertexId v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

// Validates one edge against n; returns an error message or empty string.
std::string check_edge(std::size_t n, VertexId u, VertexId v) {
  if (u >= n || v >= n) return "vertex id out of range in edge " + edge_text(u, v);
  if (u == v) return "self-loop at vertex " + std::to_string(u);
  return {};
}

}  // namespace

Graph::Graph(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (auto err = check_edge(n, u, v); !err.empty()) throw GraphError(err);
    ++degree[u];
    ++degree[v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  neighbors_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    neighbors_[fill[u]++] = v;
    neighbors_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw GraphError("duplicate edge " + edge_text(static_cast<VertexId>(v), *dup));
    }
  }
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_vertices(); ++v) best = std::max(best, degree(static_cast<VertexId>(v)));
  return best;
}

bool Graph::has_edge(VertexId u, VertexId v) const { return neighbor_index(u, v).has_value(); }

std::optional<std::size_t> Graph::neighbor_index(VertexId u, VertexId v) const {
  if (u >= num_vertices()) return std::nullopt;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - nb.begin());
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (VertexId u = 0; u < num_vertices(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (out.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_content_line(line)) throw ParseError(1, "missing \"n m\" header");
  std::size_t n = 0;
  std::size_t m = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra)) throw ParseError(line_no, "malformed header, expected \"n m\"");
  }
  if (n > std::numeric_limits<VertexId>::max()) throw ParseError(line_no, "vertex count too large");

  std::vector<Edge> edges;
  edges.reserve(m);
  std::vector<std::size_t> edge_line;
  edge_line.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!next_content_line(line)) {
      throw ParseError(line_no + 1, "edge count mismatch: header declares " + std::to_string(m) + " edges, found " +
                                        std::to_string(i));
    }
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) throw ParseError(line_no, "malformed edge line, expected \"u v\"");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw ParseError(line_no, "vertex id out of range in edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    edge_line.push_back(line_no);
  }
  if (next_content_line(line)) {
    throw ParseError(line_no, "edge count mismatch: more than " + std::to_string(m) + " edge lines");
  }

  // Duplicate detection with the line number of the second occurrence.
  std::vector<std::pair<Edge, std::size_t>> keyed;
  keyed.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    keyed.push_back({{std::min(u, v), std::max(u, v)}, i});
  }
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].first == keyed[i - 1].first) {
      throw ParseError(edge_line[keyed[i].second], "duplicate edge " + edge_text(keyed[i].first.first, keyed[i].first.second));
    }
  }
  return Graph(n, edges);
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file: " + path);
  return parse_edge_list(in);
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write graph file: " + path);
  out << serialize_edge_list(g);
}

std::vector<std::size_t> component_labels(const Graph& g) {
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(g.num_vertices(), kUnset);
  std::vector<VertexId> stack;
  std::size_t next = 0;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(u)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<std::vector<VertexId>> connected_components(const Graph& g) {
  auto label = component_labels(g);
  std::size_t count = 0;
  for (auto l : label) count = std::max(count, l + 1);
  std::vector<std::vector<VertexId>> parts(count);
  for (VertexId v = 0; v < g.num_vertices(); ++v) parts[label[v]].push_back(v);
  return parts;
}

Graph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) {
  std::vector<std::size_t> index(g.num_vertices(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = i;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (VertexId w : g.neighbors(vertices[i])) {
      auto j = index[w];
      if (j != std::numeric_limits<std::size_t>::max() && i < j) {
        edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
      }
    }
  }
  return Graph(vertices.size(), edges);
}

Graph edge_subgraph(const Graph& g, const std::vector<bool>& keep) {
  auto all = g.edges();
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep.at(i)) kept.push_back(all[i]);
  }
  return Graph(g.num_vertices(), kept);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  auto edges = a.edges();
  auto shift = static_cast<VertexId>(a.num_vertices());
  for (auto [u, v] : b.edges()) edges.emplace_back(u + shift, v + shift);
  return Graph(a.num_vertices() + b.num_vertices(), edges);
}

Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    for (VertexId v = u + 1; v < g.num_vertices(); ++v) {
      if (!g.has_edge(u, v)) edges.emplace_back(u, v);
    }
  }
  return Graph(g.num_vertices(), edges);
}

std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source) {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.num_vertices(), kInf);
  std::queue<VertexId> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop();
    for (VertexId w : g.neighbors(u)) {
      if (dist[w] == kInf) {
        dist[w] = dist[u] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

Graph make_path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw GraphError("a simple cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

Graph make_complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph make_star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, edges);
}

Graph make_complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < a; ++u) {
    for (std::size_t v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  }
  return Graph(a + b, edges);
}

Graph make_grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph(rows * cols, edges);
}

}  // namespace congest
