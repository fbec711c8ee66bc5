#include "congest/oracles.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>

namespace congest {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

// Vertex sequence of the tree path u -> lca -> w closing the cycle through edge uw.
std::vector<VertexId> close_cycle(VertexId u, VertexId w, const std::vector<VertexId>& parent,
                                  const std::vector<std::size_t>& depth) {
  std::vector<VertexId> left{u};
  std::vector<VertexId> right{w};
  VertexId a = u;
  VertexId b = w;
  while (depth[a] > depth[b]) left.push_back(a = parent[a]);
  while (depth[b] > depth[a]) right.push_back(b = parent[b]);
  while (a != b) {
    left.push_back(a = parent[a]);
    right.push_back(b = parent[b]);
  }
  right.pop_back();  // lca already ends `left`
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

PropertyDecision decide_bipartite(const Graph& g) {
  const std::size_t n = g.num_vertices();
  PropertyDecision out;
  std::vector<std::size_t> depth(n, kUnset);
  std::vector<VertexId> parent(n, 0);
  for (VertexId s = 0; s < n; ++s) {
    if (depth[s] != kUnset) continue;
    depth[s] = 0;
    parent[s] = s;
    std::queue<VertexId> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const VertexId u = frontier.front();
      frontier.pop();
      for (VertexId w : g.neighbors(u)) {
        if (depth[w] == kUnset) {
          depth[w] = depth[u] + 1;
          parent[w] = u;
          frontier.push(w);
        } else if (depth[w] % 2 == depth[u] % 2) {
          out.witness = close_cycle(u, w, parent, depth);
          return out;
        }
      }
    }
  }
  out.holds = true;
  out.coloring.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.coloring[v] = depth[v] % 2;
  return out;
}

PropertyDecision decide_triangle_free(const Graph& g) {
  PropertyDecision out;
  for (auto [u, v] : g.edges()) {
    for (VertexId w : g.neighbors(v)) {
      if (w > v && g.has_edge(u, w)) {
        out.witness = {u, v, w};
        return out;
      }
    }
  }
  out.holds = true;
  return out;
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<std::size_t> parent;
};

PropertyDecision decide_cycle_free(const Graph& g) {
  const std::size_t n = g.num_vertices();
  PropertyDecision out;
  DisjointSets sets(n);
  std::vector<Edge> forest;
  for (auto [u, v] : g.edges()) {
    if (sets.unite(u, v)) {
      forest.emplace_back(u, v);
      continue;
    }
    // The forest already joins u and v; the path plus uv is a cycle.
    const Graph f(n, forest);
    std::vector<std::size_t> depth(n, kUnset);
    std::vector<VertexId> parent(n, 0);
    depth[u] = 0;
    parent[u] = u;
    std::queue<VertexId> frontier;
    frontier.push(u);
    while (!frontier.empty()) {
      const VertexId x = frontier.front();
      frontier.pop();
      for (VertexId y : f.neighbors(x)) {
        if (depth[y] != kUnset) continue;
        depth[y] = depth[x] + 1;
        parent[y] = x;
        frontier.push(y);
      }
    }
    for (VertexId x = v;; x = parent[x]) {
      out.witness.push_back(x);
      if (x == u) break;
    }
    return out;
  }
  out.holds = true;
  return out;
}

// Plain smallest-index backtracking; fast enough at <= 25 vertices.
bool color_from(const Graph& g, std::size_t k, std::vector<std::size_t>& colors, std::size_t v) {
  const std::size_t n = g.num_vertices();
  if (v == n) return true;
  // Symmetry breaking: vertex v may use at most one color beyond those seen so far.
  std::size_t used = 0;
  for (std::size_t u = 0; u < v; ++u) used = std::max(used, colors[u] + 1);
  const std::size_t limit = std::min(k, used + 1);
  for (std::size_t c = 0; c < limit; ++c) {
    bool ok = true;
    for (VertexId w : g.neighbors(static_cast<VertexId>(v))) {
      if (w < v && colors[w] == c) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    colors[v] = c;
    if (color_from(g, k, colors, v + 1)) return true;
  }
  colors[v] = kUnset;
  return false;
}

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(g.num_vertices(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= std::uint32_t{1} << v;
    adj[v] |= std::uint32_t{1} << u;
  }
  return adj;
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be positive");
}

}  // namespace

const char* to_string(Property p) {
  switch (p) {
    case Property::kBipartite:
      return "bipartite";
    case Property::kTriangleFree:
      return "triangle_free";
    case Property::kCycleFree:
      return "cycle_free";
    case Property::kKColorable:
      return "k_colorable";
  }
  return "unknown";
}

const char* to_string(Model m) {
  switch (m) {
    case Model::kDense:
      return "dense";
    case Model::kGeneral:
      return "general";
    case Model::kSparse:
      return "sparse";
  }
  return "unknown";
}

const char* to_string(CertMethod m) {
  switch (m) {
    case CertMethod::kExhaustive:
      return "exhaustive";
    case CertMethod::kFormula:
      return "formula";
    case CertMethod::kPackingBound:
      return "packing_bound";
  }
  return "unknown";
}

const char* to_string(FarnessVerdict v) {
  switch (v) {
    case FarnessVerdict::kSatisfies:
      return "satisfies";
    case FarnessVerdict::kEpsilonFar:
      return "epsilon_far";
    case FarnessVerdict::kNeither:
      return "neither";
  }
  return "unknown";
}

Property parse_property(const std::string& s) {
  for (auto p : {Property::kBipartite, Property::kTriangleFree, Property::kCycleFree, Property::kKColorable}) {
    if (s == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown property '" + s + "'");
}

Model parse_model(const std::string& s) {
  for (auto m : {Model::kDense, Model::kGeneral, Model::kSparse}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown model '" + s + "'");
}

std::optional<std::vector<std::size_t>> find_k_coloring(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (k == 0) {
    if (n == 0) return std::vector<std::size_t>{};
    return std::nullopt;
  }
  if (k <= 2) {
    auto d = decide_bipartite(g);
    if (k == 2) return d.holds ? std::optional(d.coloring) : std::nullopt;
    if (g.num_edges() > 0) return std::nullopt;
    return std::vector<std::size_t>(n, 0);
  }
  if (n > kMaxColoringVertices) {
    throw OracleBudgetExceeded("oracle budget exceeded: k-coloring search is capped at " +
                               std::to_string(kMaxColoringVertices) + " vertices (got " + std::to_string(n) + ")");
  }
  std::vector<std::size_t> colors(n, kUnset);
  if (!color_from(g, k, colors, 0)) return std::nullopt;
  return colors;
}

PropertyDecision decide_property(const Graph& g, Property property, std::size_t k) {
  switch (property) {
    case Property::kBipartite:
      return decide_bipartite(g);
    case Property::kTriangleFree:
      return decide_triangle_free(g);
    case Property::kCycleFree:
      return decide_cycle_free(g);
    case Property::kKColorable: {
      PropertyDecision out;
      if (auto colors = find_k_coloring(g, k)) {
        out.holds = true;
        out.coloring = std::move(*colors);
      }
      return out;
    }
  }
  throw std::invalid_argument("unknown property");
}

std::size_t distance_cycle_free(const Graph& g) {
  return g.num_edges() + connected_components(g).size() - g.num_vertices();
}

std::size_t distance_bipartite(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxBipartitionVertices) {
    throw OracleBudgetExceeded("oracle budget exceeded: bipartition enumeration is capped at " +
                               std::to_string(kMaxBipartitionVertices) + " vertices (got " + std::to_string(n) +
                               "); use the odd-cycle packing bound");
  }
  if (n <= 1) return 0;
  const auto adj = adjacency_masks(g);
  // Gray-code walk over sides of vertices 0..n-2; vertex n-1 stays on side 0.
  std::uint32_t side = 0;
  std::size_t internal = g.num_edges();
  std::size_t best = internal;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < count; ++i) {
    const auto x = static_cast<std::size_t>(std::countr_zero(i));
    const std::uint32_t bit = std::uint32_t{1} << x;
    const std::uint32_t same = (side & bit) ? side : ~side;
    const auto same_side = static_cast<std::size_t>(std::popcount(adj[x] & same & ~bit));
    const auto other_side = static_cast<std::size_t>(std::popcount(adj[x])) - same_side;
    internal = internal + other_side - same_side;
    side ^= bit;
    best = std::min(best, internal);
  }
  return best;
}

std::size_t distance_k_colorable(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (k == 1) return g.num_edges();
  if (k == 2) return distance_bipartite(g);
  if (n > kMaxColoringDistanceVertices) {
    throw OracleBudgetExceeded("oracle budget exceeded: k-coloring distance is capped at " +
                               std::to_string(kMaxColoringDistanceVertices) + " vertices (got " +
                               std::to_string(n) + ")");
  }
  if (n <= k) return 0;
  std::vector<std::size_t> colors(n, 0);
  std::size_t best = g.num_edges();
  // Branch and bound: `cost` counts monochromatic edges to earlier vertices.
  auto search = [&](auto&& self, std::size_t v, std::size_t cost, std::size_t used) -> void {
    if (cost >= best) return;
    if (v == n) {
      best = cost;
      return;
    }
    const std::size_t limit = std::min(k, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      std::size_t extra = 0;
      for (VertexId w : g.neighbors(static_cast<VertexId>(v))) {
        if (w < v && colors[w] == c) ++extra;
      }
      colors[v] = c;
      self(self, v + 1, cost + extra, std::max(used, c + 1));
    }
  };
  search(search, 0, 0, 0);
  return best;
}

TrianglePacking distance_triangle_free_lower_bound(const Graph& g) {
  TrianglePacking out;
  const std::size_t n = g.num_vertices();
  // Edge ids follow each vertex's CSR slots; both orientations map to one id.
  std::vector<std::size_t> slot_offset(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) slot_offset[v + 1] = slot_offset[v] + g.degree(v);
  std::vector<char> used(slot_offset[n], 0);
  auto slot = [&](VertexId a, VertexId b) { return slot_offset[a] + *g.neighbor_index(a, b); };
  auto is_used = [&](VertexId a, VertexId b) { return used[slot(a, b)] != 0; };
  auto mark = [&](VertexId a, VertexId b) { used[slot(a, b)] = used[slot(b, a)] = 1; };

  for (auto [u, v] : g.edges()) {
    if (is_used(u, v)) continue;
    for (VertexId w : g.neighbors(v)) {
      if (w <= v || !g.has_edge(u, w)) continue;
      if (is_used(u, w) || is_used(v, w)) continue;
      out.triangles.push_back({u, v, w});
      mark(u, v);
      mark(u, w);
      mark(v, w);
      break;
    }
  }
  out.bound = out.triangles.size();
  if (n <= kMaxExactTriangleVertices) out.exact = exact_distance_triangle_free(g);
  return out;
}

std::size_t exact_distance_triangle_free(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxExactTriangleVertices) {
    throw OracleBudgetExceeded("oracle budget exceeded: exact triangle distance is capped at " +
                               std::to_string(kMaxExactTriangleVertices) + " vertices (got " + std::to_string(n) +
                               ")");
  }
  const auto edges = g.edges();  // at most 66 edges
  auto edge_id = [&](VertexId a, VertexId b) {
    const Edge key{std::min(a, b), std::max(a, b)};
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), key) - edges.begin());
  };
  using Mask = std::bitset<kMaxExactTriangleVertices * (kMaxExactTriangleVertices - 1) / 2>;
  auto bit = [](std::size_t i) { return Mask().set(i); };
  std::vector<Mask> triangles;
  for (auto [u, v] : edges) {
    for (VertexId w : g.neighbors(v)) {
      if (w > v && g.has_edge(u, w)) triangles.push_back(bit(edge_id(u, v)) | bit(edge_id(u, w)) | bit(edge_id(v, w)));
    }
  }
  if (triangles.empty()) return 0;

  // Hitting set by branch and bound. `removed` edges are deleted, `kept`
  // edges are forbidden from deletion in this branch.
  constexpr std::size_t kInfeasible = std::numeric_limits<std::size_t>::max();
  std::size_t best = edges.size();
  auto lower_bound = [&](const Mask& removed, const Mask& kept) -> std::size_t {
    Mask blocked;
    std::size_t count = 0;
    for (const auto& t : triangles) {
      if ((t & removed).any()) continue;
      const Mask free = t & ~kept;
      if (free.none()) return kInfeasible;
      if ((free & blocked).any()) continue;
      blocked |= free;
      ++count;
    }
    return count;
  };
  auto search = [&](auto&& self, const Mask& removed, const Mask& kept, std::size_t cost) -> void {
    const std::size_t lb = lower_bound(removed, kept);
    if (lb == kInfeasible || cost + lb >= best) return;
    auto open = std::find_if(triangles.begin(), triangles.end(), [&](const Mask& t) { return (t & removed).none(); });
    if (open == triangles.end()) {
      best = cost;
      return;
    }
    Mask extra_kept;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!open->test(e)) continue;
      if (!kept.test(e)) self(self, removed | bit(e), kept | extra_kept, cost + 1);
      extra_kept.set(e);
    }
  };
  search(search, Mask(), Mask(), 0);
  return best;
}

std::vector<VertexId> shortest_odd_cycle(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<VertexId> best;
  std::vector<std::size_t> depth(n);
  std::vector<VertexId> parent(n);
  for (VertexId s = 0; s < n; ++s) {
    std::fill(depth.begin(), depth.end(), kUnset);
    depth[s] = 0;
    parent[s] = s;
    std::queue<VertexId> frontier;
    frontier.push(s);
    bool done = false;
    while (!frontier.empty() && !done) {
      const VertexId u = frontier.front();
      frontier.pop();
      // Any odd closed walk found from here has length >= 2 depth(u) + 1.
      if (!best.empty() && 2 * depth[u] + 1 >= best.size()) break;
      for (VertexId w : g.neighbors(u)) {
        if (depth[w] == kUnset) {
          depth[w] = depth[u] + 1;
          parent[w] = u;
          frontier.push(w);
        } else if (depth[w] == depth[u]) {
          auto cycle = close_cycle(u, w, parent, depth);
          if (best.empty() || cycle.size() < best.size()) best = std::move(cycle);
          done = true;
          break;
        }
      }
    }
    if (best.size() == 3) break;
  }
  return best;
}

std::vector<std::vector<VertexId>> odd_cycle_packing(const Graph& g) {
  std::vector<std::vector<VertexId>> packing;
  const std::size_t n = g.num_vertices();
  auto remaining = g.edges();
  while (true) {
    const Graph current(n, remaining);
    auto cycle = shortest_odd_cycle(current);
    if (cycle.empty()) break;
    std::vector<Edge> cycle_edges;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const VertexId a = cycle[i];
      const VertexId b = cycle[(i + 1) % cycle.size()];
      cycle_edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(cycle_edges.begin(), cycle_edges.end());
    std::erase_if(remaining, [&](const Edge& e) { return std::binary_search(cycle_edges.begin(), cycle_edges.end(), e); });
    packing.push_back(std::move(cycle));
  }
  return packing;
}

double model_normalizer(Model model, std::size_t n, std::size_t m, std::optional<std::size_t> d) {
  switch (model) {
    case Model::kDense:
      return static_cast<double>(n) * static_cast<double>(n);
    case Model::kGeneral:
      return static_cast<double>(std::max(n, m));
    case Model::kSparse:
      if (!d) throw std::invalid_argument("sparse model requires a degree bound d");
      return static_cast<double>(*d) * static_cast<double>(n);
  }
  throw std::invalid_argument("unknown model");
}

FarnessCertificate certify(const Graph& g, Property property, double epsilon, Model model,
                           std::optional<std::size_t> d, std::size_t k) {
  check_epsilon(epsilon);
  FarnessCertificate cert;
  cert.property = property;
  cert.k = property == Property::kKColorable ? k : 0;
  cert.model = model;
  cert.n = g.num_vertices();
  cert.m = g.num_edges();
  cert.degree_bound = d;
  cert.epsilon = epsilon;
  cert.normalizer = model_normalizer(model, cert.n, cert.m, d);
  if (model == Model::kSparse && !g.satisfies(DegreeBound{*d})) {
    throw std::invalid_argument("graph violates the sparse-model degree bound");
  }

  switch (property) {
    case Property::kCycleFree:
      cert.distance = distance_cycle_free(g);
      cert.method = CertMethod::kFormula;
      break;
    case Property::kBipartite:
      if (cert.n <= kMaxBipartitionVertices) {
        cert.distance = distance_bipartite(g);
        cert.method = CertMethod::kExhaustive;
      } else {
        cert.distance = odd_cycle_packing(g).size();
        cert.method = CertMethod::kPackingBound;
        if (cert.distance == 0) cert.method = CertMethod::kExhaustive;  // 2-coloring found: exact zero
      }
      break;
    case Property::kTriangleFree:
      if (cert.n <= kMaxExactTriangleVertices) {
        cert.distance = exact_distance_triangle_free(g);
        cert.method = CertMethod::kExhaustive;
      } else {
        cert.distance = distance_triangle_free_lower_bound(g).bound;
        cert.method = cert.distance == 0 ? CertMethod::kExhaustive : CertMethod::kPackingBound;
      }
      break;
    case Property::kKColorable:
      cert.distance = distance_k_colorable(g, k);
      cert.method = CertMethod::kExhaustive;
      break;
  }

  cert.epsilon_star = cert.normalizer > 0.0 ? static_cast<double>(cert.distance) / cert.normalizer : 0.0;
  const double threshold = epsilon * cert.normalizer;
  if (cert.distance == 0 && cert.exact()) {
    cert.verdict = FarnessVerdict::kSatisfies;
  } else if (static_cast<double>(cert.distance) >= threshold) {
    cert.verdict = FarnessVerdict::kEpsilonFar;
  } else {
    cert.verdict = FarnessVerdict::kNeither;
  }
  return cert;
}

}  // namespace congest
