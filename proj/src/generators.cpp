#include "congest/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "congest/rng.hpp"

namespace congest {

namespace {

// Stream ids keep generator draws apart from per-vertex simulation streams.
constexpr std::uint64_t kGnpStream = 0x6e70'0000'0000'0001ULL;
constexpr std::uint64_t kGnmStream = 0x6e70'0000'0000'0002ULL;
constexpr std::uint64_t kPairingStream = 0x6e70'0000'0000'0003ULL;
constexpr std::uint64_t kTreeStream = 0x6e70'0000'0000'0004ULL;
constexpr std::uint64_t kBipartiteStream = 0x6e70'0000'0000'0005ULL;

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
}

template <class T>
void shuffle(std::vector<T>& items, RngStream& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.uniform(i)]);
  }
}

Graph from_pairs(std::size_t n, std::vector<Edge> pairs) {
  for (auto& [a, b] : pairs) {
    if (a > b) std::swap(a, b);
  }
  std::erase_if(pairs, [](const Edge& e) { return e.first == e.second; });
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return Graph(n, pairs);
}

}  // namespace

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p);
  if (p == 0.0 || n < 2) return Graph::empty(n);
  if (p == 1.0) return make_complete(n);
  RngStream rng(seed, kGnpStream);
  std::vector<Edge> edges;
  // Geometric skipping over the pairs (v, w), w < v, in row-major order.
  const double log_q = std::log1p(-p);
  std::size_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = rng.uniform_real();
    const double skip = std::min(std::floor(std::log1p(-r) / log_q), 1e15);
    w += 1 + static_cast<std::int64_t>(skip);
    while (w >= static_cast<std::int64_t>(v) && v < n) {
      w -= static_cast<std::int64_t>(v);
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<VertexId>(w), static_cast<VertexId>(v));
  }
  std::sort(edges.begin(), edges.end());
  return Graph(n, edges);
}

Graph gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  if (m > pairs) throw std::invalid_argument("gnm: more edges requested than vertex pairs");
  RngStream rng(seed, kGnmStream);
  std::set<Edge> chosen;
  while (chosen.size() < m) {
    auto a = static_cast<VertexId>(rng.uniform(n));
    auto b = static_cast<VertexId>(rng.uniform(n));
    if (a == b) continue;
    chosen.emplace(std::min(a, b), std::max(a, b));
  }
  const std::vector<Edge> edges(chosen.begin(), chosen.end());
  return Graph(n, edges);
}

Graph random_bounded_degree(std::size_t n, std::size_t d, std::uint64_t seed) {
  RngStream rng(seed, kPairingStream);
  std::vector<VertexId> stubs;
  stubs.reserve(n * d);
  for (VertexId v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
  shuffle(stubs, rng);
  std::vector<Edge> pairs;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) pairs.emplace_back(stubs[i], stubs[i + 1]);
  return from_pairs(n, std::move(pairs));
}

Graph random_bipartite_bounded_degree(std::size_t n, std::size_t d, std::uint64_t seed) {
  RngStream rng(seed, kPairingStream + 1);
  const std::size_t half = n / 2;
  std::vector<VertexId> left;
  std::vector<VertexId> right;
  for (VertexId v = 0; v < half; ++v) left.insert(left.end(), d, v);
  for (auto v = static_cast<VertexId>(half); v < n; ++v) right.insert(right.end(), d, v);
  shuffle(right, rng);
  std::vector<Edge> pairs;
  for (std::size_t i = 0; i < std::min(left.size(), right.size()); ++i) pairs.emplace_back(left[i], right[i]);
  return from_pairs(n, std::move(pairs));
}

Graph random_bipartite(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p);
  RngStream rng(seed, kBipartiteStream);
  std::vector<bool> side(n);
  for (std::size_t v = 0; v < n; ++v) side[v] = rng.bernoulli(0.5);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (side[u] != side[v] && rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, kTreeStream);
  std::vector<Edge> edges;
  for (VertexId v = 1; v < n; ++v) edges.emplace_back(static_cast<VertexId>(rng.uniform(v)), v);
  return Graph(n, edges);
}

Graph random_forest(std::size_t n, double keep, std::uint64_t seed) {
  check_probability(keep);
  RngStream rng(seed, kTreeStream + 1);
  std::vector<Edge> edges;
  for (VertexId v = 1; v < n; ++v) {
    const auto parent = static_cast<VertexId>(rng.uniform(v));
    if (rng.bernoulli(keep)) edges.emplace_back(parent, v);
  }
  return Graph(n, edges);
}

Graph random_bounded_degree_tree(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d < 2 && n > 2) throw std::invalid_argument("a tree on more than 2 vertices needs d >= 2");
  RngStream rng(seed, kTreeStream + 2);
  std::vector<Edge> edges;
  std::vector<std::size_t> degree(n, 0);
  std::vector<VertexId> open;  // vertices with spare degree
  if (n > 0) open.push_back(0);
  for (VertexId v = 1; v < n; ++v) {
    const std::size_t pick = rng.uniform(open.size());
    const VertexId parent = open[pick];
    edges.emplace_back(parent, v);
    if (++degree[parent] == d) {
      open[pick] = open.back();
      open.pop_back();
    }
    if (++degree[v] < d) open.push_back(v);
  }
  return Graph(n, edges);
}

void LowerBoundParams::validate() const {
  if (!(c >= 2.0)) throw std::invalid_argument("lower-bound construction needs c >= 2");
  if (static_cast<double>(degree_cap) < c) throw std::invalid_argument("degree cap must be at least c");
}

double LowerBoundParams::edge_probability() const {
  if (n == 0) return 0.0;
  return std::min(1.0, c / static_cast<double>(n));
}

double LowerBoundParams::girth_threshold() const {
  if (n <= 1) return 0.0;
  return std::log(static_cast<double>(n)) / std::log(c);
}

std::size_t LowerBoundParams::max_broken_length() const {
  // Tolerate rounding so that log 4096 / log 4 counts as exactly 6.
  return static_cast<std::size_t>(std::floor(girth_threshold() + 1e-9));
}

std::vector<std::vector<VertexId>> enumerate_short_cycles(const Graph& g, std::size_t max_length,
                                                          std::size_t budget) {
  std::vector<std::vector<VertexId>> cycles;
  if (max_length < 3) return cycles;
  const std::size_t n = g.num_vertices();
  std::vector<char> on_path(n, 0);
  std::vector<VertexId> path;
  std::size_t steps = 0;

  auto extend = [&](auto&& self, VertexId start) -> void {
    if (++steps > budget) {
      throw GenerationError("cycle enumeration budget exceeded (" + std::to_string(budget) +
                            " steps); scale the construction down");
    }
    const VertexId tail = path.back();
    for (VertexId w : g.neighbors(tail)) {
      if (w == start) {
        // Close once per direction class: second vertex below the last one.
        if (path.size() >= 3 && path[1] < path.back()) cycles.push_back(path);
        continue;
      }
      if (w < start || on_path[w] || path.size() == max_length) continue;
      on_path[w] = 1;
      path.push_back(w);
      self(self, start);
      path.pop_back();
      on_path[w] = 0;
    }
  };

  for (VertexId s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[s] = 1;
    extend(extend, s);
    on_path[s] = 0;
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

std::optional<std::size_t> girth(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::optional<std::size_t> best;
  std::vector<std::size_t> dist(n);
  std::vector<VertexId> parent(n);
  for (VertexId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    dist[s] = 0;
    parent[s] = s;
    std::vector<VertexId> frontier{s};
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const VertexId u = frontier[head];
      if (best && 2 * dist[u] + 1 >= *best) break;
      for (VertexId w : g.neighbors(u)) {
        if (dist[w] == SIZE_MAX) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          frontier.push_back(w);
        } else if (w != parent[u]) {
          const std::size_t len = dist[u] + dist[w] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

LowerBoundInstance lower_bound_instance(const LowerBoundParams& params, std::uint64_t seed) {
  params.validate();
  LowerBoundInstance out;
  const std::size_t n = params.n;
  const Graph sample = gnp(n, params.edge_probability(), seed);
  out.log.initial_edges = sample.num_edges();

  std::vector<char> over_cap(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (sample.degree(v) > params.degree_cap) {
      over_cap[v] = 1;
      ++out.log.over_cap_vertices;
    }
  }
  std::vector<Edge> kept;
  for (auto [u, v] : sample.edges()) {
    if (over_cap[u] || over_cap[v]) {
      ++out.log.edges_removed_degree;
    } else {
      kept.emplace_back(u, v);
    }
  }
  const Graph trimmed(n, kept);

  out.log.max_broken_length = params.max_broken_length();
  const auto cycles = enumerate_short_cycles(trimmed, out.log.max_broken_length, params.cycle_budget);
  out.log.short_cycles_found = cycles.size();
  // Removing edges never creates cycles, so walking the sorted list once and
  // skipping already-broken cycles matches re-enumerating after each removal.
  std::set<Edge> removed;
  for (const auto& cycle : cycles) {
    std::vector<Edge> cycle_edges;
    bool broken = false;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const VertexId a = cycle[i];
      const VertexId b = cycle[(i + 1) % cycle.size()];
      const Edge e{std::min(a, b), std::max(a, b)};
      if (removed.contains(e)) {
        broken = true;
        break;
      }
      cycle_edges.push_back(e);
    }
    if (broken) continue;
    removed.insert(*std::min_element(cycle_edges.begin(), cycle_edges.end()));
  }
  out.log.edges_removed_cycles = removed.size();
  std::erase_if(kept, [&](const Edge& e) { return removed.contains(e); });
  out.graph = Graph(n, kept);
  out.log.final_edges = out.graph.num_edges();
  return out;
}

FarInstance far_instance(Property property, std::size_t n, double epsilon, Model model, std::uint64_t seed,
                         std::optional<std::size_t> d, std::size_t max_attempts) {
  if (property == Property::kKColorable) {
    throw std::invalid_argument("far_instance supports bipartite, triangle_free and cycle_free");
  }
  if (model == Model::kSparse && !d) throw std::invalid_argument("sparse model requires a degree bound d");

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t sample_seed = seed + attempt;
    Graph g;
    switch (property) {
      case Property::kBipartite:
        g = random_bounded_degree(n, d.value_or(4), sample_seed);
        break;
      case Property::kTriangleFree:
        g = n <= 40 ? make_complete(n) : gnp(n, 0.6, sample_seed);
        break;
      case Property::kCycleFree:
        g = gnm(n, std::min<std::size_t>(2 * n, n * (n > 0 ? n - 1 : 0) / 2), sample_seed);
        break;
      case Property::kKColorable:
        break;
    }
    auto cert = certify(g, property, epsilon, model, d);
    if (cert.verdict == FarnessVerdict::kEpsilonFar) {
      return FarInstance{std::move(g), cert, sample_seed, attempt + 1};
    }
  }
  throw GenerationError("no certified " + std::string(to_string(property)) + " instance after " +
                        std::to_string(max_attempts) + " attempts");
}

}  // namespace congest
