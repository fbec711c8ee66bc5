#pragma once

// Post-hoc structural checks for the cycle tester's BFS tuple lists.

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "congest/cycle_free.hpp"
#include "congest/graph.hpp"

namespace congest::testing {

/// Edges of the parent chain that brought `tuple` to `v`, or nullopt if some
/// link is missing from the lists or from g.
inline std::optional<std::vector<Edge>> parent_chain(const Graph& g, const std::vector<std::set<BfsTuple>>& lists,
                                                     VertexId v, BfsTuple tuple) {
  std::vector<Edge> chain;
  while (tuple.depth > 0) {
    const VertexId p = tuple.parent;
    if (!g.has_edge(v, p)) return std::nullopt;
    chain.emplace_back(std::min(v, p), std::max(v, p));
    const auto& up = lists[p];
    const auto it = std::find_if(up.begin(), up.end(), [&](const BfsTuple& t) {
      return t.root == tuple.root && t.depth + 1 == tuple.depth;
    });
    if (it == up.end()) return std::nullopt;
    v = p;
    tuple = *it;
  }
  if (v != tuple.root.vertex || tuple.parent != v) return std::nullopt;
  return chain;
}

inline bool has_cycle(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<Edge> unique = edges;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : unique) {
    const VertexId ra = find(a);
    const VertexId rb = find(b);
    if (ra == rb) return true;
    parent[ra] = rb;
  }
  return false;
}

/// Number of vertices holding two distinct same-root tuples whose parent
/// chains do not close into a walk containing a cycle.
inline std::size_t unsound_duplicates(const Graph& g, const std::vector<std::set<BfsTuple>>& lists) {
  std::size_t bad = 0;
  for (VertexId v = 0; v < lists.size(); ++v) {
    const auto& l = lists[v];
    for (auto it = l.begin(); it != l.end(); ++it) {
      const auto next = std::next(it);
      if (next == l.end() || next->root != it->root) continue;
      const auto a = parent_chain(g, lists, v, *it);
      const auto b = parent_chain(g, lists, v, *next);
      if (!a || !b) {
        ++bad;
        break;
      }
      std::vector<Edge> both = *a;
      both.insert(both.end(), b->begin(), b->end());
      if (!has_cycle(g.num_vertices(), both)) {
        ++bad;
        break;
      }
    }
  }
  return bad;
}

/// Length of the shortest closed walk from v containing a simple cycle: the
/// minimum of d(a) + d(b) + 1 over non-tree edges of a BFS tree rooted at v.
inline std::optional<std::size_t> shortest_lasso(const Graph& g, VertexId v) {
  const std::size_t n = g.num_vertices();
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, kUnseen);
  std::vector<VertexId> parent(n, v);
  std::queue<VertexId> q;
  dist[v] = 0;
  q.push(v);
  std::optional<std::size_t> best;
  while (!q.empty()) {
    const VertexId a = q.front();
    q.pop();
    for (VertexId b : g.neighbors(a)) {
      if (dist[b] == kUnseen) {
        dist[b] = dist[a] + 1;
        parent[b] = a;
        q.push(b);
      } else if (parent[a] != b && parent[b] != a) {
        const std::size_t len = dist[a] + dist[b] + 1;
        if (!best || len < *best) best = len;
      }
    }
  }
  return best;
}

struct LassoReport {
  std::size_t far_vertices = 0;  // vertices of G' with some vertex at distance >= half
  std::size_t violations = 0;    // of those, vertices without a short lasso in g
};

/// Checks that every vertex of `sparse` having a vertex at distance >= `half`
/// lies on a closed walk of length <= `full` in g containing a simple cycle.
inline LassoReport check_far_vertices(const Graph& g, const Graph& sparse, std::size_t half, std::size_t full) {
  LassoReport report;
  for (VertexId v = 0; v < sparse.num_vertices(); ++v) {
    const auto dist = bfs_distances(sparse, v);
    bool far = false;
    for (auto d : dist) far = far || (d != SIZE_MAX && d >= half);
    if (!far) continue;
    ++report.far_vertices;
    const auto lasso = shortest_lasso(g, v);
    if (!lasso || *lasso > full) ++report.violations;
  }
  return report;
}

}  // namespace congest::testing
