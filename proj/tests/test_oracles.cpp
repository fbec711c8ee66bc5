#include <gtest/gtest.h>

#include <set>

#include "congest/generators.hpp"
#include "congest/oracles.hpp"
#include "support/brute_force.hpp"

using namespace congest;
using namespace congest::testing;

namespace {

Graph bowtie() {
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}};
  return Graph(5, edges);
}

// Small random graphs with at most 16 edges for exhaustive cross-checks.
std::vector<Graph> small_corpus() {
  std::vector<Graph> out;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 4 + seed % 5;
    Graph g = gnp(n, 0.25 + 0.1 * static_cast<double>(seed % 5), seed);
    if (g.num_edges() <= 16) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

TEST(Decide, Examples) {
  const auto c6 = decide_property(make_cycle(6), Property::kBipartite);
  ASSERT_TRUE(c6.holds);
  for (auto [u, v] : make_cycle(6).edges()) EXPECT_NE(c6.coloring[u], c6.coloring[v]);

  const auto k4 = decide_property(make_complete(4), Property::kTriangleFree);
  EXPECT_FALSE(k4.holds);
  EXPECT_EQ(k4.witness, (std::vector<VertexId>{0, 1, 2}));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_TRUE(decide_property(random_tree(50, seed), Property::kCycleFree).holds);
  }
}

TEST(Decide, WitnessesAreGenuine) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = gnp(30, 0.08, seed);
    const auto bip = decide_property(g, Property::kBipartite);
    if (!bip.holds) {
      EXPECT_TRUE(is_cycle_in(g, bip.witness));
      EXPECT_EQ(bip.witness.size() % 2, 1u);
    }
    const auto forest = decide_property(g, Property::kCycleFree);
    if (!forest.holds) EXPECT_TRUE(is_cycle_in(g, forest.witness));
    const auto tri = decide_property(g, Property::kTriangleFree);
    if (!tri.holds) EXPECT_TRUE(is_cycle_in(g, tri.witness));
  }
}

TEST(Decide, ConsistentWithNaiveDeciders) {
  for (const Graph& g : small_corpus()) {
    EXPECT_EQ(decide_property(g, Property::kBipartite).holds, naive_bipartite(g));
    EXPECT_EQ(decide_property(g, Property::kTriangleFree).holds, naive_triangle_free(g));
    EXPECT_EQ(decide_property(g, Property::kCycleFree).holds, naive_forest(g));
    EXPECT_EQ(decide_property(g, Property::kKColorable, 3).holds, naive_colorable(g, 3));
  }
}

TEST(Decide, ColoringBudget) {
  EXPECT_THROW(decide_property(make_cycle(26), Property::kKColorable, 3), OracleBudgetExceeded);
  EXPECT_TRUE(decide_property(make_cycle(200), Property::kKColorable, 2).holds);
  const auto five = decide_property(make_complete(5), Property::kKColorable, 4);
  EXPECT_FALSE(five.holds);
}

TEST(CycleFreeDistance, Examples) {
  EXPECT_EQ(distance_cycle_free(make_complete(3)), 1u);
  // Exhaustive edge-subset search agrees: 6 - 4 + 1.
  EXPECT_EQ(min_deletions(make_complete(4), naive_forest), 3u);
  EXPECT_EQ(distance_cycle_free(make_complete(4)), 3u);
  EXPECT_EQ(distance_cycle_free(random_forest(40, 0.7, 1)), 0u);
}

TEST(BipartiteDistance, Examples) {
  EXPECT_EQ(distance_bipartite(make_cycle(5)), 1u);
  EXPECT_EQ(distance_bipartite(make_complete(4)), 2u);
  EXPECT_EQ(min_deletions(make_complete(4), naive_bipartite), 2u);
  EXPECT_EQ(distance_bipartite(make_complete_bipartite(4, 5)), 0u);
  EXPECT_EQ(distance_bipartite(make_grid(4, 5)), 0u);
  EXPECT_THROW(distance_bipartite(make_cycle(25)), OracleBudgetExceeded);
}

TEST(BipartiteDistance, MatchesEdgeSubsetSearch) {
  for (const Graph& g : small_corpus()) {
    EXPECT_EQ(distance_bipartite(g), min_deletions(g, naive_bipartite));
    EXPECT_EQ(distance_cycle_free(g), min_deletions(g, naive_forest));
  }
}

TEST(ColoringDistance, MatchesNaive) {
  for (const Graph& g : small_corpus()) {
    EXPECT_EQ(distance_k_colorable(g, 3), naive_coloring_distance(g, 3));
    EXPECT_EQ(distance_k_colorable(g, 2), distance_bipartite(g));
  }
  EXPECT_EQ(distance_k_colorable(make_complete(5), 3), naive_coloring_distance(make_complete(5), 3));
}

TEST(TrianglePacking, Examples) {
  EXPECT_EQ(distance_triangle_free_lower_bound(make_complete(3)).bound, 1u);
  EXPECT_EQ(distance_triangle_free_lower_bound(bowtie()).bound, 2u);
  const auto k6 = distance_triangle_free_lower_bound(make_complete(6));
  EXPECT_EQ(k6.bound, 4u);
  // Exhaustive edge-subset minimization on K6 gives 6 (15 edges minus a 3x3 cut).
  EXPECT_EQ(min_deletions(make_complete(6), naive_triangle_free), 6u);
  ASSERT_TRUE(k6.exact.has_value());
  EXPECT_EQ(*k6.exact, 6u);
}

TEST(TrianglePacking, PackingIsEdgeDisjointAndMaximal) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gnp(40, 0.3, seed);
    const auto packing = distance_triangle_free_lower_bound(g);
    std::set<Edge> used;
    for (const auto& t : packing.triangles) {
      for (auto [a, b] : {Edge{t[0], t[1]}, Edge{t[0], t[2]}, Edge{t[1], t[2]}}) {
        EXPECT_TRUE(g.has_edge(a, b));
        EXPECT_TRUE(used.insert({std::min(a, b), std::max(a, b)}).second);
      }
    }
    std::vector<bool> keep;
    for (const auto& e : g.edges()) keep.push_back(!used.contains(e));
    EXPECT_TRUE(naive_triangle_free(edge_subgraph(g, keep)) || decide_property(edge_subgraph(g, keep), Property::kTriangleFree).holds);
  }
}

TEST(TrianglePacking, BoundSoundness) {
  for (const Graph& g : small_corpus()) {
    const auto packing = distance_triangle_free_lower_bound(g);
    ASSERT_TRUE(packing.exact.has_value());
    EXPECT_LE(packing.bound, *packing.exact);
    EXPECT_EQ(*packing.exact, min_deletions(g, naive_triangle_free));
  }
}

TEST(TrianglePacking, ExactOnLargestAllowedComplete) {
  // Mantel: the largest triangle-free subgraph of K12 is K6,6 with 36 edges.
  EXPECT_EQ(exact_distance_triangle_free(make_complete(12)), 66u - 36u);
  EXPECT_THROW(exact_distance_triangle_free(make_complete(13)), OracleBudgetExceeded);
}

TEST(OddCycles, ShortestAndPacking) {
  EXPECT_TRUE(shortest_odd_cycle(make_cycle(8)).empty());
  EXPECT_EQ(shortest_odd_cycle(make_cycle(9)).size(), 9u);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gnp(12, 0.25, seed);
    const auto cycle = shortest_odd_cycle(g);
    std::size_t expected = 0;
    for (const auto& c : enumerate_short_cycles(g, 12)) {
      if (c.size() % 2 == 1 && (expected == 0 || c.size() < expected)) expected = c.size();
    }
    EXPECT_EQ(cycle.size(), expected);
    if (!cycle.empty()) EXPECT_TRUE(is_cycle_in(g, cycle));

    const auto packing = odd_cycle_packing(g);
    std::set<Edge> used;
    for (const auto& c : packing) {
      EXPECT_TRUE(is_cycle_in(g, c));
      EXPECT_EQ(c.size() % 2, 1u);
      for (std::size_t i = 0; i < c.size(); ++i) {
        const VertexId a = c[i];
        const VertexId b = c[(i + 1) % c.size()];
        EXPECT_TRUE(used.insert({std::min(a, b), std::max(a, b)}).second);
      }
    }
    EXPECT_LE(packing.size(), distance_bipartite(g));
  }
}

TEST(Certify, Examples) {
  const auto c5 = certify(make_cycle(5), Property::kBipartite, 0.04, Model::kGeneral);
  EXPECT_EQ(c5.distance, 1u);
  EXPECT_DOUBLE_EQ(c5.normalizer, 5.0);
  EXPECT_DOUBLE_EQ(c5.epsilon_star, 0.2);
  EXPECT_EQ(c5.method, CertMethod::kExhaustive);
  EXPECT_EQ(c5.verdict, FarnessVerdict::kEpsilonFar);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto tree = certify(random_tree(100, seed), Property::kCycleFree, 0.3, Model::kGeneral);
    EXPECT_EQ(tree.verdict, FarnessVerdict::kSatisfies);
    EXPECT_EQ(tree.method, CertMethod::kFormula);
  }

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = gnm(512, 1024, seed);
    const auto cert = certify(g, Property::kCycleFree, 0.25, Model::kGeneral);
    const std::size_t excess = 1024 - 512 + connected_components(g).size();
    EXPECT_EQ(cert.distance, excess);
    EXPECT_EQ(cert.verdict == FarnessVerdict::kEpsilonFar, excess >= 256);
  }
}

TEST(Certify, ModelsAndGap) {
  const Graph c5 = make_cycle(5);
  EXPECT_DOUBLE_EQ(certify(c5, Property::kBipartite, 0.04, Model::kDense).normalizer, 25.0);
  EXPECT_DOUBLE_EQ(certify(c5, Property::kBipartite, 0.04, Model::kSparse, 2).normalizer, 10.0);
  EXPECT_THROW(certify(c5, Property::kBipartite, 0.04, Model::kSparse), std::invalid_argument);
  EXPECT_THROW(certify(c5, Property::kBipartite, 0.04, Model::kSparse, 1), std::invalid_argument);
  // Dense C5: 1/25 = 0.04 is far at 0.04 but in the gap at 0.05.
  EXPECT_EQ(certify(c5, Property::kBipartite, 0.04, Model::kDense).verdict, FarnessVerdict::kEpsilonFar);
  EXPECT_EQ(certify(c5, Property::kBipartite, 0.05, Model::kDense).verdict, FarnessVerdict::kNeither);
  const auto big = certify(random_bounded_degree(60, 4, 3), Property::kBipartite, 0.01, Model::kGeneral);
  EXPECT_EQ(big.method, CertMethod::kPackingBound);
  EXPECT_FALSE(big.exact());
  const auto col = certify(make_complete(5), Property::kKColorable, 0.01, Model::kDense, std::nullopt, 3);
  EXPECT_EQ(col.k, 3u);
  EXPECT_EQ(col.distance, naive_coloring_distance(make_complete(5), 3));
}

TEST(Certify, ConsistencyOverCorpus) {
  for (const Graph& g : small_corpus()) {
    for (auto p : {Property::kBipartite, Property::kTriangleFree, Property::kCycleFree}) {
      const auto cert = certify(g, p, 0.1, Model::kGeneral);
      EXPECT_EQ(decide_property(g, p).holds, cert.distance == 0);
      EXPECT_EQ(cert.verdict == FarnessVerdict::kSatisfies, decide_property(g, p).holds);
      EXPECT_GE(cert.epsilon_star, 0.0);
    }
  }
}
