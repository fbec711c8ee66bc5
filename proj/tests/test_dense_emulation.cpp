#include <gtest/gtest.h>

#include <set>

#include "congest/dense_emulation.hpp"
#include "congest/generators.hpp"
#include "congest/oracles.hpp"
#include "support/brute_force.hpp"

using namespace congest;

namespace {

Graph almost_complete(std::size_t n) {
  auto edges = make_complete(n).edges();
  edges.erase(edges.begin());
  return Graph(n, edges);
}

// "Contains no two vertex-disjoint triangles": a disjointed property.
bool two_disjoint_triangles(const Graph& g) {
  const auto n = static_cast<VertexId>(g.num_vertices());
  std::vector<std::array<VertexId, 3>> tris;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      for (VertexId c = b + 1; c < n; ++c)
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) tris.push_back({a, b, c});
  for (std::size_t i = 0; i < tris.size(); ++i) {
    for (std::size_t j = i + 1; j < tris.size(); ++j) {
      std::set<VertexId> all(tris[i].begin(), tris[i].end());
      all.insert(tris[j].begin(), tris[j].end());
      if (all.size() == 6) return true;
    }
  }
  return false;
}

}  // namespace

TEST(KColorWitness, Examples) {
  EXPECT_TRUE(witness_k_colorability(make_cycle(5), 2));
  EXPECT_FALSE(witness_k_colorability(make_cycle(5), 3));
  // Backtracking over all 3^5 assignments finds no proper coloring of K5 - e.
  EXPECT_FALSE(congest::testing::naive_colorable(almost_complete(5), 3));
  EXPECT_TRUE(witness_k_colorability(almost_complete(5), 3));
  EXPECT_TRUE(witness_k_colorability(disjoint_union(make_cycle(4), make_cycle(7)), 2));
  EXPECT_THROW(witness_k_colorability(make_cycle(26), 3), OracleBudgetExceeded);
}

TEST(PerfectWitness, Examples) {
  EXPECT_TRUE(witness_perfect_graph(make_cycle(5)));
  EXPECT_FALSE(witness_perfect_graph(make_cycle(4)));
  EXPECT_TRUE(witness_perfect_graph(complement(make_cycle(7))));
  EXPECT_FALSE(witness_perfect_graph(make_complete(6)));
  EXPECT_FALSE(witness_perfect_graph(make_grid(3, 4)));
  EXPECT_THROW(witness_perfect_graph(make_cycle(15)), OracleBudgetExceeded);
}

TEST(PerfectWitness, MatchesSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 5 + seed % 6;
    const Graph g = gnp(n, 0.3 + 0.05 * static_cast<double>(seed % 7), seed);
    const bool expected = congest::testing::naive_has_odd_hole(g) || congest::testing::naive_has_odd_hole(complement(g));
    EXPECT_EQ(witness_perfect_graph(g), expected) << serialize_edge_list(g);
  }
}

TEST(Checkers, RegistryAndSelfTest) {
  EXPECT_TRUE(make_checker("k-colorability:2").check(make_cycle(5)));
  EXPECT_FALSE(make_checker("k-colorability:3").check(make_cycle(5)));
  EXPECT_TRUE(make_checker("perfect").check(make_cycle(7)));
  EXPECT_THROW(make_checker("k-colorability:"), std::invalid_argument);
  EXPECT_THROW(make_checker("k-colorability:0"), std::invalid_argument);
  EXPECT_THROW(make_checker("planar"), std::invalid_argument);
  for (const char* name : {"k-colorability:1", "k-colorability:2", "k-colorability:3", "perfect"}) {
    EXPECT_EQ(checker_self_test(make_checker(name).check), "") << name;
  }
  EXPECT_NE(checker_self_test(two_disjoint_triangles), "");
  EXPECT_NE(checker_self_test([](const Graph& g) { return g.num_vertices() == 5; }), "");
}

TEST(Emulation, Parameters) {
  const EmulationParams p{5};
  EXPECT_DOUBLE_EQ(p.pick_probability(100), 0.25);
  EXPECT_DOUBLE_EQ(p.pick_probability(5), 1.0);
  EXPECT_EQ(p.inner_iterations(), 50u);
  EXPECT_EQ(p.edge_cap(), 2500u);
  for (std::size_t q = 1; q <= 40; ++q) {
    EXPECT_LE(EmulationParams{q}.total_rounds(), EmulationParams{q}.round_bound());
  }
  EXPECT_THROW(EmulationParams{0}.validate(), std::invalid_argument);
}

TEST(Emulation, BipartiteCycleAlwaysAccepts) {
  const auto checker = make_checker("k-colorability:2").check;
  const EmulationParams params{4};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    const auto run = emulate(make_cycle(4), checker, params, cfg);
    EXPECT_EQ(run.transcript.global_verdict, Verdict::kAccept);
    EXPECT_EQ(run.transcript.rounds_used, params.total_rounds());
  }
}

TEST(Emulation, FiveCycleRejects) {
  // With q = 5 the pick probability is min(1, 25/5) = 1: of the 2^5 pick
  // outcomes only "all picked" has positive probability, and then every
  // vertex collects the whole odd cycle.
  const auto checker = make_checker("k-colorability:2").check;
  const auto stats = run_trials(make_cycle(5), emulation_factory(checker, EmulationParams{5}), SimConfig{}, 30);
  EXPECT_DOUBLE_EQ(stats.reject_fraction, 1.0);
}

TEST(Emulation, DisjointedCheckerRefused) {
  const Graph g = disjoint_union(make_complete(3), make_complete(3));
  EXPECT_THROW(emulate(g, two_disjoint_triangles, EmulationParams{2}, SimConfig{}), ContractViolation);
}

TEST(Emulation, RejectionsCarryInducedWitnesses) {
  const auto checker = make_checker("k-colorability:2").check;
  std::size_t rejections = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = gnp(24, 0.25, seed);
    SimConfig cfg;
    cfg.seed = seed;
    const auto run = emulate(g, checker, EmulationParams{2}, cfg);
    for (const auto& [v, edges] : run.evidence) {
      ++rejections;
      std::set<VertexId> vertices{v};
      for (auto [a, b] : edges) {
        EXPECT_TRUE(g.has_edge(a, b));
        vertices.insert(a);
        vertices.insert(b);
      }
      const std::vector<VertexId> vs(vertices.begin(), vertices.end());
      const Graph induced = induced_subgraph(g, vs);
      EXPECT_EQ(induced.num_edges(), edges.size()) << "collected subgraph must be induced";
      EXPECT_TRUE(checker(induced));
    }
  }
  EXPECT_GT(rejections, 0u);
}

TEST(Emulation, CappedVerticesFallSilent) {
  const auto checker = make_checker("k-colorability:2").check;
  EmulationParams params{2};
  params.edge_cap_override = 3;
  // p = 1 on K8: every vertex knows 7 > 3 edges right after picking.
  const auto run = emulate(make_complete(8), checker, params, SimConfig{});
  EXPECT_EQ(run.capped_vertices[0], 8u);
  EXPECT_EQ(run.sends_while_capped, 0u);
  const auto& per_round = run.transcript.per_round_messages;
  ASSERT_GT(per_round.size(), 2u);
  EXPECT_EQ(per_round[0], 56u);
  for (std::size_t r = 1; r < params.rounds_per_outer(); ++r) EXPECT_EQ(per_round[r], 0u) << r;

  // On a path the cap hits part-way; capped vertices stop forwarding.
  const auto uncapped = emulate(make_path(10), checker, EmulationParams{2}, SimConfig{});
  const auto capped = emulate(make_path(10), checker, params, SimConfig{});
  EXPECT_GT(capped.capped_vertices[0], 0u);
  EXPECT_LT(capped.transcript.total_messages(), uncapped.transcript.total_messages());
  EXPECT_EQ(capped.sends_while_capped, 0u);
}

TEST(Emulation, PickCountsRecorded) {
  const auto checker = make_checker("k-colorability:2").check;
  SimConfig cfg;
  cfg.seed = 4;
  const auto run = emulate(Graph::empty(100), checker, EmulationParams{5}, cfg);
  ASSERT_TRUE(run.picked_counts[0] && run.picked_counts[1]);
  EXPECT_GT(*run.picked_counts[0], 0u);
  EXPECT_EQ(run.round_bound, 242u * 25u);
  EXPECT_LE(run.transcript.rounds_used, run.round_bound);
}

TEST(Emulation, DeterministicTranscripts) {
  const auto checker = make_checker("perfect").check;
  SimConfig cfg;
  cfg.seed = 12;
  const Graph g = gnp(12, 0.5, 2);
  EXPECT_EQ(emulate(g, checker, EmulationParams{2}, cfg).transcript,
            emulate(g, checker, EmulationParams{2}, cfg).transcript);
}
