#include <gtest/gtest.h>

#include <cmath>

#include "congest/cycle_free.hpp"
#include "congest/generators.hpp"
#include "congest/oracles.hpp"
#include "support/cycle_checks.hpp"

using namespace congest;

namespace {

std::vector<RootId> plain_ids(std::size_t n) {
  std::vector<RootId> ids(n);
  for (VertexId v = 0; v < n; ++v) ids[v] = {0, v};
  return ids;
}

const BfsTuple& winner(const std::set<BfsTuple>& l) {
  // Lowest root, then shallowest, then smallest parent: the set's first element.
  return *l.begin();
}

}  // namespace

TEST(CycleParams, Lengths) {
  CycleParams p{0.25};
  EXPECT_EQ(p.phase_one_rounds(512), 720u);
  EXPECT_EQ(p.phase_two_rounds(512), 360u);
  EXPECT_EQ(p.total_rounds(512), 1081u);
  EXPECT_LE(static_cast<double>(p.total_rounds(512)), 30.0 * 9.0 / 0.25 + 3.0);
  EXPECT_EQ(p.phase_one_rounds(1), 2u);
  EXPECT_EQ(p.phase_two_rounds(1), 0u);
  EXPECT_DOUBLE_EQ(p.deletion_probability(), 0.125);
  CycleParams wide{0.5, 1000.0};
  EXPECT_EQ(wide.phase_one_rounds(1000), 40u);
  EXPECT_EQ(wide.phase_two_rounds(1000), 20u);
  EXPECT_THROW(CycleParams{0.0}.validate(), std::invalid_argument);
  EXPECT_THROW((CycleParams{0.5, 1.0}.validate()), std::invalid_argument);
  for (std::size_t n : {2u, 10u, 100u, 1000u, 5000u}) {
    for (double eps : {0.05, 0.1, 0.25, 0.5, 1.0}) {
      CycleParams q{eps};
      EXPECT_LE(q.total_rounds(n), q.phase_one_rounds(n) + q.phase_one_rounds(n) / 2 + 3);
    }
  }
}

TEST(PrioritizedBfs, PathExample) {
  const auto lists = prioritized_bfs(make_path(3), 2, Priority::kLowestRoot, plain_ids(3));
  EXPECT_TRUE(lists[2].contains(BfsTuple{{0, 0}, 2, 1}));
  for (const auto& l : lists) EXPECT_EQ(winner(l).root.vertex, 0u);
}

TEST(PrioritizedBfs, FourCycleGivesTwoArrivals) {
  const auto lists = prioritized_bfs(make_cycle(4), 2, Priority::kLowestRoot, plain_ids(4));
  EXPECT_TRUE(lists[2].contains(BfsTuple{{0, 0}, 2, 1}));
  EXPECT_TRUE(lists[2].contains(BfsTuple{{0, 0}, 2, 3}));
  EXPECT_EQ(congest::testing::unsound_duplicates(make_cycle(4), lists), 0u);
}

TEST(PrioritizedBfs, StarLeavesFollowCenter) {
  const auto lists = prioritized_bfs(make_star(5), 1, Priority::kLowestRoot, plain_ids(6));
  for (VertexId leaf = 1; leaf <= 5; ++leaf) {
    EXPECT_EQ(winner(lists[leaf]), (BfsTuple{{0, 0}, 1, 0}));
  }
}

TEST(PrioritizedBfs, HighestPriorityWins) {
  std::vector<RootId> ids = plain_ids(5);
  ids[2].rank = 3;
  const auto lists = prioritized_bfs(make_path(5), 4, Priority::kHighestRoot, ids);
  for (const auto& l : lists) EXPECT_TRUE(std::any_of(l.begin(), l.end(), [](const BfsTuple& t) {
    return t.root == RootId{3, 2};
  }));
  EXPECT_THROW(prioritized_bfs(make_path(2), 1, Priority::kLowestRoot, {{0, 1}, {0, 1}}), std::invalid_argument);
}

TEST(PrioritizedBfs, TreesNeverShowDuplicates) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_forest(80, 0.9, seed);
    for (auto priority : {Priority::kLowestRoot, Priority::kHighestRoot}) {
      const auto lists = prioritized_bfs(g, 100, priority, plain_ids(80));
      for (const auto& l : lists) {
        for (auto it = l.begin(); std::next(it) != l.end(); ++it) ASSERT_NE(it->root, std::next(it)->root);
      }
    }
  }
}

TEST(Sparsify, Extremes) {
  const Graph g = gnp(30, 0.3, 1);
  EXPECT_EQ(sparsify(g, 0.0, 5).graph, g);
  EXPECT_EQ(sparsify(g, 1.0, 5).graph.num_edges(), 0u);
  EXPECT_THROW(sparsify(g, 1.5, 5), std::invalid_argument);
}

TEST(Sparsify, FourCliqueSurvivorsAreBinomial) {
  constexpr int kSeeds = 10000;
  double total = 0.0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    total += static_cast<double>(sparsify(make_complete(4), 0.5, static_cast<std::uint64_t>(seed)).graph.num_edges());
  }
  const double sigma = std::sqrt(6 * 0.25 / kSeeds);
  EXPECT_NEAR(total / kSeeds, 3.0, 3.0 * sigma);
}

TEST(Sparsify, MatchesDistributedDeletions) {
  const Graph g = gnm(60, 150, 4);
  CycleParams params{0.5};
  SimConfig cfg;
  cfg.seed = 17;
  Simulation sim(g, cycle_factory(params), cfg);
  sim.run();
  const Graph expected = sparsify(g, params.deletion_probability(), cfg.seed).graph;
  for (VertexId v = 0; v < 60; ++v) {
    const auto& deleted = sim.vertex_as<CycleVertex>(v).deleted();
    const auto nbrs = g.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) EXPECT_EQ(!deleted[i], expected.has_edge(v, nbrs[i]));
  }
}

TEST(CycleTest, ForestsAlwaysAccept) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    for (const Graph& g : {random_tree(100, seed), random_forest(120, 0.7, seed), make_path(40), make_star(30)}) {
      const CycleParams params{0.5};
      const Transcript t = run_cycle_test(g, params, cfg);
      EXPECT_EQ(t.global_verdict, Verdict::kAccept);
      EXPECT_EQ(t.rounds_used, params.total_rounds(g.num_vertices()));
      EXPECT_LE(t.max_message_bits, t.bandwidth_bits);
    }
  }
}

TEST(CycleTest, FourCycleRejectsInPhaseOne) {
  CycleParams params{0.5};
  params.force_no_deletion = true;
  const Graph g = make_cycle(4);
  Simulation sim(g, cycle_factory(params), SimConfig{});
  const Transcript t = sim.run();
  EXPECT_TRUE(t.rejected());
  EXPECT_EQ(t.rounds_used, 1 + params.phase_one_rounds(4));
  EXPECT_EQ(sim.vertex_as<CycleVertex>(2).rejected_in_phase(), 1);
}

TEST(CycleTest, DuplicatesAreBackedByCycles) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gnm(120, 150, seed);
    CycleParams params{0.5};
    SimConfig cfg;
    cfg.seed = seed;
    Simulation sim(g, cycle_factory(params), cfg);
    sim.run();
    const Graph sparse = sparsify(g, params.deletion_probability(), seed).graph;
    std::vector<std::set<BfsTuple>> phase_one(120);
    std::vector<std::set<BfsTuple>> phase_two(120);
    for (VertexId v = 0; v < 120; ++v) {
      phase_one[v] = sim.vertex_as<CycleVertex>(v).phase_one_tuples();
      phase_two[v] = sim.vertex_as<CycleVertex>(v).phase_two_tuples();
    }
    EXPECT_EQ(congest::testing::unsound_duplicates(sparse, phase_one), 0u);
    EXPECT_EQ(congest::testing::unsound_duplicates(g, phase_two), 0u);
  }
}

TEST(CycleTest, PhaseOneCoversSmallComponents) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gnm(100, 110, seed);
    CycleParams params{1.0, 8.0};  // short phases so some components exceed them
    const std::size_t length = params.phase_one_rounds(100);
    SimConfig cfg;
    cfg.seed = seed;
    Simulation sim(g, cycle_factory(params), cfg);
    sim.run();
    const Graph sparse = sparsify(g, params.deletion_probability(), seed).graph;
    for (const auto& comp : connected_components(sparse)) {
      std::size_t diameter = 0;
      for (VertexId v : comp) {
        for (VertexId u : comp) diameter = std::max(diameter, bfs_distances(sparse, v)[u]);
      }
      if (diameter > length) continue;
      const VertexId root = *std::min_element(comp.begin(), comp.end());
      for (VertexId v : comp) {
        const auto& l = sim.vertex_as<CycleVertex>(v).phase_one_tuples();
        EXPECT_TRUE(std::any_of(l.begin(), l.end(), [&](const BfsTuple& t) { return t.root.vertex == root; }));
      }
    }
  }
}

TEST(CycleTest, FarRandomGraphsDetected) {
  const Graph g = gnm(128, 256, 3);
  const auto cert = certify(g, Property::kCycleFree, 0.25, Model::kGeneral);
  ASSERT_EQ(cert.verdict, FarnessVerdict::kEpsilonFar);
  SimConfig cfg;
  cfg.seed = 1;
  const auto stats = run_trials(g, cycle_factory(CycleParams{0.25}), cfg, 60);
  EXPECT_GE(stats.reject_fraction, 0.66);
}

TEST(CycleTest, ShortLassoOracle) {
  EXPECT_EQ(congest::testing::shortest_lasso(make_cycle(7), 0), 7u);
  EXPECT_FALSE(congest::testing::shortest_lasso(make_path(7), 3).has_value());
  // Triangle 0-1-2 with a tail 2-3-4: from 4 the lasso is 2 + 2 + 3.
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}};
  EXPECT_EQ(congest::testing::shortest_lasso(Graph(5, edges), 4), 7u);
  const auto report = congest::testing::check_far_vertices(make_cycle(12), make_path(12), 6, 12);
  EXPECT_EQ(report.far_vertices, 12u);
  EXPECT_EQ(report.violations, 0u);
  EXPECT_EQ(congest::testing::check_far_vertices(make_cycle(12), make_path(12), 6, 11).violations, 12u);
}
