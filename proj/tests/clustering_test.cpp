#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "lscd/clustering.hpp"
#include "lscd/error.hpp"
#include "lscd/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace lscd;
using testutil::usage;

namespace {

WordUsageGraph graph(std::size_t n, const std::vector<std::tuple<int, int, double>>& edges) {
  std::vector<Usage> us;
  for (std::size_t i = 0; i < n; ++i) us.push_back(usage("n" + std::to_string(i)));
  std::map<PairKey, EdgeData> e;
  for (auto [a, b, w] : edges) {
    e[canonical_pair("n" + std::to_string(a), "n" + std::to_string(b))] = EdgeData{w, {}};
  }
  return WordUsageGraph("w", us, e);
}

SenseClustering labels(const std::vector<int>& l) {
  SenseClustering c;
  for (std::size_t i = 0; i < l.size(); ++i) c.assignment["n" + std::to_string(i)] = l[i];
  return c;
}

std::size_t cluster_count(const SenseClustering& c) {
  std::set<int> s;
  for (const auto& [id, l] : c.assignment) s.insert(l);
  return s.size();
}

WordUsageGraph random_graph(Rng& rng, std::size_t n, double density) {
  std::vector<std::tuple<int, int, double>> e;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (uniform01(rng) < density) e.emplace_back(int(a), int(b), 1.0 + 3.0 * uniform01(rng));
    }
  }
  return graph(n, e);
}

std::vector<oracle::Edge> oracle_edges(const WordUsageGraph& g) {
  std::vector<oracle::Edge> out;
  for (const auto& [k, e] : g.edges()) out.push_back({*g.index_of(k.first), *g.index_of(k.second), e.weight});
  return out;
}

}  // namespace

const auto kTriangle = graph(3, {{0, 1, 4}, {1, 2, 4}, {0, 2, 2}});

TEST(Loss, Examples) {
  EXPECT_DOUBLE_EQ(clustering_loss(graph(3, {{0, 1, 4}, {1, 2, 4}, {0, 2, 4}}), labels({0, 0, 0}), 2.5), 0.0);
  EXPECT_DOUBLE_EQ(clustering_loss(kTriangle, labels({0, 0, 0}), 2.5), 0.5);
  EXPECT_DOUBLE_EQ(clustering_loss(kTriangle, labels({0, 0, 1}), 2.5), 1.5);
  EXPECT_DOUBLE_EQ(clustering_loss(graph(2, {{0, 1, 1}}), labels({0, 1}), 2.5), 0.0);
}

TEST(Loss, UnassignedNodeIsContractError) {
  SenseClustering c;
  c.assignment["n0"] = 0;
  EXPECT_THROW(clustering_loss(kTriangle, c, 2.5), ContractError);
}

TEST(BruteForce, Examples) {
  const auto one = brute_force_cluster(graph(1, {}), 2.5);
  EXPECT_EQ(one.loss, 0.0);
  EXPECT_EQ(one.clustering.assignment.size(), 1u);

  const auto tri = brute_force_cluster(kTriangle, 2.5);
  EXPECT_DOUBLE_EQ(tri.loss, 0.5);
  EXPECT_EQ(cluster_count(tri.clustering), 1u);

  // 4-cycle n0-n1-n2-n3-n0 with weights 4,1,4,1.
  const auto cyc = brute_force_cluster(graph(4, {{0, 1, 4}, {1, 2, 1}, {2, 3, 4}, {3, 0, 1}}), 2.5);
  EXPECT_DOUBLE_EQ(cyc.loss, 0.0);
  EXPECT_EQ(cyc.clustering, labels({0, 0, 1, 1}));
}

TEST(BruteForce, TooLarge) {
  EXPECT_THROW(brute_force_cluster(graph(kBruteForceMaxNodes + 1, {}), 2.5), ContractError);
}

TEST(BruteForce, MatchesEnumerationOracle) {
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    const auto g = random_graph(rng, 2 + uniform_below(rng, 6), 0.7);
    const auto ex = brute_force_cluster(g, 2.5);
    EXPECT_NEAR(ex.loss, oracle::min_partition_loss(g.node_count(), oracle_edges(g), 2.5), 1e-9);
    EXPECT_NEAR(ex.loss, clustering_loss(g, ex.clustering, 2.5), 1e-9);
  }
}

TEST(Correlation, TwoCliquesJoinedWeakly) {
  const auto g = graph(6, {{0, 1, 4}, {0, 2, 4}, {1, 2, 4}, {3, 4, 4}, {3, 5, 4}, {4, 5, 4}, {2, 3, 1}});
  const auto c = correlation_cluster(g, {});
  EXPECT_EQ(c, labels({0, 0, 0, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(clustering_loss(g, c, 2.5), 0.0);
}

TEST(Correlation, AllAttractAllRepel) {
  std::vector<std::tuple<int, int, double>> hi, lo;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      hi.emplace_back(a, b, 4);
      lo.emplace_back(a, b, 1);
    }
  }
  EXPECT_EQ(cluster_count(correlation_cluster(graph(5, hi), {})), 1u);
  EXPECT_EQ(cluster_count(correlation_cluster(graph(5, lo), {})), 5u);
}

TEST(Correlation, IsolatedNodesAreSingletons) {
  const auto c = correlation_cluster(graph(4, {{0, 1, 4}}), {});
  EXPECT_EQ(c, labels({0, 0, 1, 2}));
}

TEST(Correlation, EmptyGraph) {
  EXPECT_THROW(correlation_cluster(graph(0, {}), {}), ContractError);
}

TEST(Correlation, DeterministicAcrossThreadCounts) {
  Rng rng(5);
  const auto g = random_graph(rng, 14, 0.6);
  ClusteringParams p;
  p.seed = 99;
  p.threads = 1;
  const auto a = correlation_cluster(g, p);
  p.threads = 4;
  EXPECT_EQ(correlation_cluster(g, p), a);
  EXPECT_EQ(correlation_cluster(g, p), a);
}

TEST(Correlation, InvariantToNodeInsertionOrder) {
  Rng rng(8);
  const auto g = random_graph(rng, 10, 0.8);
  std::vector<Usage> rev(g.nodes().rbegin(), g.nodes().rend());
  const WordUsageGraph h("w", rev, g.edges());
  ClusteringParams p;
  p.seed = 3;
  EXPECT_EQ(correlation_cluster(g, p), correlation_cluster(h, p));
}

TEST(Correlation, NeverBelowOracleAndUsuallyOptimal) {
  Rng rng(2024);
  int optimal = 0;
  const int n = 60;
  for (int i = 0; i < n; ++i) {
    const auto g = random_graph(rng, 3 + uniform_below(rng, 6), 1.0);
    ClusteringParams p;
    p.seed = static_cast<std::uint64_t>(i);
    const double got = clustering_loss(g, correlation_cluster(g, p), 2.5);
    const double best = brute_force_cluster(g, 2.5).loss;
    EXPECT_GE(got, best - 1e-9);
    optimal += got <= best + 1e-9;
  }
  EXPECT_GE(optimal, n * 95 / 100);
}

TEST(Correlation, NoSingletonsMergesNonIsolated) {
  // n2 is weakly tied to the clique but still joins it when singletons are disallowed.
  const auto g = graph(3, {{0, 1, 4}, {0, 2, 2}, {1, 2, 1}});
  ClusteringParams p;
  EXPECT_EQ(cluster_count(correlation_cluster(g, p)), 2u);
  p.allow_singletons = false;
  EXPECT_EQ(cluster_count(correlation_cluster(g, p)), 1u);
}

TEST(Params, Validation) {
  ClusteringParams p;
  p.restarts = 0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(ScoredGraph, BuildsFromScores) {
  std::vector<Usage> us{usage("a"), usage("b"), usage("c", 2)};
  std::vector<PairScore> s{{{"a", "b", PairType::Earlier}, 3.5, ScoreSource::External},
                           {{"a", "c", PairType::Compare}, 1.5, ScoreSource::External}};
  const auto g = scored_graph("w", us, s);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_DOUBLE_EQ(g.edges().at({"a", "c"}).weight, 1.5);
}
