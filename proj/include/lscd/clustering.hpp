#pragma once

// Correlation clustering of word usage graphs.
//
// Edges at or above the threshold tau attract, edges below repel. The loss
// charges (tau - w) for every intra-cluster edge with w < tau and (w - tau)
// for every inter-cluster edge with w >= tau; unjudged pairs cost nothing.

#include <cstdint>
#include <span>
#include <utility>

#include "lscd/wic.hpp"
#include "lscd/wug.hpp"

namespace lscd {

struct ClusteringParams {
  double threshold = 2.5;
  std::size_t restarts = 10;
  std::size_t max_iterations = 200;  // annealing sweeps per restart
  std::uint64_t seed = 0;
  bool allow_singletons = true;
  std::size_t threads = 0;  // 0 = hardware concurrency, capped at restarts

  void validate() const;
};

/// Throws ContractError if a node of `g` is unassigned. Noise-labelled nodes count as singletons.
double clustering_loss(const WordUsageGraph& g, const SenseClustering& c, double threshold);

/// Best clustering across seeded annealing restarts. Labels are 0..k-1 in order of
/// first appearance over id-sorted nodes. Isolated nodes are singletons.
SenseClustering correlation_cluster(const WordUsageGraph& g, const ClusteringParams& params);

inline constexpr std::size_t kBruteForceMaxNodes = 12;

struct ExactClustering {
  SenseClustering clustering;
  double loss = 0.0;
};

/// Exhaustive minimum over all set partitions (n <= 12). Ties go to fewer clusters,
/// then the lexicographically smallest assignment over id-sorted nodes.
ExactClustering brute_force_cluster(const WordUsageGraph& g, double threshold);

/// Graph whose edge weights are pair scores (e.g. model similarities), one edge per scored pair.
WordUsageGraph scored_graph(const std::string& lemma, const std::vector<Usage>& usages,
                            std::span<const PairScore> scores);

}  // namespace lscd
