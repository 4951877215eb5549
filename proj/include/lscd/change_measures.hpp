#pragma once

// Lemma-level change predictions, either from sense clusters (JSD, binary
// gain/loss, COMPARE from co-clustering) or directly from pair scores and
// embeddings (APD, thresholded APD, COS, DiaSense).

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lscd/embed_store.hpp"
#include "lscd/wic.hpp"
#include "lscd/wug.hpp"

namespace lscd {

struct SenseDistribution {
  std::map<int, double> probability;
  std::size_t support = 0;  // usages counted
};

struct ChangeScores {
  std::string lemma;
  std::optional<double> graded;
  std::optional<int> binary;
  std::optional<int> binary_gain;
  std::optional<int> binary_loss;
  std::optional<double> compare;
};

struct NoisePolicy {
  bool include_noise = false;  // treat label -1 as an ordinary cluster
};

/// Sense proportions over the usages of one grouping. Throws DegenerateInputError if none remain.
SenseDistribution sense_distribution(const SenseClustering& c, const std::vector<Usage>& usages,
                                     Grouping grouping, NoisePolicy noise = {});

/// Jensen-Shannon distance (square root of the base-2 divergence), in [0, 1].
double jsd_distance(const SenseDistribution& p, const SenseDistribution& q);

struct BinaryChange {
  int binary = 0;
  int gain = 0;
  int loss = 0;
  bool operator==(const BinaryChange&) const = default;
};

/// Gain: a cluster with >= min_attestations later usages and <= max_attestations earlier ones.
/// Loss is the mirror image.
BinaryChange binary_change(const SenseClustering& c, const std::vector<Usage>& usages, int min_attestations = 1,
                           int max_attestations = 0, NoisePolicy noise = {});

/// Fraction of pairs whose usages share a cluster.
double compare_from_clusters(const SenseClustering& c, std::span<const UsagePair> pairs);

/// Mean pair score.
double apd(std::span<const PairScore> scores);
double apd(std::span<const double> values);

/// Mean of the discretized pair scores, in [1, 4].
double apd_thresholded(std::span<const PairScore> scores, const ThresholdSpec& th);

/// Distance between the mean vectors of the two periods.
double cos_prototype(std::span<const Vector> earlier, std::span<const Vector> later, DistanceMetric metric);

enum class DiaSenseVariant { Ratio, Difference };

std::string to_string(DiaSenseVariant v);
DiaSenseVariant parse_diasense_variant(const std::string& s);

/// Cross-period APD normalized by the mean within-period APD. Inputs are distances.
double diasense(std::span<const double> cross, std::span<const double> within_earlier,
                std::span<const double> within_later, DiaSenseVariant variant);

}  // namespace lscd
