#pragma once

// Word-in-Context level: usage pair generation, graded pair scoring and
// ordinal discretization. All scores use one orientation: larger = closer.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lscd/embed_store.hpp"
#include "lscd/wug.hpp"

namespace lscd {

enum class ScoreSource { Embedding, External, Gold };

std::string to_string(ScoreSource s);

struct PairScore {
  UsagePair pair;
  double score = 0.0;
  ScoreSource source = ScoreSource::External;
};

/// Similarity-scale cut points t1 < t2 < t3 between the four DURel levels.
class ThresholdSpec {
 public:
  ThresholdSpec(double t1, double t2, double t3);
  double t1() const { return t_[0]; }
  double t2() const { return t_[1]; }
  double t3() const { return t_[2]; }

 private:
  double t_[3];
};

/// Relation of two usages by grouping: COMPARE, EARLIER or LATER.
PairType classify_pair(const Usage& a, const Usage& b);

/// Canonically ordered, deduplicated pairs of the requested type. With
/// `max_pairs`, a seeded uniform sample without replacement.
std::vector<UsagePair> generate_pairs(const std::vector<Usage>& usages, PairType type,
                                      std::optional<std::size_t> max_pairs, std::uint64_t seed);

enum class DistanceMetric { Cosine, Euclidean, Manhattan };

std::string to_string(DistanceMetric m);
DistanceMetric parse_distance_metric(const std::string& s);

double vector_distance(std::span<const double> a, std::span<const double> b, DistanceMetric metric);

/// Similarity from a distance: 1 - d for cosine, -d otherwise.
double distance_to_similarity(double distance, DistanceMetric metric);

/// Scores every pair from pooled store vectors. Missing ids are all listed in one FormatError.
std::vector<PairScore> score_pairs_from_embeddings(std::span<const UsagePair> pairs,
                                                   const EmbeddingStore& store, const PoolingSpec& spec,
                                                   DistanceMetric metric);

struct ExternalScores {
  std::vector<PairScore> scores;  // canonical order
  std::vector<std::string> warnings;
};

/// Reads identifier1/identifier2/score. Duplicate pairs are averaged with a warning.
/// With `scores_are_distances`, values are negated on load.
ExternalScores load_external_scores(const std::filesystem::path& path, bool scores_are_distances = false);

/// Lower-inclusive interval lookup onto {1,2,3,4}.
int discretize(double score, const ThresholdSpec& th);

}  // namespace lscd
