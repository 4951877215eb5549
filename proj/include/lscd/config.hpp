#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "lscd/change_measures.hpp"
#include "lscd/clustering.hpp"
#include "lscd/embed_store.hpp"
#include "lscd/ingest.hpp"
#include "lscd/metrics.hpp"
#include "lscd/wic.hpp"

namespace lscd {

enum class BenchTask { WicGraded, WicOrdinal, Wsi, LscdGraded, LscdBinary, Compare };
enum class UseSource { GoldenUses, CorpusSample };
enum class PairSource { GoldenPairs, Generated };
enum class Scorer { Gold, Embedding, ExternalFile };
enum class Measure { None, Jsd, Binary, CompareClusters, Apd, ApdThresholded, Cos, DiaSense };
enum class SplitSelection { Train, Dev, Test, All };
enum class OrdinalMode { AggregatedGold, Annotators };

std::string to_string(BenchTask t);
std::string to_string(UseSource s);
std::string to_string(PairSource s);
std::string to_string(Scorer s);
std::string to_string(Measure m);
std::string to_string(SplitSelection s);
std::string to_string(OrdinalMode m);

BenchTask parse_bench_task(const std::string& s);
Measure parse_measure(const std::string& s);
SplitSelection parse_split_selection(const std::string& s);

/// Measures computed from a sense clustering rather than directly from pair scores.
bool needs_clustering(Measure m);

/// One (task, measure, dataset) evaluation run.
struct RunConfig {
  std::string name;  // label used in plots
  std::filesystem::path dataset;
  SplitSelection split = SplitSelection::All;
  BenchTask task = BenchTask::WicGraded;

  UseSource use_source = UseSource::GoldenUses;
  std::size_t sample_size = 0;  // per grouping, corpus-sample only

  PairSource pair_source = PairSource::GoldenPairs;
  PairType pair_type = PairType::All;
  std::optional<std::size_t> max_pairs;

  Scorer scorer = Scorer::Gold;
  std::filesystem::path scores;
  bool scores_are_distances = false;
  std::filesystem::path embeddings;
  PoolingSpec pooling;
  DistanceMetric metric = DistanceMetric::Cosine;
  std::optional<ThresholdSpec> thresholds;
  bool discretize_for_clustering = false;

  ClusteringParams clustering;
  Measure measure = Measure::None;
  std::optional<int> binary_min_attestations;  // overrides the manifest
  std::optional<int> binary_max_attestations;
  DiaSenseVariant diasense_variant = DiaSenseVariant::Ratio;
  bool include_noise = false;
  bool drop_gold_noise = true;

  MissingPolicy missing_policy = MissingPolicy::Error;
  OrdinalMode ordinal_mode = OrdinalMode::AggregatedGold;
  std::uint64_t seed = 0;
  std::filesystem::path out;

  /// Relative paths resolve against `base_dir`. Unknown keys raise ConfigError.
  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
  static RunConfig load(const std::filesystem::path& path);
  /// Everything except the output directory.
  nlohmann::json to_json() const;
  /// 64-bit FNV-1a of the canonical JSON form, as 16 hex digits.
  std::string hash() const;

  /// Task/measure/source compatibility; throws ConfigError.
  void validate() const;
};

}  // namespace lscd
