#pragma once

// The evaluation pipeline: uses -> pairs -> scores -> (clusters) -> measure
// -> metric, one (task, measure, dataset) triple per run.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lscd/config.hpp"
#include "lscd/ingest.hpp"

namespace lscd {

struct Prediction {
  std::string item;  // lemma, or "lemma:id1|id2" for pair-level tasks
  std::string measure;
  std::optional<double> value;  // nullopt = MISSING
  std::string orientation;      // similarity | distance | change | label | agreement
};

struct MetricResult {
  std::string name;
  std::optional<double> value;  // nullopt when undefined under drop-with-coverage
  double coverage = 0.0;
  std::size_t n = 0;
  std::string note;
};

struct EvalReport {
  std::string config_name;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string dataset;
  std::string dataset_version;
  std::string task;
  std::string measure;
  std::vector<Prediction> predictions;
  std::vector<MetricResult> metrics;
  std::vector<std::string> warnings;
  std::map<std::string, SenseClustering> clusterings;  // per lemma, when clustering ran
  double seconds = 0.0;  // wall time; kept out of the deterministic report files

  const MetricResult* metric(const std::string& name) const;
};

/// Seeded uniform sample without replacement, returned in id order. n >= |usages| returns all.
std::vector<Usage> sample_uses(const std::vector<Usage>& usages, std::size_t n, std::uint64_t seed);

/// Runs the configured pipeline. Config and dataset compatibility are checked before any
/// computation. Per-lemma measure failures become MISSING predictions with a warning.
EvalReport run(const RunConfig& config);

/// Same, on an already loaded dataset.
EvalReport run(const RunConfig& config, const Dataset& dataset);

}  // namespace lscd
