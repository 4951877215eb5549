#include "lscd/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "lscd/error.hpp"

namespace lscd {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(BenchTask t) {
  switch (t) {
    case BenchTask::WicGraded: return "wic-graded";
    case BenchTask::WicOrdinal: return "wic-ordinal";
    case BenchTask::Wsi: return "wsi";
    case BenchTask::LscdGraded: return "lscd-graded";
    case BenchTask::LscdBinary: return "lscd-binary";
    case BenchTask::Compare: return "compare";
  }
  return "wic-graded";
}

std::string to_string(UseSource s) { return s == UseSource::GoldenUses ? "golden-uses" : "corpus-sample"; }
std::string to_string(PairSource s) { return s == PairSource::GoldenPairs ? "golden-pairs" : "generated"; }

std::string to_string(Scorer s) {
  switch (s) {
    case Scorer::Gold: return "gold";
    case Scorer::Embedding: return "embedding";
    case Scorer::ExternalFile: return "external-file";
  }
  return "gold";
}

std::string to_string(Measure m) {
  switch (m) {
    case Measure::None: return "none";
    case Measure::Jsd: return "jsd";
    case Measure::Binary: return "binary";
    case Measure::CompareClusters: return "compare-clusters";
    case Measure::Apd: return "apd";
    case Measure::ApdThresholded: return "apd-thresholded";
    case Measure::Cos: return "cos";
    case Measure::DiaSense: return "diasense";
  }
  return "none";
}

std::string to_string(SplitSelection s) {
  switch (s) {
    case SplitSelection::Train: return "train";
    case SplitSelection::Dev: return "dev";
    case SplitSelection::Test: return "test";
    case SplitSelection::All: return "all";
  }
  return "all";
}

std::string to_string(OrdinalMode m) { return m == OrdinalMode::AggregatedGold ? "aggregated" : "annotators"; }

BenchTask parse_bench_task(const std::string& s) {
  for (auto t : {BenchTask::WicGraded, BenchTask::WicOrdinal, BenchTask::Wsi, BenchTask::LscdGraded,
                 BenchTask::LscdBinary, BenchTask::Compare}) {
    if (to_string(t) == s) return t;
  }
  throw ConfigError("unknown task '" + s + "'");
}

Measure parse_measure(const std::string& s) {
  for (auto m : {Measure::None, Measure::Jsd, Measure::Binary, Measure::CompareClusters, Measure::Apd,
                 Measure::ApdThresholded, Measure::Cos, Measure::DiaSense}) {
    if (to_string(m) == s) return m;
  }
  throw ConfigError("unknown measure '" + s + "'");
}

SplitSelection parse_split_selection(const std::string& s) {
  for (auto v : {SplitSelection::Train, SplitSelection::Dev, SplitSelection::Test, SplitSelection::All}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("unknown split '" + s + "'");
}

bool needs_clustering(Measure m) {
  return m == Measure::Jsd || m == Measure::Binary || m == Measure::CompareClusters;
}

namespace {

const std::set<std::string> kKeys = {"name", "dataset", "split", "task", "uses", "sample_size", "pairs",
                                     "pair_type", "max_pairs", "scorer", "scores", "scores_are_distances",
                                     "embeddings", "pooling", "metric", "thresholds",
                                     "discretize_for_clustering", "clustering", "measure", "binary_M",
                                     "binary_K", "diasense_variant", "include_noise", "drop_gold_noise",
                                     "missing_policy", "ordinal_mode", "seed", "out"};

}  // namespace

RunConfig RunConfig::from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  auto path = [&](const char* key) -> fs::path {
    if (!j.contains(key)) return {};
    fs::path p = j.at(key).get<std::string>();
    return (p.is_absolute() || base_dir.empty()) ? p : base_dir / p;
  };

  RunConfig c;
  try {
    c.name = j.value("name", "");
    c.dataset = path("dataset");
    c.split = parse_split_selection(j.value("split", "all"));
    if (j.contains("task")) c.task = parse_bench_task(j.at("task").get<std::string>());

    const std::string uses = j.value("uses", "golden-uses");
    if (uses == "golden-uses") c.use_source = UseSource::GoldenUses;
    else if (uses == "corpus-sample") c.use_source = UseSource::CorpusSample;
    else throw ConfigError("unknown use source '" + uses + "'");
    c.sample_size = j.value("sample_size", std::size_t{0});

    const std::string pairs = j.value("pairs", "golden-pairs");
    if (pairs == "golden-pairs") c.pair_source = PairSource::GoldenPairs;
    else if (pairs == "generated") c.pair_source = PairSource::Generated;
    else throw ConfigError("unknown pair source '" + pairs + "'");
    c.pair_type = parse_pair_type(j.value("pair_type", "ALL"));
    if (j.contains("max_pairs") && !j.at("max_pairs").is_null()) c.max_pairs = j.at("max_pairs").get<std::size_t>();

    const std::string scorer = j.value("scorer", "gold");
    if (scorer == "gold") c.scorer = Scorer::Gold;
    else if (scorer == "embedding") c.scorer = Scorer::Embedding;
    else if (scorer == "external-file") c.scorer = Scorer::ExternalFile;
    else throw ConfigError("unknown scorer '" + scorer + "'");
    c.scores = path("scores");
    c.scores_are_distances = j.value("scores_are_distances", false);
    c.embeddings = path("embeddings");

    if (j.contains("pooling")) {
      const auto& p = j.at("pooling");
      c.pooling.subword_pooling = parse_subword_pooling(p.value("subword", "mean"));
      c.pooling.layer_aggregation = parse_layer_aggregation(p.value("aggregation", "average"));
      if (p.contains("layers")) c.pooling.layer_selection = p.at("layers").get<std::vector<int>>();
    }
    c.metric = parse_distance_metric(j.value("metric", "cosine"));
    if (j.contains("thresholds") && !j.at("thresholds").is_null()) {
      const auto t = j.at("thresholds").get<std::vector<double>>();
      if (t.size() != 3) throw ConfigError("thresholds must list exactly three values");
      c.thresholds.emplace(t[0], t[1], t[2]);
    }
    c.discretize_for_clustering = j.value("discretize_for_clustering", false);

    if (j.contains("clustering")) {
      const auto& p = j.at("clustering");
      c.clustering.threshold = p.value("threshold", 2.5);
      c.clustering.restarts = p.value("restarts", std::size_t{10});
      c.clustering.max_iterations = p.value("max_iterations", std::size_t{200});
      c.clustering.allow_singletons = p.value("allow_singletons", true);
    }
    c.measure = parse_measure(j.value("measure", "none"));
    if (j.contains("binary_M")) c.binary_min_attestations = j.at("binary_M").get<int>();
    if (j.contains("binary_K")) c.binary_max_attestations = j.at("binary_K").get<int>();
    c.diasense_variant = parse_diasense_variant(j.value("diasense_variant", "ratio"));
    c.include_noise = j.value("include_noise", false);
    c.drop_gold_noise = j.value("drop_gold_noise", true);
    c.missing_policy = parse_missing_policy(j.value("missing_policy", "error"));
    const std::string mode = j.value("ordinal_mode", "aggregated");
    if (mode == "aggregated") c.ordinal_mode = OrdinalMode::AggregatedGold;
    else if (mode == "annotators") c.ordinal_mode = OrdinalMode::Annotators;
    else throw ConfigError("unknown ordinal mode '" + mode + "'");
    c.seed = j.value("seed", std::uint64_t{0});
    c.out = path("out");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path());
}

json RunConfig::to_json() const {
  json j;
  j["name"] = name;
  j["dataset"] = dataset.generic_string();
  j["split"] = to_string(split);
  j["task"] = to_string(task);
  j["uses"] = to_string(use_source);
  j["sample_size"] = sample_size;
  j["pairs"] = to_string(pair_source);
  j["pair_type"] = to_string(pair_type);
  j["max_pairs"] = max_pairs ? json(*max_pairs) : json(nullptr);
  j["scorer"] = to_string(scorer);
  j["scores"] = scores.generic_string();
  j["scores_are_distances"] = scores_are_distances;
  j["embeddings"] = embeddings.generic_string();
  j["pooling"] = {{"subword", to_string(pooling.subword_pooling)},
                  {"layers", pooling.layer_selection},
                  {"aggregation", to_string(pooling.layer_aggregation)}};
  j["metric"] = to_string(metric);
  j["thresholds"] = thresholds ? json({thresholds->t1(), thresholds->t2(), thresholds->t3()}) : json(nullptr);
  j["discretize_for_clustering"] = discretize_for_clustering;
  j["clustering"] = {{"threshold", clustering.threshold},
                     {"restarts", clustering.restarts},
                     {"max_iterations", clustering.max_iterations},
                     {"allow_singletons", clustering.allow_singletons}};
  j["measure"] = to_string(measure);
  if (binary_min_attestations) j["binary_M"] = *binary_min_attestations;
  if (binary_max_attestations) j["binary_K"] = *binary_max_attestations;
  j["diasense_variant"] = to_string(diasense_variant);
  j["include_noise"] = include_noise;
  j["drop_gold_noise"] = drop_gold_noise;
  j["missing_policy"] = to_string(missing_policy);
  j["ordinal_mode"] = to_string(ordinal_mode);
  j["seed"] = seed;
  return j;
}

std::string RunConfig::hash() const {
  const std::string text = to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (dataset.empty()) fail("no dataset manifest given");
  clustering.validate();

  switch (task) {
    case BenchTask::WicGraded:
    case BenchTask::WicOrdinal:
    case BenchTask::Wsi:
      if (measure != Measure::None) fail("task " + to_string(task) + " takes no change measure");
      break;
    case BenchTask::LscdGraded:
      if (measure != Measure::Jsd && measure != Measure::Apd && measure != Measure::ApdThresholded &&
          measure != Measure::Cos && measure != Measure::DiaSense) {
        fail("lscd-graded accepts jsd, apd, apd-thresholded, cos or diasense, not " + to_string(measure));
      }
      break;
    case BenchTask::LscdBinary:
      if (measure != Measure::Binary) fail("lscd-binary requires measure binary");
      break;
    case BenchTask::Compare:
      if (measure != Measure::Apd && measure != Measure::ApdThresholded && measure != Measure::CompareClusters) {
        fail("compare accepts apd, apd-thresholded or compare-clusters, not " + to_string(measure));
      }
      break;
  }
  if (task == BenchTask::WicOrdinal && !thresholds) fail("wic-ordinal requires thresholds");
  if (measure == Measure::ApdThresholded && !thresholds) fail("apd-thresholded requires thresholds");
  if (discretize_for_clustering && !thresholds) fail("discretize_for_clustering requires thresholds");
  if (measure == Measure::Cos && embeddings.empty()) fail("cos requires an embedding store");
  if (measure == Measure::DiaSense && pair_type != PairType::All) fail("diasense requires pair_type ALL");
  if (scorer == Scorer::Embedding && embeddings.empty()) fail("embedding scorer requires an embedding store");
  if (scorer == Scorer::ExternalFile && scores.empty()) fail("external-file scorer requires a scores file");
  if (use_source == UseSource::CorpusSample && sample_size == 0) fail("corpus-sample requires sample_size >= 1");
  if (binary_min_attestations && *binary_min_attestations < 1) fail("binary_M must be >= 1");
  if (binary_max_attestations && *binary_max_attestations < 0) fail("binary_K must be >= 0");
}

}  // namespace lscd
