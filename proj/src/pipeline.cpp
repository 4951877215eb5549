#include "lscd/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <set>
#include <thread>

#include "lscd/error.hpp"
#include "lscd/rng.hpp"

namespace lscd {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t lemma_seed(std::uint64_t seed, const std::string& lemma) { return derive_seed(seed, fnv1a(lemma)); }

template <typename F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t threads = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

Task dataset_task(BenchTask t) {
  switch (t) {
    case BenchTask::WicGraded:
    case BenchTask::WicOrdinal: return Task::WiC;
    case BenchTask::Wsi: return Task::WSI;
    case BenchTask::LscdGraded: return Task::LscdGraded;
    case BenchTask::LscdBinary: return Task::LscdBinary;
    case BenchTask::Compare: return Task::Compare;
  }
  return Task::WiC;
}

bool similarity_oriented(Measure m) {
  return m == Measure::Apd || m == Measure::ApdThresholded || m == Measure::CompareClusters;
}

std::string pair_item(const std::string& lemma, const PairKey& k) { return lemma + ":" + k.first + "|" + k.second; }

struct LemmaResult {
  const LemmaData* data = nullptr;
  std::vector<Usage> uses;
  std::map<std::string, const Usage*> by_id;
  WordUsageGraph gold_graph;
  std::vector<PairScore> scores;
  std::size_t unscored = 0;
  std::optional<SenseClustering> clusters;
  std::optional<double> value;
  std::optional<BinaryChange> binary;
  std::optional<double> ari;
  std::string failure;  // measure-level failure, prediction is MISSING
  std::exception_ptr fatal;
};

class Runner {
 public:
  Runner(const RunConfig& cfg, const Dataset& ds) : cfg_(cfg), ds_(ds) {}

  EvalReport run() {
    check_compatibility();
    select_lemmas();
    load_inputs();

    results_.resize(lemmas_.size());
    parallel_for(lemmas_.size(), [this](std::size_t i) {
      auto& r = results_[i];
      r.data = lemmas_[i];
      try {
        process(r);
      } catch (...) {
        r.fatal = std::current_exception();
      }
    });
    for (const auto& r : results_) {
      if (r.fatal) std::rethrow_exception(r.fatal);
    }

    report_.config_name = cfg_.name;
    report_.config_hash = cfg_.hash();
    report_.seed = cfg_.seed;
    report_.dataset = ds_.manifest.name;
    report_.dataset_version = ds_.manifest.version;
    report_.task = to_string(cfg_.task);
    report_.measure = to_string(cfg_.measure);
    for (const auto& w : load_warnings_) report_.warnings.push_back(w);
    for (const auto& r : results_) {
      if (!r.failure.empty()) report_.warnings.push_back("lemma " + r.data->lemma + ": " + r.failure);
      if (r.unscored) {
        report_.warnings.push_back("lemma " + r.data->lemma + ": " + std::to_string(r.unscored) +
                                   " pair(s) had no score and were skipped");
      }
    }
    evaluate();
    return std::move(report_);
  }

 private:
  void check_compatibility() {
    cfg_.validate();
    const Task needed = dataset_task(cfg_.task);
    if (!ds_.manifest.tasks.count(needed)) {
      throw ConfigError("dataset " + ds_.manifest.name + " does not support " + to_string(needed) +
                        " evaluation (declared: " + declared_tasks() + ")");
    }
    if ((cfg_.scorer == Scorer::Gold || cfg_.task == BenchTask::WicGraded || cfg_.task == BenchTask::WicOrdinal) &&
        !ds_.manifest.tasks.count(Task::WiC)) {
      throw ConfigError("dataset " + ds_.manifest.name + " has no judgments for gold scores");
    }
  }

  std::string declared_tasks() const {
    std::string s;
    for (Task t : ds_.manifest.tasks) s += (s.empty() ? "" : ", ") + to_string(t);
    return s;
  }

  void select_lemmas() {
    if (cfg_.split == SplitSelection::All) {
      for (const auto& l : ds_.lemmas) lemmas_.push_back(&l);
      return;
    }
    if (!ds_.split) throw ConfigError("split '" + to_string(cfg_.split) + "' requested but dataset has no split file");
    const SplitName want = cfg_.split == SplitSelection::Train ? SplitName::Train
                           : cfg_.split == SplitSelection::Dev ? SplitName::Dev
                                                               : SplitName::Test;
    for (const auto& l : ds_.lemmas) {
      auto it = ds_.split->assignment.find(l.lemma);
      if (it != ds_.split->assignment.end() && it->second == want) lemmas_.push_back(&l);
    }
  }

  void load_inputs() {
    if (cfg_.scorer == Scorer::ExternalFile) {
      auto ext = load_external_scores(cfg_.scores, cfg_.scores_are_distances);
      for (auto& s : ext.scores) external_.emplace(s.pair.key(), s.score);
      load_warnings_ = std::move(ext.warnings);
    }
    if (cfg_.scorer == Scorer::Embedding || cfg_.measure == Measure::Cos) store_ = read_store(cfg_.embeddings);
  }

  void process(LemmaResult& r) {
    const auto& d = *r.data;
    const std::uint64_t seed = lemma_seed(cfg_.seed, d.lemma);

    if (cfg_.use_source == UseSource::GoldenUses) {
      r.uses = d.usages;
    } else {
      for (Grouping g : {Grouping::Earlier, Grouping::Later}) {
        std::vector<Usage> group;
        for (const auto& u : d.usages) {
          if (u.grouping == g) group.push_back(u);
        }
        auto picked = sample_uses(group, cfg_.sample_size, derive_seed(seed, static_cast<std::uint64_t>(g)));
        r.uses.insert(r.uses.end(), picked.begin(), picked.end());
      }
    }
    std::sort(r.uses.begin(), r.uses.end(), [](const Usage& a, const Usage& b) { return a.id < b.id; });
    for (const auto& u : r.uses) r.by_id.emplace(u.id, &u);

    std::vector<Judgment> judgments;
    for (const auto& j : d.judgments) {
      if (r.by_id.count(j.id1) && r.by_id.count(j.id2)) judgments.push_back(j);
    }
    r.gold_graph = build_graph(r.uses, judgments, ds_.manifest.aggregation);

    std::vector<UsagePair> pairs;
    if (cfg_.pair_source == PairSource::GoldenPairs) {
      for (const auto& [key, e] : r.gold_graph.edges()) {
        const PairType rel = relation(r, key);
        if (cfg_.pair_type == PairType::All || cfg_.pair_type == rel) pairs.push_back({key.first, key.second, rel});
      }
      if (cfg_.max_pairs && *cfg_.max_pairs < pairs.size()) {
        Rng rng(seed);
        auto idx = sample_indices(rng, pairs.size(), *cfg_.max_pairs);
        std::sort(idx.begin(), idx.end());
        std::vector<UsagePair> kept;
        for (auto i : idx) kept.push_back(pairs[i]);
        pairs = std::move(kept);
      }
    } else {
      pairs = generate_pairs(r.uses, cfg_.pair_type, cfg_.max_pairs, seed);
      for (auto& p : pairs) p.type = relation(r, p.key());
    }

    score(r, pairs);

    if (cfg_.task == BenchTask::Wsi || needs_clustering(cfg_.measure)) {
      std::vector<PairScore> weights = r.scores;
      if (cfg_.discretize_for_clustering) {
        for (auto& w : weights) w.score = discretize(w.score, *cfg_.thresholds);
      }
      ClusteringParams params = cfg_.clustering;
      params.seed = seed;
      params.threads = 1;
      if (r.uses.empty()) {
        r.failure = "no usages to cluster";
      } else {
        r.clusters = correlation_cluster(scored_graph(d.lemma, r.uses, weights), params);
      }
    }

    if (cfg_.task == BenchTask::Wsi) {
      evaluate_wsi_lemma(r);
    } else if (cfg_.measure != Measure::None && r.failure.empty()) {
      try {
        measure(r);
      } catch (const DegenerateInputError& e) {
        r.failure = e.what();
      } catch (const UndefinedMetricError& e) {
        r.failure = e.what();
      }
    }
  }

  PairType relation(const LemmaResult& r, const PairKey& key) const {
    return classify_pair(*r.by_id.at(key.first), *r.by_id.at(key.second));
  }

  void score(LemmaResult& r, const std::vector<UsagePair>& pairs) {
    switch (cfg_.scorer) {
      case Scorer::Gold:
        for (const auto& p : pairs) {
          auto it = r.gold_graph.edges().find(p.key());
          if (it == r.gold_graph.edges().end()) {
            ++r.unscored;
          } else {
            r.scores.push_back({p, it->second.weight, ScoreSource::Gold});
          }
        }
        break;
      case Scorer::ExternalFile:
        for (const auto& p : pairs) {
          auto it = external_.find(p.key());
          if (it == external_.end()) {
            ++r.unscored;
          } else {
            r.scores.push_back({p, it->second, ScoreSource::External});
          }
        }
        break;
      case Scorer::Embedding:
        r.scores = score_pairs_from_embeddings(pairs, store_, cfg_.pooling, cfg_.metric);
        break;
    }
  }

  // Converts a similarity-oriented score back to a non-negative distance.
  double to_distance(double similarity) const {
    switch (cfg_.scorer) {
      case Scorer::Embedding: return cfg_.metric == DistanceMetric::Cosine ? 1.0 - similarity : -similarity;
      case Scorer::ExternalFile: return cfg_.scores_are_distances ? -similarity : 1.0 - similarity;
      case Scorer::Gold: return 4.0 - similarity;
    }
    return -similarity;
  }

  std::vector<PairScore> scores_of(const LemmaResult& r, PairType type) const {
    std::vector<PairScore> out;
    for (const auto& s : r.scores) {
      if (s.pair.type == type) out.push_back(s);
    }
    return out;
  }

  void measure(LemmaResult& r) {
    const NoisePolicy noise{cfg_.include_noise};
    switch (cfg_.measure) {
      case Measure::None:
        break;
      case Measure::Jsd:
        r.value = jsd_distance(sense_distribution(*r.clusters, r.uses, Grouping::Earlier, noise),
                               sense_distribution(*r.clusters, r.uses, Grouping::Later, noise));
        break;
      case Measure::Binary:
        r.binary = binary_change(*r.clusters, r.uses,
                                 cfg_.binary_min_attestations.value_or(ds_.manifest.binary_min_attestations),
                                 cfg_.binary_max_attestations.value_or(ds_.manifest.binary_max_attestations), noise);
        break;
      case Measure::CompareClusters: {
        const auto pairs = generate_pairs(r.uses, PairType::Compare, std::nullopt, 0);
        r.value = compare_from_clusters(*r.clusters, pairs);
        break;
      }
      case Measure::Apd:
        r.value = apd(scores_of(r, PairType::Compare));
        break;
      case Measure::ApdThresholded:
        r.value = apd_thresholded(scores_of(r, PairType::Compare), *cfg_.thresholds);
        break;
      case Measure::Cos: {
        std::vector<Vector> earlier, later;
        std::set<std::string> missing;
        for (const auto& u : r.uses) {
          auto it = store_.find(u.id);
          if (it == store_.end()) {
            missing.insert(u.id);
            continue;
          }
          (u.grouping == Grouping::Earlier ? earlier : later).push_back(usage_vector(it->second, cfg_.pooling));
        }
        if (!missing.empty()) {
          std::string list;
          for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
          throw FormatError("embedding store lacks usage ids: " + list);
        }
        r.value = cos_prototype(earlier, later, cfg_.metric);
        break;
      }
      case Measure::DiaSense: {
        std::vector<double> cross, within1, within2;
        for (const auto& s : r.scores) {
          const double dist = to_distance(s.score);
          if (s.pair.type == PairType::Compare) cross.push_back(dist);
          else if (s.pair.type == PairType::Earlier) within1.push_back(dist);
          else within2.push_back(dist);
        }
        r.value = diasense(cross, within1, within2, cfg_.diasense_variant);
        break;
      }
    }
  }

  void evaluate_wsi_lemma(LemmaResult& r) {
    if (!r.clusters) return;
    if (!r.data->clusters) {
      r.failure = "no gold clusters";
      return;
    }
    SenseClustering gold, pred;
    for (const auto& [id, label] : r.data->clusters->assignment) {
      auto it = r.clusters->assignment.find(id);
      if (it == r.clusters->assignment.end()) continue;
      gold.assignment.emplace(id, label);
      pred.assignment.emplace(id, it->second);
    }
    try {
      r.ari = adjusted_rand_index(gold, pred, cfg_.drop_gold_noise);
    } catch (const UndefinedMetricError& e) {
      r.failure = e.what();
    }
  }

  // Appends correlation metrics; undefined metrics are recorded without a value under drop policy.
  void correlations(const std::string& suffix, const std::map<std::string, double>& gold,
                    const std::map<std::string, std::optional<double>>& pred, bool with_pearson = true) {
    const PairedSeries s = align(gold, pred, cfg_.missing_policy);
    auto add = [&](const std::string& name, auto metric) {
      MetricResult m{name + suffix, std::nullopt, s.coverage(), s.ids.size(), ""};
      try {
        m.value = metric(s).value;
      } catch (const UndefinedMetricError& e) {
        if (cfg_.missing_policy == MissingPolicy::Error) throw;
        m.note = e.what();
      }
      report_.metrics.push_back(m);
    };
    add("spearman", [](const PairedSeries& x) { return spearman(x); });
    if (with_pearson) add("pearson", [](const PairedSeries& x) { return pearson(x); });
  }

  void evaluate() {
    switch (cfg_.task) {
      case BenchTask::WicGraded: evaluate_wic_graded(); break;
      case BenchTask::WicOrdinal: evaluate_wic_ordinal(); break;
      case BenchTask::Wsi: evaluate_wsi(); break;
      case BenchTask::LscdGraded:
      case BenchTask::Compare: evaluate_lemma_scores(); break;
      case BenchTask::LscdBinary: evaluate_binary(); break;
    }
  }

  bool gold_pair_selected(PairType type) const {
    return cfg_.pair_type == PairType::All || cfg_.pair_type == type;
  }

  void evaluate_wic_graded() {
    std::map<std::string, double> gold;
    std::map<std::string, std::optional<double>> pred;
    std::map<PairType, std::pair<std::map<std::string, double>, std::map<std::string, std::optional<double>>>> by_type;
    for (const auto& r : results_) {
      for (const auto& [key, e] : r.gold_graph.edges()) {
        const PairType t = relation(r, key);
        if (!gold_pair_selected(t)) continue;
        gold[pair_item(r.data->lemma, key)] = e.weight;
        by_type[t].first[pair_item(r.data->lemma, key)] = e.weight;
      }
      for (const auto& s : r.scores) {
        const auto item = pair_item(r.data->lemma, s.pair.key());
        pred[item] = s.score;
        by_type[s.pair.type].second[item] = s.score;
        report_.predictions.push_back({item, "wic-score", s.score, "similarity"});
      }
    }
    correlations("", gold, pred);
    const MissingPolicy saved = cfg_.missing_policy;
    cfg_.missing_policy = MissingPolicy::DropWithCoverage;
    for (PairType t : {PairType::Compare, PairType::Earlier, PairType::Later}) {
      if (by_type.count(t)) correlations("_" + to_string(t), by_type[t].first, by_type[t].second);
    }
    cfg_.missing_policy = saved;
  }

  void evaluate_wic_ordinal() {
    std::map<std::string, double> gold;
    std::map<std::string, std::optional<double>> pred;
    std::vector<std::vector<std::optional<double>>> units;
    std::set<std::string> annotators;
    for (const auto& r : results_) {
      for (const auto& j : r.data->judgments) annotators.insert(j.annotator);
    }
    std::size_t missing = 0;
    for (const auto& r : results_) {
      std::map<PairKey, double> ordinal;
      for (const auto& s : r.scores) {
        const double v = discretize(s.score, *cfg_.thresholds);
        ordinal[s.pair.key()] = v;
        report_.predictions.push_back({pair_item(r.data->lemma, s.pair.key()), "wic-ordinal", v, "label"});
      }
      std::map<PairKey, std::map<std::string, double>> by_annotator;
      for (const auto& j : r.data->judgments) {
        if (j.rating && r.by_id.count(j.id1) && r.by_id.count(j.id2)) {
          by_annotator[{j.id1, j.id2}].emplace(j.annotator, *j.rating);
        }
      }
      for (const auto& [key, e] : r.gold_graph.edges()) {
        if (!gold_pair_selected(relation(r, key))) continue;
        const auto item = pair_item(r.data->lemma, key);
        gold[item] = e.weight;
        auto it = ordinal.find(key);
        if (it == ordinal.end()) {
          ++missing;
          continue;
        }
        pred[item] = it->second;
        std::vector<std::optional<double>> unit;
        if (cfg_.ordinal_mode == OrdinalMode::AggregatedGold) {
          unit.push_back(e.weight);
        } else {
          const auto& ratings = by_annotator[key];
          for (const auto& a : annotators) {
            auto ra = ratings.find(a);
            unit.push_back(ra == ratings.end() ? std::nullopt : std::optional<double>(ra->second));
          }
        }
        unit.push_back(it->second);
        units.push_back(std::move(unit));
      }
    }
    if (missing && cfg_.missing_policy == MissingPolicy::Error) {
      throw UndefinedMetricError(std::to_string(missing) + " gold pair(s) lack predictions");
    }
    MetricResult alpha{"krippendorff_alpha", std::nullopt,
                       gold.empty() ? 0.0 : static_cast<double>(units.size()) / static_cast<double>(gold.size()),
                       units.size(), to_string(cfg_.ordinal_mode)};
    try {
      alpha.value = krippendorff_alpha_ordinal(units);
    } catch (const UndefinedMetricError& e) {
      if (cfg_.missing_policy == MissingPolicy::Error) throw;
      alpha.note = e.what();
    }
    report_.metrics.push_back(alpha);
    correlations("", gold, pred, false);
  }

  void evaluate_wsi() {
    double sum = 0;
    std::size_t defined = 0;
    for (const auto& r : results_) {
      report_.predictions.push_back({r.data->lemma, "ari", r.ari, "agreement"});
      if (r.clusters) report_.clusterings.emplace(r.data->lemma, *r.clusters);
      if (r.ari) {
        sum += *r.ari;
        ++defined;
      }
    }
    const std::size_t total = results_.size();
    if (defined < total && cfg_.missing_policy == MissingPolicy::Error) {
      throw UndefinedMetricError(std::to_string(total - defined) + " lemma(s) have no ARI");
    }
    MetricResult m{"ari_mean", std::nullopt, total ? static_cast<double>(defined) / static_cast<double>(total) : 0.0,
                   defined, ""};
    if (defined) m.value = sum / static_cast<double>(defined);
    else m.note = "no lemma with a defined ARI";
    report_.metrics.push_back(m);
  }

  void evaluate_lemma_scores() {
    const bool graded = cfg_.task == BenchTask::LscdGraded;
    const bool flip = graded && similarity_oriented(cfg_.measure);
    std::map<std::string, double> gold;
    std::map<std::string, std::optional<double>> pred;
    for (const auto& r : results_) {
      const auto& lemma = r.data->lemma;
      report_.predictions.push_back({lemma, to_string(cfg_.measure), r.value,
                                     similarity_oriented(cfg_.measure) ? "similarity" : "distance"});
      if (r.clusters) report_.clusterings.emplace(lemma, *r.clusters);
      auto g = ds_.gold.find(lemma);
      if (g == ds_.gold.end()) continue;
      const auto& label = graded ? g->second.change_graded : g->second.compare;
      if (!label) continue;
      gold[lemma] = *label;
      pred[lemma] = r.value ? std::optional<double>(flip ? -*r.value : *r.value) : std::nullopt;
    }
    const std::size_t before = report_.metrics.size();
    correlations("", gold, pred);
    if (flip) {
      for (std::size_t i = before; i < report_.metrics.size(); ++i) {
        report_.metrics[i].note += report_.metrics[i].note.empty() ? "" : "; ";
        report_.metrics[i].note += "similarity predictions negated to rank change";
      }
    }
  }

  void evaluate_binary() {
    struct Column {
      const char* name;
      std::optional<int> GoldLabels::*gold;
      int BinaryChange::*pred;
    };
    const Column columns[] = {{"f1", &GoldLabels::change_binary, &BinaryChange::binary},
                              {"f1_gain", &GoldLabels::change_binary_gain, &BinaryChange::gain},
                              {"f1_loss", &GoldLabels::change_binary_loss, &BinaryChange::loss}};
    for (const auto& r : results_) {
      if (r.clusters) report_.clusterings.emplace(r.data->lemma, *r.clusters);
      auto value = [&](int BinaryChange::*field) {
        return r.binary ? std::optional<double>((*r.binary).*field) : std::nullopt;
      };
      report_.predictions.push_back({r.data->lemma, "binary", value(&BinaryChange::binary), "label"});
      report_.predictions.push_back({r.data->lemma, "binary_gain", value(&BinaryChange::gain), "label"});
      report_.predictions.push_back({r.data->lemma, "binary_loss", value(&BinaryChange::loss), "label"});
    }
    for (const auto& col : columns) {
      std::map<std::string, double> gold;
      std::map<std::string, std::optional<double>> pred;
      for (const auto& r : results_) {
        auto g = ds_.gold.find(r.data->lemma);
        if (g == ds_.gold.end() || !(g->second.*col.gold)) continue;
        gold[r.data->lemma] = *(g->second.*col.gold);
        pred[r.data->lemma] = r.binary ? std::optional<double>((*r.binary).*col.pred) : std::nullopt;
      }
      if (gold.empty() && std::string(col.name) != "f1") continue;
      const PairedSeries s = align(gold, pred, cfg_.missing_policy);
      const std::string name = col.name;
      if (s.ids.empty()) {
        report_.metrics.push_back({name, std::nullopt, s.coverage(), 0, "no aligned lemmas"});
        continue;
      }
      std::vector<int> gi, pi;
      for (std::size_t i = 0; i < s.ids.size(); ++i) {
        gi.push_back(static_cast<int>(s.gold[i]));
        pi.push_back(static_cast<int>(s.pred[i]));
      }
      const F1Result f = f1_binary(gi, pi);
      std::string note = "tp=" + std::to_string(f.tp) + " fp=" + std::to_string(f.fp) + " fn=" + std::to_string(f.fn) +
                         " tn=" + std::to_string(f.tn);
      if (f.positive_unrepresented) note += "; positive class unrepresented";
      if (f.negative_unrepresented) note += "; negative class unrepresented";
      report_.metrics.push_back({name, f.f1_positive, s.coverage(), s.ids.size(), note});
      if (name == "f1") {
        report_.metrics.push_back({"macro_f1", f.macro_f1, s.coverage(), s.ids.size(), ""});
        report_.metrics.push_back({"precision", f.precision, s.coverage(), s.ids.size(), ""});
        report_.metrics.push_back({"recall", f.recall, s.coverage(), s.ids.size(), ""});
      }
    }
  }

  RunConfig cfg_;
  const Dataset& ds_;
  std::vector<const LemmaData*> lemmas_;
  std::vector<LemmaResult> results_;
  std::map<PairKey, double> external_;
  std::vector<std::string> load_warnings_;
  EmbeddingStore store_;
  EvalReport report_;
};

}  // namespace

const MetricResult* EvalReport::metric(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

std::vector<Usage> sample_uses(const std::vector<Usage>& usages, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("sample_uses: n must be >= 1");
  std::vector<Usage> sorted = usages;
  std::sort(sorted.begin(), sorted.end(), [](const Usage& a, const Usage& b) { return a.id < b.id; });
  if (n >= sorted.size()) return sorted;
  Rng rng(seed);
  auto idx = sample_indices(rng, sorted.size(), n);
  std::sort(idx.begin(), idx.end());
  std::vector<Usage> out;
  out.reserve(n);
  for (auto i : idx) out.push_back(sorted[i]);
  return out;
}

EvalReport run(const RunConfig& config, const Dataset& dataset) {
  const auto start = std::chrono::steady_clock::now();
  Runner runner(config, dataset);
  EvalReport report = runner.run();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

EvalReport run(const RunConfig& config) {
  config.validate();
  return run(config, load_dataset(config.dataset));
}

}  // namespace lscd
