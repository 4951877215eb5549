#include "lscd/wic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "lscd/error.hpp"
#include "lscd/rng.hpp"
#include "lscd/tsv.hpp"

namespace lscd {

std::string to_string(ScoreSource s) {
  switch (s) {
    case ScoreSource::Embedding: return "embedding-distance";
    case ScoreSource::External: return "external";
    case ScoreSource::Gold: return "gold";
  }
  return "external";
}

ThresholdSpec::ThresholdSpec(double t1, double t2, double t3) : t_{t1, t2, t3} {
  if (!(t1 < t2 && t2 < t3)) throw ConfigError("thresholds must satisfy t1 < t2 < t3");
}

PairType classify_pair(const Usage& a, const Usage& b) {
  if (a.grouping != b.grouping) return PairType::Compare;
  return a.grouping == Grouping::Earlier ? PairType::Earlier : PairType::Later;
}

std::vector<UsagePair> generate_pairs(const std::vector<Usage>& usages, PairType type,
                                      std::optional<std::size_t> max_pairs, std::uint64_t seed) {
  std::vector<const Usage*> sorted;
  for (const auto& u : usages) sorted.push_back(&u);
  std::sort(sorted.begin(), sorted.end(), [](const Usage* a, const Usage* b) { return a->id < b->id; });
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const Usage* a, const Usage* b) { return a->id == b->id; }),
               sorted.end());
  for (const auto* u : sorted) {
    if (u->lemma != sorted.front()->lemma) throw FormatError("generate_pairs: usages span multiple lemmas");
  }

  std::vector<UsagePair> all;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const PairType rel = classify_pair(*sorted[i], *sorted[j]);
      if (type == PairType::All || rel == type) all.push_back({sorted[i]->id, sorted[j]->id, rel});
    }
  }
  if (!max_pairs || *max_pairs >= all.size()) return all;

  Rng rng(seed);
  auto picked = sample_indices(rng, all.size(), *max_pairs);
  std::sort(picked.begin(), picked.end());
  std::vector<UsagePair> out;
  out.reserve(picked.size());
  for (auto i : picked) out.push_back(all[i]);
  return out;
}

std::string to_string(DistanceMetric m) {
  switch (m) {
    case DistanceMetric::Cosine: return "cosine";
    case DistanceMetric::Euclidean: return "euclidean";
    case DistanceMetric::Manhattan: return "manhattan";
  }
  return "cosine";
}

DistanceMetric parse_distance_metric(const std::string& s) {
  if (s == "cosine") return DistanceMetric::Cosine;
  if (s == "euclidean") return DistanceMetric::Euclidean;
  if (s == "manhattan") return DistanceMetric::Manhattan;
  throw ConfigError("unknown distance metric '" + s + "'");
}

double vector_distance(std::span<const double> a, std::span<const double> b, DistanceMetric metric) {
  if (a.size() != b.size()) {
    throw ShapeError("vector_distance: dimensions " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  }
  switch (metric) {
    case DistanceMetric::Cosine: {
      double dot = 0, na = 0, nb = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
      }
      if (na == 0.0 || nb == 0.0) throw DegenerateInputError("cosine distance of a zero vector");
      const double cos = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
      return 1.0 - cos;
    }
    case DistanceMetric::Euclidean: {
      double s = 0;
      for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(s);
    }
    case DistanceMetric::Manhattan: {
      double s = 0;
      for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
      return s;
    }
  }
  return 0.0;
}

double distance_to_similarity(double distance, DistanceMetric metric) {
  return metric == DistanceMetric::Cosine ? 1.0 - distance : -distance;
}

std::vector<PairScore> score_pairs_from_embeddings(std::span<const UsagePair> pairs,
                                                   const EmbeddingStore& store, const PoolingSpec& spec,
                                                   DistanceMetric metric) {
  std::set<std::string> missing;
  for (const auto& p : pairs) {
    if (!store.count(p.id1)) missing.insert(p.id1);
    if (!store.count(p.id2)) missing.insert(p.id2);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw FormatError("embedding store lacks usage ids: " + list);
  }
  std::map<std::string, Vector> cache;
  auto vec = [&](const std::string& id) -> const Vector& {
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, usage_vector(store.at(id), spec)).first;
    return it->second;
  };
  std::vector<PairScore> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const double d = vector_distance(vec(p.id1), vec(p.id2), metric);
    out.push_back({p, distance_to_similarity(d, metric), ScoreSource::Embedding});
  }
  return out;
}

ExternalScores load_external_scores(const std::filesystem::path& path, bool scores_are_distances) {
  const auto t = tsv::read(path);
  ExternalScores out;
  if (t.header.empty()) return out;
  const auto c1 = t.require("identifier1");
  const auto c2 = t.require("identifier2");
  const auto cs = t.require("score");
  std::map<PairKey, std::vector<double>> grouped;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    auto v = tsv::parse_double(row[cs]);
    if (!v || !std::isfinite(*v)) {
      throw FormatError(path.string() + ": row " + std::to_string(r + 2) + ": score '" + row[cs] +
                        "' is not a finite number");
    }
    if (row[c1] == row[c2]) {
      throw FormatError(path.string() + ": row " + std::to_string(r + 2) + ": pair of identical ids");
    }
    grouped[canonical_pair(row[c1], row[c2])].push_back(scores_are_distances ? -*v : *v);
  }
  for (const auto& [key, values] : grouped) {
    double sum = 0;
    for (double v : values) sum += v;
    if (values.size() > 1) {
      out.warnings.push_back("pair " + key.first + "/" + key.second + " scored " +
                             std::to_string(values.size()) + " times; using the mean");
    }
    out.scores.push_back({{key.first, key.second, PairType::All},
                          sum / static_cast<double>(values.size()),
                          ScoreSource::External});
  }
  return out;
}

int discretize(double score, const ThresholdSpec& th) {
  if (score < th.t1()) return 1;
  if (score < th.t2()) return 2;
  if (score < th.t3()) return 3;
  return 4;
}

}  // namespace lscd
