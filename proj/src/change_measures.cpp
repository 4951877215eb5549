#include "lscd/change_measures.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lscd/error.hpp"

namespace lscd {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void check_distribution(const SenseDistribution& d) {
  double sum = 0;
  for (const auto& [k, p] : d.probability) {
    if (!(p >= 0.0)) throw ContractError("sense distribution has a negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ContractError("sense distribution does not sum to 1");
}

}  // namespace

SenseDistribution sense_distribution(const SenseClustering& c, const std::vector<Usage>& usages,
                                     Grouping grouping, NoisePolicy noise) {
  std::map<int, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& u : usages) {
    if (u.grouping != grouping) continue;
    auto it = c.assignment.find(u.id);
    if (it == c.assignment.end()) continue;
    if (it->second == SenseClustering::kNoise && !noise.include_noise) continue;
    ++counts[it->second];
    ++total;
  }
  if (total == 0) {
    throw DegenerateInputError("no clustered usages in grouping " + std::to_string(static_cast<int>(grouping)));
  }
  SenseDistribution d;
  d.support = total;
  for (const auto& [k, n] : counts) d.probability[k] = static_cast<double>(n) / static_cast<double>(total);
  return d;
}

double jsd_distance(const SenseDistribution& p, const SenseDistribution& q) {
  check_distribution(p);
  check_distribution(q);
  std::set<int> labels;
  for (const auto& [k, v] : p.probability) labels.insert(k);
  for (const auto& [k, v] : q.probability) labels.insert(k);
  double divergence = 0;
  for (int k : labels) {
    const double pk = p.probability.count(k) ? p.probability.at(k) : 0.0;
    const double qk = q.probability.count(k) ? q.probability.at(k) : 0.0;
    const double m = 0.5 * (pk + qk);
    divergence += 0.5 * (xlog2x(pk) + xlog2x(qk)) - xlog2x(m);
  }
  return std::sqrt(std::clamp(divergence, 0.0, 1.0));
}

BinaryChange binary_change(const SenseClustering& c, const std::vector<Usage>& usages, int min_attestations,
                           int max_attestations, NoisePolicy noise) {
  if (min_attestations < 1) throw ConfigError("binary change: M must be >= 1");
  if (max_attestations < 0) throw ConfigError("binary change: K must be >= 0");
  std::map<int, std::pair<int, int>> counts;  // label -> (earlier, later)
  for (const auto& u : usages) {
    auto it = c.assignment.find(u.id);
    if (it == c.assignment.end()) continue;
    if (it->second == SenseClustering::kNoise && !noise.include_noise) continue;
    auto& slot = counts[it->second];
    (u.grouping == Grouping::Earlier ? slot.first : slot.second)++;
  }
  BinaryChange out;
  for (const auto& [label, n] : counts) {
    if (n.second >= min_attestations && n.first <= max_attestations) out.gain = 1;
    if (n.first >= min_attestations && n.second <= max_attestations) out.loss = 1;
  }
  out.binary = out.gain | out.loss;
  return out;
}

double compare_from_clusters(const SenseClustering& c, std::span<const UsagePair> pairs) {
  if (pairs.empty()) throw DegenerateInputError("compare_from_clusters: no pairs");
  std::size_t same = 0;
  for (const auto& p : pairs) {
    auto a = c.assignment.find(p.id1);
    auto b = c.assignment.find(p.id2);
    if (a == c.assignment.end() || b == c.assignment.end()) {
      throw ContractError("compare_from_clusters: pair " + p.id1 + "/" + p.id2 + " not clustered");
    }
    if (a->second == b->second && a->second != SenseClustering::kNoise) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(pairs.size());
}

double apd(std::span<const double> values) {
  if (values.empty()) throw DegenerateInputError("apd: no pair scores");
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double apd(std::span<const PairScore> scores) {
  std::vector<double> v;
  v.reserve(scores.size());
  for (const auto& s : scores) v.push_back(s.score);
  return apd(std::span<const double>(v));
}

double apd_thresholded(std::span<const PairScore> scores, const ThresholdSpec& th) {
  std::vector<double> v;
  v.reserve(scores.size());
  for (const auto& s : scores) v.push_back(discretize(s.score, th));
  return apd(std::span<const double>(v));
}

double cos_prototype(std::span<const Vector> earlier, std::span<const Vector> later, DistanceMetric metric) {
  if (earlier.empty() || later.empty()) throw DegenerateInputError("cos: a period has no usage vectors");
  auto mean = [](std::span<const Vector> vs) {
    Vector m(vs.front().size(), 0.0);
    for (const auto& v : vs) {
      if (v.size() != m.size()) throw ShapeError("cos: usage vectors differ in dimension");
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += v[i];
    }
    for (auto& x : m) x /= static_cast<double>(vs.size());
    return m;
  };
  return vector_distance(mean(earlier), mean(later), metric);
}

std::string to_string(DiaSenseVariant v) { return v == DiaSenseVariant::Ratio ? "ratio" : "difference"; }

DiaSenseVariant parse_diasense_variant(const std::string& s) {
  if (s == "ratio") return DiaSenseVariant::Ratio;
  if (s == "difference") return DiaSenseVariant::Difference;
  throw ConfigError("unknown DiaSense variant '" + s + "'");
}

double diasense(std::span<const double> cross, std::span<const double> within_earlier,
                std::span<const double> within_later, DiaSenseVariant variant) {
  if (cross.empty()) throw DegenerateInputError("diasense: no cross-period pairs");
  const double across = apd(cross);
  if (variant == DiaSenseVariant::Difference) {
    // Periods without within-period pairs drop out of the polysemy term.
    double polysemy = 0;
    int periods = 0;
    for (auto within : {within_earlier, within_later}) {
      if (!within.empty()) {
        polysemy += apd(within);
        ++periods;
      }
    }
    return periods ? across - polysemy / periods : across;
  }
  if (within_earlier.empty() || within_later.empty()) {
    throw DegenerateInputError("diasense: a period has no within-period pairs");
  }
  const double polysemy = 0.5 * (apd(within_earlier) + apd(within_later));
  if (polysemy == 0.0) throw DegenerateInputError("diasense: zero within-period distance");
  return across / polysemy;
}

}  // namespace lscd
