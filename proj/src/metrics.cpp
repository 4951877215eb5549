#include "lscd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lscd/error.hpp"

namespace lscd {

std::string to_string(MissingPolicy p) { return p == MissingPolicy::Error ? "error" : "drop-with-coverage"; }

MissingPolicy parse_missing_policy(const std::string& s) {
  if (s == "error") return MissingPolicy::Error;
  if (s == "drop-with-coverage") return MissingPolicy::DropWithCoverage;
  throw ConfigError("unknown missing policy '" + s + "'");
}

PairedSeries align(const std::map<std::string, double>& gold,
                   const std::map<std::string, std::optional<double>>& pred, MissingPolicy policy) {
  PairedSeries s;
  s.total_gold = gold.size();
  std::vector<std::string> missing;
  for (const auto& [id, g] : gold) {
    auto it = pred.find(id);
    if (it == pred.end() || !it->second) {
      missing.push_back(id);
      continue;
    }
    s.ids.push_back(id);
    s.gold.push_back(g);
    s.pred.push_back(*it->second);
  }
  if (!missing.empty() && policy == MissingPolicy::Error) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) list += (i ? ", " : "") + missing[i];
    if (missing.size() > 20) list += ", ...";
    throw UndefinedMetricError(std::to_string(missing.size()) + " gold item(s) lack predictions: " + list);
  }
  return s;
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

void check_series(std::span<const double> gold, std::span<const double> pred, const char* metric) {
  if (gold.size() != pred.size()) throw ContractError(std::string(metric) + ": series lengths differ");
  if (gold.size() < 2) {
    throw UndefinedMetricError(std::string(metric) + ": needs at least 2 aligned items, got " +
                               std::to_string(gold.size()));
  }
  const bool cg = constant(gold), cp = constant(pred);
  if (cg || cp) {
    throw UndefinedMetricError(std::string(metric) + ": undefined for a constant " +
                               (cg && cp ? "gold and prediction series" : cg ? "gold series" : "prediction series"));
  }
}

double product_moment(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_series(x, y, "pearson");
  return product_moment(x, y);
}

Correlation pearson(const PairedSeries& s) { return {pearson(s.gold, s.pred), s.coverage()}; }

Correlation spearman(const PairedSeries& s) {
  check_series(s.gold, s.pred, "spearman");
  const auto rg = fractional_ranks(s.gold);
  const auto rp = fractional_ranks(s.pred);
  return {product_moment(rg, rp), s.coverage()};
}

double krippendorff_alpha_ordinal(const std::vector<std::vector<std::optional<double>>>& units) {
  std::set<double> values;
  for (const auto& u : units) {
    for (const auto& v : u) {
      if (v) values.insert(*v);
    }
  }
  const std::vector<double> cats(values.begin(), values.end());
  const std::size_t k = cats.size();
  auto index = [&](double v) {
    return static_cast<std::size_t>(std::lower_bound(cats.begin(), cats.end(), v) - cats.begin());
  };

  // Coincidence matrix over pairable values (units with >= 2 values).
  std::vector<std::vector<double>> o(k, std::vector<double>(k, 0.0));
  std::size_t pairable_units = 0;
  for (const auto& u : units) {
    std::vector<std::size_t> counts(k, 0);
    std::size_t m = 0;
    for (const auto& v : u) {
      if (v) {
        ++counts[index(*v)];
        ++m;
      }
    }
    if (m < 2) continue;
    ++pairable_units;
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t d = 0; d < k; ++d) {
        const double pairs = c == d ? static_cast<double>(counts[c]) * (counts[c] - 1.0)
                                    : static_cast<double>(counts[c]) * counts[d];
        o[c][d] += pairs / static_cast<double>(m - 1);
      }
    }
  }
  std::vector<double> n_c(k, 0.0);
  double n = 0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) n_c[c] += o[c][d];
    n += n_c[c];
  }
  if (pairable_units < 1 || n < 2) {
    throw UndefinedMetricError("krippendorff alpha: fewer than 2 pairable values");
  }
  if (k < 2) return 1.0;

  auto delta2 = [&](std::size_t c, std::size_t d) {
    if (c > d) std::swap(c, d);
    double s = 0;
    for (std::size_t g = c; g <= d; ++g) s += n_c[g];
    s -= (n_c[c] + n_c[d]) / 2.0;
    return s * s;
  };
  double observed = 0, expected = 0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) {
      const double w = delta2(c, d);
      observed += o[c][d] * w;
      expected += n_c[c] * n_c[d] * w;
    }
  }
  if (expected == 0.0) throw UndefinedMetricError("krippendorff alpha: no expected disagreement");
  return 1.0 - (n - 1.0) * observed / expected;
}

double adjusted_rand_index(const SenseClustering& gold, const SenseClustering& pred, bool drop_gold_noise) {
  std::vector<std::string> only_gold, only_pred;
  for (const auto& [id, l] : gold.assignment) {
    if (!pred.assignment.count(id)) only_gold.push_back(id);
  }
  for (const auto& [id, l] : pred.assignment) {
    if (!gold.assignment.count(id)) only_pred.push_back(id);
  }
  if (!only_gold.empty() || !only_pred.empty()) {
    std::string msg = "adjusted_rand_index: usage domains differ;";
    if (!only_gold.empty()) {
      msg += " only in gold:";
      for (const auto& id : only_gold) msg += " " + id;
    }
    if (!only_pred.empty()) {
      if (!only_gold.empty()) msg += ";";
      msg += " only in prediction:";
      for (const auto& id : only_pred) msg += " " + id;
    }
    throw FormatError(msg);
  }

  std::map<std::pair<int, int>, double> table;
  std::map<int, double> rows, cols;
  double n = 0;
  bool identical = true;
  std::map<int, int> g2p, p2g;
  for (const auto& [id, g] : gold.assignment) {
    if (drop_gold_noise && g == SenseClustering::kNoise) continue;
    const int p = pred.assignment.at(id);
    table[{g, p}] += 1;
    rows[g] += 1;
    cols[p] += 1;
    n += 1;
    auto [gi, gnew] = g2p.emplace(g, p);
    auto [pi, pnew] = p2g.emplace(p, g);
    if (gi->second != p || pi->second != g) identical = false;
  }
  auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double index = 0, sum_rows = 0, sum_cols = 0;
  for (const auto& [cell, c] : table) index += choose2(c);
  for (const auto& [r, c] : rows) sum_rows += choose2(c);
  for (const auto& [r, c] : cols) sum_cols += choose2(c);
  const double total = choose2(n);
  const double expected = total > 0 ? sum_rows * sum_cols / total : 0.0;
  const double max_index = (sum_rows + sum_cols) / 2.0;
  if (max_index - expected == 0.0) {
    if (identical) return 1.0;
    throw UndefinedMetricError("adjusted_rand_index: degenerate contingency table");
  }
  return (index - expected) / (max_index - expected);
}

F1Result f1_binary(std::span<const int> gold, std::span<const int> pred) {
  if (gold.size() != pred.size()) throw ContractError("f1_binary: series lengths differ");
  F1Result r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if ((gold[i] != 0 && gold[i] != 1) || (pred[i] != 0 && pred[i] != 1)) {
      throw ContractError("f1_binary: labels must be 0 or 1");
    }
    if (gold[i] == 1 && pred[i] == 1) ++r.tp;
    else if (gold[i] == 0 && pred[i] == 1) ++r.fp;
    else if (gold[i] == 1 && pred[i] == 0) ++r.fn;
    else ++r.tn;
  }
  auto f1 = [](std::size_t tp, std::size_t fp, std::size_t fn, bool& unrepresented) {
    const std::size_t denom = 2 * tp + fp + fn;
    unrepresented = denom == 0;
    return denom ? 2.0 * static_cast<double>(tp) / static_cast<double>(denom) : 0.0;
  };
  r.f1_positive = f1(r.tp, r.fp, r.fn, r.positive_unrepresented);
  r.f1_negative = f1(r.tn, r.fn, r.fp, r.negative_unrepresented);
  r.macro_f1 = (r.f1_positive + r.f1_negative) / 2.0;
  r.precision = (r.tp + r.fp) ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp) : 0.0;
  r.recall = (r.tp + r.fn) ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn) : 0.0;
  return r;
}

}  // namespace lscd
