#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lscd/wug.hpp"

namespace lscd {

enum class MissingPolicy { Error, DropWithCoverage };

std::string to_string(MissingPolicy p);
MissingPolicy parse_missing_policy(const std::string& s);

/// Gold and predicted values aligned by item id (lemma or pair key), sorted by id.
struct PairedSeries {
  std::vector<std::string> ids;
  std::vector<double> gold;
  std::vector<double> pred;
  std::size_t total_gold = 0;

  double coverage() const {
    return total_gold ? static_cast<double>(ids.size()) / static_cast<double>(total_gold) : 0.0;
  }
};

/// Aligns predictions to every gold item. Under MissingPolicy::Error a gold item without a
/// prediction raises UndefinedMetricError listing the ids; otherwise it is dropped.
PairedSeries align(const std::map<std::string, double>& gold,
                   const std::map<std::string, std::optional<double>>& pred, MissingPolicy policy);

struct Correlation {
  double value = 0.0;
  double coverage = 0.0;
};

/// Average ranks (1-based); tied values share the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> values);

Correlation spearman(const PairedSeries& s);
Correlation pearson(const PairedSeries& s);
double pearson(std::span<const double> x, std::span<const double> y);

/// Ordinal Krippendorff's alpha. `units[u][r]` is rater r's value for unit u (nullopt = missing).
/// Categories are the distinct observed values in ascending order.
double krippendorff_alpha_ordinal(const std::vector<std::vector<std::optional<double>>>& units);

/// Pair-counting ARI over a shared usage domain. Gold items labelled noise are removed
/// from both sides first when `drop_gold_noise` is set.
double adjusted_rand_index(const SenseClustering& gold, const SenseClustering& pred, bool drop_gold_noise = true);

struct F1Result {
  double f1_positive = 0.0;
  double f1_negative = 0.0;
  double macro_f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  // Set when a class has no gold or predicted instances; its F1 is then 0.
  bool positive_unrepresented = false;
  bool negative_unrepresented = false;
};

F1Result f1_binary(std::span<const int> gold, std::span<const int> pred);

}  // namespace lscd
