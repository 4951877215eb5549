#include <gtest/gtest.h>

#include <cmath>

#include "lscd/error.hpp"
#include "lscd/metrics.hpp"
#include "lscd/rng.hpp"
#include "oracles.hpp"

using namespace lscd;

namespace {

PairedSeries series(std::vector<double> gold, std::vector<double> pred) {
  PairedSeries s;
  for (std::size_t i = 0; i < gold.size(); ++i) s.ids.push_back("i" + std::to_string(i));
  s.gold = std::move(gold);
  s.pred = std::move(pred);
  s.total_gold = s.ids.size();
  return s;
}

SenseClustering clusters(const std::vector<int>& labels) {
  SenseClustering c;
  for (std::size_t i = 0; i < labels.size(); ++i) c.assignment["u" + std::to_string(i)] = labels[i];
  return c;
}

using Units = std::vector<std::vector<std::optional<double>>>;

}  // namespace

TEST(Spearman, Examples) {
  EXPECT_NEAR(spearman(series({1, 2, 3}, {10, 20, 30})).value, 1.0, 1e-12);
  EXPECT_NEAR(spearman(series({1, 2, 3}, {3, 2, 1})).value, -1.0, 1e-12);
  EXPECT_NEAR(spearman(series({1, 2, 3, 4}, {1, 1, 3, 4})).value, 0.9486832980505139, 1e-10);
}

TEST(Spearman, ConstantSeriesUndefined) {
  EXPECT_THROW(spearman(series({1, 2, 3}, {5, 5, 5})), UndefinedMetricError);
  EXPECT_THROW(spearman(series({1, 1, 1}, {1, 2, 3})), UndefinedMetricError);
  EXPECT_THROW(spearman(series({1}, {2})), UndefinedMetricError);
}

TEST(Spearman, MonotoneTransformInvariant) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> g(15), p(15), q(15);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = std::floor(uniform01(rng) * 6);
      p[i] = std::floor(uniform01(rng) * 6);
      q[i] = std::exp(p[i]) * 3.0 - 7.0;
    }
    const double a = spearman(series(g, p)).value;
    EXPECT_NEAR(a, spearman(series(g, q)).value, 1e-12);
    EXPECT_NEAR(a, oracle::spearman(g, p), 1e-10);
  }
}

TEST(FractionalRanks, Ties) {
  const std::vector<double> v{10, 20, 10, 30};
  EXPECT_EQ(fractional_ranks(v), (std::vector<double>{1.5, 3, 1.5, 4}));
}

TEST(Pearson, Examples) {
  EXPECT_NEAR(pearson(series({1, 2, 3, 4}, {3, 5, 7, 9})).value, 1.0, 1e-12);
  EXPECT_NEAR(pearson(series({1, 2, 3}, {-1, -2, -3})).value, -1.0, 1e-12);
  EXPECT_NEAR(pearson(series({0, 1, 2}, {0, 1, 1})).value, std::sqrt(3.0) / 2.0, 1e-10);
  EXPECT_NEAR(pearson(series({0, 1, 2}, {0, 1, 1})).value, 0.8660254037844386, 1e-10);
  EXPECT_THROW(pearson(series({1, 2}, {3, 3})), UndefinedMetricError);
}

TEST(Align, Policies) {
  const std::map<std::string, double> gold{{"a", 1}, {"b", 2}, {"c", 3}, {"d", 4}};
  const std::map<std::string, std::optional<double>> pred{{"a", 1}, {"b", std::nullopt}, {"c", 3}, {"x", 9}};
  try {
    align(gold, pred, MissingPolicy::Error);
    FAIL();
  } catch (const UndefinedMetricError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("b"), std::string::npos);
    EXPECT_NE(msg.find("d"), std::string::npos);
  }
  const auto s = align(gold, pred, MissingPolicy::DropWithCoverage);
  EXPECT_EQ(s.ids, (std::vector<std::string>{"a", "c"}));
  EXPECT_DOUBLE_EQ(s.coverage(), 0.5);
}

TEST(Krippendorff, Agreement) {
  EXPECT_DOUBLE_EQ(krippendorff_alpha_ordinal(Units{{1, 1}, {2, 2}, {3, 3}, {4, 4}}), 1.0);
}

TEST(Krippendorff, SingleStepDisagreement) {
  const Units u{{1, 1}, {2, 2}, {3, 3}, {4, 3}};
  EXPECT_NEAR(krippendorff_alpha_ordinal(u), 0.9102564102564102, 1e-10);
  EXPECT_NEAR(krippendorff_alpha_ordinal(u), 71.0 / 78.0, 1e-10);
  EXPECT_NEAR(krippendorff_alpha_ordinal(u), oracle::krippendorff_ordinal(u), 1e-10);
}

TEST(Krippendorff, MissingAndOracle) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    Units u;
    for (int i = 0; i < 12; ++i) {
      std::vector<std::optional<double>> row;
      for (int r = 0; r < 3; ++r) {
        if (uniform01(rng) < 0.2) {
          row.push_back(std::nullopt);
        } else {
          row.push_back(1.0 + static_cast<double>(uniform_below(rng, 4)));
        }
      }
      u.push_back(row);
    }
    EXPECT_NEAR(krippendorff_alpha_ordinal(u), oracle::krippendorff_ordinal(u), 1e-10);
  }
}

TEST(Krippendorff, NonIntegerCategories) {
  const Units u{{1.5, 2}, {2.5, 2.5}, {3, 3.5}, {4, 4}};
  EXPECT_NEAR(krippendorff_alpha_ordinal(u), oracle::krippendorff_ordinal(u), 1e-10);
}

TEST(Krippendorff, Undefined) {
  EXPECT_THROW(krippendorff_alpha_ordinal(Units{{1, std::nullopt}, {2, std::nullopt}}), UndefinedMetricError);
}

TEST(Ari, Examples) {
  EXPECT_DOUBLE_EQ(adjusted_rand_index(clusters({0, 0, 1, 1}), clusters({0, 0, 1, 1})), 1.0);
  EXPECT_NEAR(adjusted_rand_index(clusters({0, 0, 1, 1}), clusters({0, 0, 0, 0})), 0.0, 1e-10);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(clusters({0, 0, 1, 1, 2}), clusters({7, 7, 3, 3, 5})), 1.0);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(clusters({0, 0, 0}), clusters({4, 4, 4})), 1.0);
}

TEST(Ari, PermutationInvarianceAndOracle) {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> g(10), p(10);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = static_cast<int>(uniform_below(rng, 3));
      p[i] = static_cast<int>(uniform_below(rng, 4));
    }
    std::vector<int> perm{3, 0, 2, 1};
    std::vector<int> relabeled(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) relabeled[i] = perm[static_cast<std::size_t>(p[i])] + 10;
    const double a = adjusted_rand_index(clusters(g), clusters(p));
    EXPECT_NEAR(a, adjusted_rand_index(clusters(g), clusters(relabeled)), 1e-12);
    EXPECT_NEAR(a, oracle::ari(g, p), 1e-10);
  }
}

TEST(Ari, DomainMismatchListsIds) {
  SenseClustering g = clusters({0, 1}), p = clusters({0, 1});
  p.assignment["extra"] = 0;
  try {
    adjusted_rand_index(g, p);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("extra"), std::string::npos);
  }
}

TEST(Ari, GoldNoiseDropped) {
  auto g = clusters({0, 0, 1, 1});
  g.assignment["u4"] = SenseClustering::kNoise;
  auto p = clusters({0, 0, 1, 1});
  p.assignment["u4"] = 0;
  EXPECT_DOUBLE_EQ(adjusted_rand_index(g, p), 1.0);
  EXPECT_LT(adjusted_rand_index(g, p, false), 1.0);
}

TEST(F1, Examples) {
  const std::vector<int> gold{1, 0, 1, 0}, perfect{1, 0, 1, 0}, zeros{0, 0, 0, 0};
  EXPECT_DOUBLE_EQ(f1_binary(gold, perfect).f1_positive, 1.0);
  EXPECT_DOUBLE_EQ(f1_binary(gold, perfect).macro_f1, 1.0);
  EXPECT_DOUBLE_EQ(f1_binary(gold, zeros).f1_positive, 0.0);

  const std::vector<int> g2{1, 1, 1, 0, 0}, p2{1, 1, 0, 1, 0};
  const auto r = f1_binary(g2, p2);
  EXPECT_EQ(r.tp, 2u);
  EXPECT_EQ(r.fp, 1u);
  EXPECT_EQ(r.fn, 1u);
  EXPECT_EQ(r.tn, 1u);
  EXPECT_NEAR(r.f1_positive, 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(r.f1_negative, 0.5, 1e-10);
  EXPECT_NEAR(r.macro_f1, (2.0 / 3.0 + 0.5) / 2.0, 1e-10);
}

TEST(F1, UnrepresentedClassFlagged) {
  const std::vector<int> zeros{0, 0, 0};
  const auto r = f1_binary(zeros, zeros);
  EXPECT_TRUE(r.positive_unrepresented);
  EXPECT_DOUBLE_EQ(r.f1_positive, 0.0);
  EXPECT_DOUBLE_EQ(r.f1_negative, 1.0);
}
