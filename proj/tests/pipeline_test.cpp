#include <gtest/gtest.h>

#include <set>

#include "lscd/error.hpp"
#include "lscd/fixture.hpp"
#include "lscd/pipeline.hpp"
#include "lscd/report.hpp"
#include "test_util.hpp"

using namespace lscd;
using testutil::usage;

namespace {

std::filesystem::path fixture_dir() {
  static const auto dir = [] {
    auto d = testutil::tmpdir("pipeline_fixture");
    make_fixture({}, 7, d);
    return d;
  }();
  return dir;
}

RunConfig base(BenchTask task, Measure measure) {
  RunConfig c;
  c.dataset = fixture_dir() / "manifest.json";
  c.task = task;
  c.measure = measure;
  c.seed = 1;
  return c;
}

std::set<std::string> ids(const std::vector<Usage>& us) {
  std::set<std::string> s;
  for (const auto& u : us) s.insert(u.id);
  return s;
}

}  // namespace

TEST(SampleUses, Basics) {
  std::vector<Usage> us;
  for (int i = 0; i < 100; ++i) us.push_back(usage("u" + std::to_string(100 + i)));
  EXPECT_EQ(ids(sample_uses(us, 100, 3)), ids(us));
  EXPECT_EQ(ids(sample_uses(us, 500, 3)), ids(us));
  const auto one = sample_uses(us, 1, 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one, sample_uses(us, 1, 3));
  EXPECT_NE(ids(sample_uses(us, 50, 1)), ids(sample_uses(us, 50, 2)));
  EXPECT_THROW(sample_uses(us, 0, 3), ConfigError);
}

TEST(Run, WicGradedWithExternalGoldScores) {
  auto c = base(BenchTask::WicGraded, Measure::None);
  c.scorer = Scorer::ExternalFile;
  c.scores = fixture_dir() / "wic_gold_scores.tsv";
  const auto r = run(c);
  ASSERT_NE(r.metric("spearman"), nullptr);
  EXPECT_NEAR(*r.metric("spearman")->value, 1.0, 1e-12);
}

TEST(Run, CompareApdGoldScores) {
  auto c = base(BenchTask::Compare, Measure::Apd);
  c.pair_type = PairType::Compare;
  const auto r = run(c);
  EXPECT_NEAR(*r.metric("spearman")->value, 1.0, 1e-9);
}

TEST(Run, WsiPlanted) {
  const auto r = run(base(BenchTask::Wsi, Measure::None));
  EXPECT_DOUBLE_EQ(*r.metric("ari_mean")->value, 1.0);
  EXPECT_EQ(r.clusterings.size(), 10u);
}

TEST(Run, WicOrdinalBothModes) {
  auto c = base(BenchTask::WicOrdinal, Measure::None);
  c.thresholds = ThresholdSpec(1.5, 2.5, 3.5);
  const auto agg = run(c);
  ASSERT_NE(agg.metric("krippendorff_alpha"), nullptr);
  EXPECT_GT(*agg.metric("krippendorff_alpha")->value, 0.9);
  c.ordinal_mode = OrdinalMode::Annotators;
  const auto ann = run(c);
  EXPECT_GT(*ann.metric("krippendorff_alpha")->value, 0.5);
  c.thresholds.reset();
  EXPECT_THROW(run(c), ConfigError);
}

TEST(Run, EmbeddingScorer) {
  auto c = base(BenchTask::LscdGraded, Measure::Apd);
  c.scorer = Scorer::Embedding;
  c.embeddings = fixture_dir() / "embeddings.bin";
  const auto r = run(c);
  EXPECT_EQ(r.predictions.size(), 10u);
  EXPECT_EQ(r.predictions[0].orientation, "similarity");
}

TEST(Run, CorpusSampleDeterministic) {
  auto c = base(BenchTask::LscdGraded, Measure::Jsd);
  c.use_source = UseSource::CorpusSample;
  c.sample_size = 3;
  c.missing_policy = MissingPolicy::DropWithCoverage;
  const auto a = run(c), b = run(c);
  EXPECT_EQ(render_predictions_tsv(a), render_predictions_tsv(b));
  EXPECT_EQ(render_metrics_tsv(a), render_metrics_tsv(b));
}

TEST(Run, SplitRestrictsLemmas) {
  auto c = base(BenchTask::Compare, Measure::Apd);
  c.split = SplitSelection::Train;
  c.missing_policy = MissingPolicy::DropWithCoverage;
  EXPECT_EQ(run(c).predictions.size(), 6u);
}

TEST(Run, IncompatibleConfigsRejected) {
  EXPECT_THROW(run(base(BenchTask::Wsi, Measure::Apd)), ConfigError);
  EXPECT_THROW(run(base(BenchTask::Compare, Measure::Jsd)), ConfigError);
  EXPECT_THROW(run(base(BenchTask::LscdGraded, Measure::None)), ConfigError);
  auto c = base(BenchTask::LscdGraded, Measure::Apd);
  c.scorer = Scorer::Embedding;  // no store path
  EXPECT_THROW(run(c), ConfigError);
}

TEST(Run, DatasetWithoutClusterGoldRejectsWsi) {
  const auto dir = testutil::tmpdir("no_clusters");
  make_fixture({.lemmas = 3, .changed = 1}, 2, dir);
  auto m = DatasetManifest::load(dir / "manifest.json");
  m.tasks.erase(Task::WSI);
  for (auto& l : m.lemmas) l.clusters.reset();
  m.save(dir / "manifest.json");
  RunConfig c;
  c.dataset = dir / "manifest.json";
  c.task = BenchTask::Wsi;
  EXPECT_THROW(run(c), ConfigError);
  // Prediction through clustering still works for graded change.
  c.task = BenchTask::LscdGraded;
  c.measure = Measure::Jsd;
  EXPECT_NO_THROW(run(c));
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
  const auto dir = testutil::tmpdir("config");
  testutil::write_file(dir / "c.json",
                       R"({"name":"x","dataset":"d/manifest.json","task":"compare","measure":"apd","seed":5,)"
                       R"("clustering":{"restarts":3},"thresholds":[0.1,0.2,0.3]})");
  const auto c = RunConfig::load(dir / "c.json");
  EXPECT_EQ(c.dataset, dir / "d/manifest.json");
  EXPECT_EQ(c.clustering.restarts, 3u);
  EXPECT_EQ(c.seed, 5u);
  const auto again = RunConfig::from_json(c.to_json());
  EXPECT_EQ(again.hash(), c.hash());
  testutil::write_file(dir / "bad.json", R"({"dataset":"x","colour":"red"})");
  EXPECT_THROW(RunConfig::load(dir / "bad.json"), ConfigError);
  testutil::write_file(dir / "bad2.json", R"({"dataset":"x","task":"nope"})");
  EXPECT_THROW(RunConfig::load(dir / "bad2.json"), ConfigError);
}

TEST(Report, TsvAndJsonRoundTrip) {
  const auto r = run(base(BenchTask::LscdBinary, Measure::Binary));
  const auto dir = testutil::tmpdir("report_rt");
  write_report(r, dir, {ReportFormat::Tsv, ReportFormat::Json});
  const auto metrics = parse_metrics_tsv(dir / "metrics.tsv");
  ASSERT_EQ(metrics.size(), r.metrics.size());
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    EXPECT_EQ(metrics[i].name, r.metrics[i].name);
    EXPECT_EQ(metrics[i].value, r.metrics[i].value);
  }
  const auto back = read_report_json(dir / "report.json");
  EXPECT_EQ(render_metrics_tsv(back), render_metrics_tsv(r));
  EXPECT_EQ(render_predictions_tsv(back), render_predictions_tsv(r));
  EXPECT_TRUE(std::filesystem::exists(dir / "timing.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "clusters" / "w00.tsv"));
  EXPECT_EQ(testutil::read_file(dir / "metrics.tsv").find("seconds"), std::string::npos);
}

TEST(Report, EmptySelectionUnderDropPolicy) {
  const auto dir = testutil::tmpdir("empty_split");
  make_fixture({.lemmas = 3, .changed = 1}, 2, dir);
  testutil::write_file(dir / "split.tsv", "lemma\tsplit\nw00\ttrain\nw01\ttrain\nw02\ttrain\n");
  RunConfig c;
  c.dataset = dir / "manifest.json";
  c.task = BenchTask::LscdGraded;
  c.measure = Measure::Jsd;
  c.split = SplitSelection::Test;
  c.missing_policy = MissingPolicy::DropWithCoverage;
  const auto r = run(c);
  EXPECT_TRUE(r.predictions.empty());
  ASSERT_NE(r.metric("spearman"), nullptr);
  EXPECT_FALSE(r.metric("spearman")->value);
  EXPECT_DOUBLE_EQ(r.metric("spearman")->coverage, 0.0);
}

TEST(Report, PlotHasBarPerConfigPerDataset) {
  auto c1 = base(BenchTask::Compare, Measure::Apd);
  c1.name = "first";
  auto c2 = c1;
  c2.name = "second";
  c2.pair_type = PairType::Compare;
  const std::string svg = render_plot_svg({run(c1), run(c2)});
  std::size_t bars = 0;
  for (auto pos = svg.find("<rect x"); pos != std::string::npos; pos = svg.find("<rect x", pos + 1)) ++bars;
  // Two data bars plus two legend swatches.
  EXPECT_EQ(bars, 4u);
  EXPECT_NE(svg.find("first"), std::string::npos);
  EXPECT_NE(svg.find("second"), std::string::npos);
  EXPECT_THROW(parse_report_format("pdf"), ConfigError);
}
