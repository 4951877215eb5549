#include <gtest/gtest.h>

#include "lscd/error.hpp"
#include "lscd/fixture.hpp"
#include "lscd/ingest.hpp"
#include "test_util.hpp"

using namespace lscd;
using testutil::write_file;

namespace {
const std::string kUsesHeader =
    "lemma\tpos\tdate\tgrouping\tidentifier\tcontext\tindexes_target_token\tindexes_target_sentence\n";
const std::string kCtx40 = "0123456789abcdefghijklmnopqrstuvwxyzABCD";  // 40 chars
}  // namespace

TEST(ParseUses, SpanAndGrouping) {
  const auto dir = testutil::tmpdir("uses_ok");
  write_file(dir / "uses.tsv", kUsesHeader + "plane\tNN\t1850\t2\tp1\t" + kCtx40 + "\t10:15\t0:40\n");
  const auto us = parse_uses(dir / "uses.tsv");
  ASSERT_EQ(us.size(), 1u);
  EXPECT_EQ(us[0].target, (CharSpan{10, 15}));
  EXPECT_EQ(us[0].grouping, Grouping::Later);
  EXPECT_EQ(us[0].pos, "NN");
}

TEST(ParseUses, SpanOutOfBoundsNamesRow) {
  const auto dir = testutil::tmpdir("uses_bad_span");
  write_file(dir / "uses.tsv", kUsesHeader + "plane\tNN\t1850\t1\tp1\t" + kCtx40 + "\t39:45\t0:40\n");
  try {
    parse_uses(dir / "uses.tsv");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
}

TEST(ParseUses, SpansCountCodePoints) {
  const auto dir = testutil::tmpdir("uses_utf8");
  // "Flügel" is 6 code points, 7 bytes.
  write_file(dir / "uses.tsv", kUsesHeader + "f\tNN\t1850\t1\tf1\tFlügel\t0:6\t0:6\n");
  EXPECT_EQ(parse_uses(dir / "uses.tsv")[0].target, (CharSpan{0, 6}));
}

TEST(ParseUses, BadGrouping) {
  const auto dir = testutil::tmpdir("uses_bad_group");
  write_file(dir / "uses.tsv", kUsesHeader + "plane\tNN\t1850\t3\tp1\t" + kCtx40 + "\t1:2\t0:40\n");
  EXPECT_THROW(parse_uses(dir / "uses.tsv"), FormatError);
}

TEST(ParseUses, MissingColumn) {
  const auto dir = testutil::tmpdir("uses_missing_col");
  write_file(dir / "uses.tsv", "lemma\tidentifier\nplane\tp1\n");
  EXPECT_THROW(parse_uses(dir / "uses.tsv"), FormatError);
}

TEST(ParseJudgments, CanonicalOrderAndMissing) {
  const auto dir = testutil::tmpdir("judgments");
  write_file(dir / "j.tsv", "identifier1\tidentifier2\tannotator\tjudgment\nu1\tu2\tannA\t4\nu2\tu1\tannB\t0\n");
  const auto js = parse_judgments(dir / "j.tsv");
  ASSERT_EQ(js.size(), 2u);
  EXPECT_EQ(js[0], (Judgment{"u1", "u2", "annA", 4}));
  EXPECT_EQ(js[1], (Judgment{"u1", "u2", "annB", std::nullopt}));
}

TEST(ParseJudgments, OutOfRange) {
  const auto dir = testutil::tmpdir("judgments_bad");
  write_file(dir / "j.tsv", "identifier1\tidentifier2\tannotator\tjudgment\nu1\tu2\tannA\t5\n");
  EXPECT_THROW(parse_judgments(dir / "j.tsv"), FormatError);
}

TEST(ParseRating, Forms) {
  EXPECT_EQ(parse_rating("-"), std::nullopt);
  EXPECT_EQ(parse_rating("0"), std::nullopt);
  EXPECT_EQ(parse_rating("3.0"), 3);
  EXPECT_THROW(parse_rating("2.5"), FormatError);
  EXPECT_THROW(parse_rating("x"), FormatError);
}

TEST(ParseClusters, LabelsNoiseDuplicates) {
  const auto dir = testutil::tmpdir("clusters");
  write_file(dir / "c.tsv", "identifier\tcluster\nu1\t0\nu2\t0\nu3\t1\nu4\t-1\n");
  const auto c = parse_clusters(dir / "c.tsv");
  EXPECT_EQ(c.assignment.at("u1"), 0);
  EXPECT_EQ(c.assignment.at("u3"), 1);
  EXPECT_EQ(c.assignment.at("u4"), SenseClustering::kNoise);
  write_file(dir / "d.tsv", "identifier\tcluster\nu1\t0\nu1\t1\n");
  EXPECT_THROW(parse_clusters(dir / "d.tsv"), FormatError);
}

TEST(ParseGold, Columns) {
  const auto dir = testutil::tmpdir("gold");
  write_file(dir / "g.tsv", "lemma\tchange_graded\tchange_binary\nplane\t0.88\t1\n");
  const auto g = parse_gold_lscd(dir / "g.tsv");
  EXPECT_DOUBLE_EQ(*g.at("plane").change_graded, 0.88);
  EXPECT_EQ(g.at("plane").change_binary, 1);
  EXPECT_FALSE(g.at("plane").compare);

  write_file(dir / "c.tsv", "lemma\tCOMPARE\nplane\t3.1\n");
  const auto c = parse_gold_lscd(dir / "c.tsv");
  EXPECT_DOUBLE_EQ(*c.at("plane").compare, 3.1);
  EXPECT_FALSE(c.at("plane").change_graded);
  EXPECT_FALSE(c.at("plane").change_binary);

  write_file(dir / "bad.tsv", "lemma\tchange_graded\nplane\t1.2\n");
  EXPECT_THROW(parse_gold_lscd(dir / "bad.tsv"), FormatError);
}

TEST(LoadSplit, Basics) {
  const auto dir = testutil::tmpdir("split");
  write_file(dir / "s.tsv", "lemma\tsplit\nplane\ttest\n");
  EXPECT_EQ(load_split(dir / "s.tsv").assignment.at("plane"), SplitName::Test);
  write_file(dir / "dup.tsv", "lemma\tsplit\nplane\ttest\nplane\tdev\n");
  EXPECT_THROW(load_split(dir / "dup.tsv"), FormatError);
  write_file(dir / "empty.tsv", "");
  const auto empty = load_split(dir / "empty.tsv");
  EXPECT_TRUE(empty.assignment.empty());
  EXPECT_TRUE(empty.lemmas(SplitName::Test).empty());
}

TEST(Writers, RoundTrip) {
  const auto dir = testutil::tmpdir("writers");
  auto u = testutil::usage("x1", 2, "plane");
  u.pos = "NN";
  u.date = "1999";
  u.sentence = CharSpan{0, u.context.size()};
  write_uses(dir / "u.tsv", {u});
  EXPECT_EQ(parse_uses(dir / "u.tsv"), std::vector<Usage>{u});

  std::vector<Judgment> js{{"a", "b", "A1", 3}, {"a", "c", "A2", std::nullopt}};
  write_judgments(dir / "j.tsv", js);
  EXPECT_EQ(parse_judgments(dir / "j.tsv"), js);

  std::map<std::string, GoldLabels> gold;
  gold["plane"] = GoldLabels{"plane", 0.25, 1, 1, 0, 2.75};
  gold["tree"] = GoldLabels{"tree", std::nullopt, 0, std::nullopt, std::nullopt, std::nullopt};
  write_gold_lscd(dir / "g.tsv", gold);
  EXPECT_EQ(parse_gold_lscd(dir / "g.tsv"), gold);
}

TEST(SeededSplit, DeterministicAndComplete) {
  std::vector<std::string> lemmas;
  for (int i = 0; i < 10; ++i) lemmas.push_back("l" + std::to_string(i));
  const auto a = make_seeded_split(lemmas, 3), b = make_seeded_split(lemmas, 3);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.assignment.size(), 10u);
  EXPECT_EQ(a.lemmas(SplitName::Train).size(), 6u);
  EXPECT_EQ(a.lemmas(SplitName::Dev).size(), 2u);
  EXPECT_EQ(a.lemmas(SplitName::Test).size(), 2u);
}

TEST(LoadDataset, FixtureLoads) {
  const auto dir = testutil::tmpdir("ds_fixture");
  make_fixture({}, 1, dir);
  const auto ds = load_dataset(dir / "manifest.json");
  EXPECT_EQ(ds.lemmas.size(), 10u);
  EXPECT_EQ(ds.gold.size(), 10u);
  ASSERT_TRUE(ds.split);
  ASSERT_NE(ds.find("w03"), nullptr);
  EXPECT_TRUE(ds.find("w03")->clusters);
}

TEST(LoadDataset, DanglingJudgmentReported) {
  const auto dir = testutil::tmpdir("ds_dangling");
  make_fixture({.lemmas = 2, .changed = 1}, 1, dir);
  std::ofstream(dir / "data" / "w00" / "judgments.tsv", std::ios::app) << "w00_1_000\tghost\tA1\t3\n";
  try {
    load_dataset(dir / "manifest.json");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
}

TEST(LoadDataset, DeclaredTaskWithoutGold) {
  const auto dir = testutil::tmpdir("ds_nogold");
  make_fixture({.lemmas = 2, .changed = 1}, 1, dir);
  write_file(dir / "gold.tsv", "lemma\tCOMPARE\nw00\t2\nw01\t3\n");
  EXPECT_THROW(load_dataset(dir / "manifest.json"), ConfigError);
}
