#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>

#include "lscd/embed_store.hpp"
#include "lscd/error.hpp"
#include "lscd/rng.hpp"
#include "test_util.hpp"

using namespace lscd;

namespace {

EmbeddingRecord record(const std::string& id, std::uint16_t l, std::uint16_t t, std::uint32_t d,
                       std::vector<float> values) {
  EmbeddingRecord r;
  r.usage_id = id;
  r.layers = l;
  r.tokens = t;
  r.dim = d;
  r.values = std::move(values);
  return r;
}

bool same_bits(const std::vector<float>& a, const std::vector<float>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint32_t>(a[i]) != std::bit_cast<std::uint32_t>(b[i])) return false;
  }
  return true;
}

}  // namespace

TEST(Store, RoundTripSmall) {
  const auto dir = testutil::tmpdir("store_small");
  std::vector<EmbeddingRecord> recs{record("u1", 1, 2, 3, {1, 2, 3, 4, 5, 6})};
  write_store(recs, dir / "s.bin");
  const auto back = read_store(dir / "s.bin");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_TRUE(same_bits(back.at("u1").values, recs[0].values));
  EXPECT_EQ(back.at("u1").dim, 3u);
}

TEST(Store, Empty) {
  const auto bytes = encode_store({});
  EXPECT_EQ(bytes.size(), 12u);
  EXPECT_TRUE(decode_store(bytes).empty());
}

TEST(Store, ExactLayout) {
  const auto bytes = encode_store(std::vector<EmbeddingRecord>{record("ab", 1, 1, 1, {1.0f})});
  const std::vector<std::uint8_t> expected{'L', 'S', 'C', 'D', 'E', 'M', 'B', '1', 1, 0, 0, 0,
                                           2,   0,   'a', 'b', 1,   0,   1,   0,   1, 0, 0, 0,
                                           0x00, 0x00, 0x80, 0x3f};
  EXPECT_EQ(bytes, expected);
}

TEST(Store, RandomPayloadsBitExact) {
  Rng rng(42);
  std::vector<EmbeddingRecord> recs;
  for (int i = 0; i < 20; ++i) {
    const auto l = static_cast<std::uint16_t>(1 + uniform_below(rng, 3));
    const auto t = static_cast<std::uint16_t>(1 + uniform_below(rng, 3));
    const auto d = static_cast<std::uint32_t>(1 + uniform_below(rng, 16));
    std::vector<float> v(static_cast<std::size_t>(l) * t * d);
    for (auto& x : v) {
      // Random finite bit patterns, subnormals and signed zeros included.
      do {
        x = std::bit_cast<float>(static_cast<std::uint32_t>(rng()));
      } while (!std::isfinite(x));
    }
    v[0] = std::numeric_limits<float>::denorm_min();
    v[v.size() - 1] = -0.0f;
    recs.push_back(record("u" + std::to_string(i), l, t, d, std::move(v)));
  }
  const auto bytes = encode_store(recs);
  const auto back = decode_store(bytes);
  ASSERT_EQ(back.size(), recs.size());
  for (const auto& r : recs) EXPECT_TRUE(same_bits(back.at(r.usage_id).values, r.values)) << r.usage_id;
  EXPECT_EQ(encode_store(recs), bytes);
}

TEST(Store, MagicMutationDetected) {
  const auto good = encode_store(std::vector<EmbeddingRecord>{record("u", 1, 1, 2, {1, 2})});
  for (std::size_t i = 0; i < 8; ++i) {
    auto bad = good;
    bad[i] ^= 0x01;
    EXPECT_THROW(decode_store(bad), CorruptStoreError) << "byte " << i;
  }
}

TEST(Store, CorruptionCases) {
  const auto good = encode_store(std::vector<EmbeddingRecord>{record("u", 1, 1, 2, {1, 2})});
  auto truncated = good;
  truncated.pop_back();
  EXPECT_THROW(decode_store(truncated), CorruptStoreError);
  auto trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(decode_store(trailing), CorruptStoreError);
  auto nan = encode_store(std::vector<EmbeddingRecord>{record("u", 1, 1, 1, {1})});
  nan[nan.size() - 1] = 0x7f;
  nan[nan.size() - 2] = 0xc0;
  EXPECT_THROW(decode_store(nan), CorruptStoreError);
  // Same record body twice with the count bumped to 2.
  auto dup = encode_store(std::vector<EmbeddingRecord>{record("u", 1, 1, 1, {1})});
  dup.insert(dup.end(), dup.begin() + 12, dup.end());
  dup[8] = 2;
  EXPECT_THROW(decode_store(dup), CorruptStoreError);
  EXPECT_THROW(encode_store(std::vector<EmbeddingRecord>{record("u", 1, 1, 1, {1}), record("u", 1, 1, 1, {2})}),
               FormatError);
}

TEST(Store, ShapeMismatchOnWrite) {
  EXPECT_THROW(encode_store(std::vector<EmbeddingRecord>{record("u", 1, 2, 2, {1, 2, 3})}), ShapeError);
}

TEST(Pooling, Subwords) {
  const std::vector<float> m{1, 3, 3, 5};
  EXPECT_EQ(pool_subwords(m, 2, 2, SubwordPooling::Mean), (Vector{2, 4}));
  EXPECT_EQ(pool_subwords(m, 2, 2, SubwordPooling::Max), (Vector{3, 5}));
  EXPECT_EQ(pool_subwords(m, 2, 2, SubwordPooling::First), (Vector{1, 3}));
}

TEST(Pooling, Layers) {
  const std::vector<Vector> v{{0, 2}, {2, 4}};
  EXPECT_EQ(aggregate_layers(v, LayerAggregation::Average), (Vector{1, 3}));
  EXPECT_EQ(aggregate_layers(v, LayerAggregation::Concatenate), (Vector{0, 2, 2, 4}));
  const std::vector<Vector> one{{5, 6}};
  EXPECT_EQ(aggregate_layers(one, LayerAggregation::Average), (Vector{5, 6}));
  EXPECT_EQ(aggregate_layers(one, LayerAggregation::Concatenate), (Vector{5, 6}));
}

TEST(UsageVector, SingleTokenIdentity) {
  const auto r = record("u", 1, 1, 3, {0.5f, -1.0f, 2.0f});
  EXPECT_EQ(usage_vector(r, {}), (Vector{0.5, -1.0, 2.0}));
}

TEST(UsageVector, LastFourConcatenated) {
  EmbeddingRecord r = record("u", 12, 1, 768, std::vector<float>(12 * 768, 0.25f));
  PoolingSpec spec;
  spec.layer_selection = {-4, -3, -2, -1};
  spec.layer_aggregation = LayerAggregation::Concatenate;
  EXPECT_EQ(usage_vector(r, spec).size(), 3072u);
}

TEST(UsageVector, MeanThenAverage) {
  // layer 0: tokens [1,2],[3,4]; layer 1: tokens [5,6],[7,8]
  const auto r = record("u", 2, 2, 2, {1, 2, 3, 4, 5, 6, 7, 8});
  PoolingSpec spec;
  spec.layer_selection = {0, 1};
  // layer means [2,3] and [6,7], averaged -> [4,5]
  EXPECT_EQ(usage_vector(r, spec), (Vector{4, 5}));
}

TEST(UsageVector, LayerOutOfRange) {
  const auto r = record("u", 2, 1, 1, {1, 2});
  PoolingSpec spec;
  spec.layer_selection = {5};
  EXPECT_THROW(usage_vector(r, spec), ConfigError);
  spec.layer_selection = {-3};
  EXPECT_THROW(usage_vector(r, spec), ConfigError);
}
