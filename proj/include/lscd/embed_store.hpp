#pragma once

// Per-usage contextualized target vectors (layers x subword tokens x dims)
// and the pooling/layer aggregation that turns them into one vector per usage.
//
// Binary layout, all integers little-endian:
//   "LSCDEMB1"            8 bytes magic
//   u32 record_count
//   per record:
//     u16 id_len, id bytes (UTF-8)
//     u16 L, u16 T, u32 D
//     L*T*D f32 values, layer-major, then token, then dim

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lscd {

struct EmbeddingRecord {
  std::string usage_id;
  std::uint16_t layers = 0;
  std::uint16_t tokens = 0;
  std::uint32_t dim = 0;
  std::vector<float> values;  // layers * tokens * dim

  /// Row-major tokens x dim block of one layer.
  std::span<const float> layer(std::size_t l) const {
    return std::span<const float>(values).subspan(l * tokens * dim, static_cast<std::size_t>(tokens) * dim);
  }
  /// Throws ShapeError on zero extents, size mismatch or non-finite values.
  void validate() const;
};

using EmbeddingStore = std::map<std::string, EmbeddingRecord>;

inline constexpr char kStoreMagic[8] = {'L', 'S', 'C', 'D', 'E', 'M', 'B', '1'};

std::vector<std::uint8_t> encode_store(std::span<const EmbeddingRecord> records);
EmbeddingStore decode_store(std::span<const std::uint8_t> bytes);

void write_store(std::span<const EmbeddingRecord> records, const std::filesystem::path& path);
EmbeddingStore read_store(const std::filesystem::path& path);

/// Debug dump, one JSON object per line with explicit shape fields.
void write_store_jsonl(std::span<const EmbeddingRecord> records, const std::filesystem::path& path);

enum class SubwordPooling { Mean, Max, First };
enum class LayerAggregation { Average, Concatenate };

std::string to_string(SubwordPooling p);
std::string to_string(LayerAggregation a);
SubwordPooling parse_subword_pooling(const std::string& s);
LayerAggregation parse_layer_aggregation(const std::string& s);

struct PoolingSpec {
  SubwordPooling subword_pooling = SubwordPooling::Mean;
  // Negative indices count from the last layer (-1 = last).
  std::vector<int> layer_selection = {-1};
  LayerAggregation layer_aggregation = LayerAggregation::Average;
};

using Vector = std::vector<double>;

/// Pools a row-major tokens x dim matrix into one dim-vector.
Vector pool_subwords(std::span<const float> matrix, std::size_t tokens, std::size_t dim,
                     SubwordPooling method);

/// Averages or concatenates equal-length vectors, preserving input order.
Vector aggregate_layers(std::span<const Vector> vectors, LayerAggregation method);

/// Resolves (possibly negative) layer indices against a record depth; throws ConfigError when out of range.
std::vector<std::size_t> resolve_layers(const PoolingSpec& spec, std::size_t depth);

Vector usage_vector(const EmbeddingRecord& record, const PoolingSpec& spec);

}  // namespace lscd
