#include "lscd/embed_store.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>

#include <json.hpp>

#include "lscd/error.hpp"

namespace lscd {

namespace {

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  template <typename T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t offset() const { return pos_; }
  bool at_end() const { return pos_ == data_.size(); }

  void need(std::size_t n, const char* what) const {
    if (data_.size() - pos_ < n) throw CorruptStoreError(std::string("truncated ") + what, pos_);
  }
  template <typename T>
  T le(const char* what) {
    need(sizeof(T), what);
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(data_[pos_ + i]) << (8 * i));
    pos_ += sizeof(T);
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    need(n, what);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace

void EmbeddingRecord::validate() const {
  if (layers == 0 || tokens == 0 || dim == 0) {
    throw ShapeError("record " + usage_id + ": L, T and D must all be >= 1");
  }
  const std::size_t expected = static_cast<std::size_t>(layers) * tokens * dim;
  if (values.size() != expected) {
    throw ShapeError("record " + usage_id + ": expected " + std::to_string(expected) + " values, got " +
                     std::to_string(values.size()));
  }
  for (float v : values) {
    if (!std::isfinite(v)) throw ShapeError("record " + usage_id + ": non-finite value");
  }
}

std::vector<std::uint8_t> encode_store(std::span<const EmbeddingRecord> records) {
  std::set<std::string> seen;
  Writer w;
  w.bytes(kStoreMagic, sizeof(kStoreMagic));
  w.le<std::uint32_t>(static_cast<std::uint32_t>(records.size()));
  for (const auto& r : records) {
    r.validate();
    if (!seen.insert(r.usage_id).second) throw FormatError("duplicate usage id " + r.usage_id + " in store");
    if (r.usage_id.size() > 0xFFFF) throw FormatError("usage id too long: " + r.usage_id.substr(0, 32));
    w.le<std::uint16_t>(static_cast<std::uint16_t>(r.usage_id.size()));
    w.bytes(r.usage_id.data(), r.usage_id.size());
    w.le<std::uint16_t>(r.layers);
    w.le<std::uint16_t>(r.tokens);
    w.le<std::uint32_t>(r.dim);
    for (float v : r.values) w.le<std::uint32_t>(std::bit_cast<std::uint32_t>(v));
  }
  return w.take();
}

EmbeddingStore decode_store(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.take(sizeof(kStoreMagic), "magic");
  if (!std::equal(magic.begin(), magic.end(), kStoreMagic)) throw CorruptStoreError("bad magic", 0);
  const auto count = r.le<std::uint32_t>("record count");
  EmbeddingStore out;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::size_t record_start = r.offset();
    EmbeddingRecord rec;
    const auto id_len = r.le<std::uint16_t>("id length");
    auto id = r.take(id_len, "id");
    rec.usage_id.assign(id.begin(), id.end());
    rec.layers = r.le<std::uint16_t>("L");
    rec.tokens = r.le<std::uint16_t>("T");
    rec.dim = r.le<std::uint32_t>("D");
    if (rec.layers == 0 || rec.tokens == 0 || rec.dim == 0) {
      throw CorruptStoreError("record " + rec.usage_id + " has a zero extent", record_start);
    }
    const std::size_t n = static_cast<std::size_t>(rec.layers) * rec.tokens * rec.dim;
    r.need(n * 4, "values");
    rec.values.resize(n);
    const std::size_t values_start = r.offset();
    for (std::size_t k = 0; k < n; ++k) {
      rec.values[k] = std::bit_cast<float>(r.le<std::uint32_t>("values"));
      if (!std::isfinite(rec.values[k])) {
        throw CorruptStoreError("record " + rec.usage_id + " has a non-finite value", values_start + 4 * k);
      }
    }
    if (out.count(rec.usage_id)) {
      throw CorruptStoreError("duplicate usage id " + rec.usage_id, record_start);
    }
    out.emplace(rec.usage_id, std::move(rec));
  }
  if (!r.at_end()) throw CorruptStoreError("trailing bytes after last record", r.offset());
  return out;
}

void write_store(std::span<const EmbeddingRecord> records, const std::filesystem::path& path) {
  const auto bytes = encode_store(records);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

EmbeddingStore read_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open embedding store " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_store(bytes);
}

void write_store_jsonl(std::span<const EmbeddingRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  for (const auto& r : records) {
    nlohmann::json j;
    j["usage_id"] = r.usage_id;
    j["layers"] = r.layers;
    j["tokens"] = r.tokens;
    j["dim"] = r.dim;
    j["values"] = r.values;
    out << j.dump() << "\n";
  }
}

std::string to_string(SubwordPooling p) {
  switch (p) {
    case SubwordPooling::Mean: return "mean";
    case SubwordPooling::Max: return "max";
    case SubwordPooling::First: return "first";
  }
  return "mean";
}

std::string to_string(LayerAggregation a) {
  return a == LayerAggregation::Average ? "average" : "concatenate";
}

SubwordPooling parse_subword_pooling(const std::string& s) {
  if (s == "mean") return SubwordPooling::Mean;
  if (s == "max") return SubwordPooling::Max;
  if (s == "first") return SubwordPooling::First;
  throw ConfigError("unknown subword pooling '" + s + "'");
}

LayerAggregation parse_layer_aggregation(const std::string& s) {
  if (s == "average") return LayerAggregation::Average;
  if (s == "concatenate") return LayerAggregation::Concatenate;
  throw ConfigError("unknown layer aggregation '" + s + "'");
}

Vector pool_subwords(std::span<const float> matrix, std::size_t tokens, std::size_t dim,
                     SubwordPooling method) {
  if (tokens == 0 || dim == 0 || matrix.size() != tokens * dim) {
    throw ShapeError("pool_subwords: matrix is not " + std::to_string(tokens) + "x" + std::to_string(dim));
  }
  Vector out(dim);
  switch (method) {
    case SubwordPooling::First:
      for (std::size_t d = 0; d < dim; ++d) out[d] = matrix[d];
      break;
    case SubwordPooling::Max:
      for (std::size_t d = 0; d < dim; ++d) out[d] = matrix[d];
      for (std::size_t t = 1; t < tokens; ++t) {
        for (std::size_t d = 0; d < dim; ++d) out[d] = std::max(out[d], static_cast<double>(matrix[t * dim + d]));
      }
      break;
    case SubwordPooling::Mean:
      for (std::size_t t = 0; t < tokens; ++t) {
        for (std::size_t d = 0; d < dim; ++d) out[d] += matrix[t * dim + d];
      }
      for (auto& v : out) v /= static_cast<double>(tokens);
      break;
  }
  return out;
}

Vector aggregate_layers(std::span<const Vector> vectors, LayerAggregation method) {
  if (vectors.empty()) throw ShapeError("aggregate_layers: no layers");
  const std::size_t dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) {
      throw ShapeError("aggregate_layers: dimension mismatch (" + std::to_string(v.size()) + " vs " +
                       std::to_string(dim) + ")");
    }
  }
  if (method == LayerAggregation::Concatenate) {
    Vector out;
    out.reserve(dim * vectors.size());
    for (const auto& v : vectors) out.insert(out.end(), v.begin(), v.end());
    return out;
  }
  Vector out(dim, 0.0);
  for (const auto& v : vectors) {
    for (std::size_t d = 0; d < dim; ++d) out[d] += v[d];
  }
  for (auto& x : out) x /= static_cast<double>(vectors.size());
  return out;
}

std::vector<std::size_t> resolve_layers(const PoolingSpec& spec, std::size_t depth) {
  if (spec.layer_selection.empty()) throw ConfigError("pooling spec selects no layers");
  std::vector<std::size_t> out;
  for (int idx : spec.layer_selection) {
    const long long resolved = idx < 0 ? static_cast<long long>(depth) + idx : idx;
    if (resolved < 0 || resolved >= static_cast<long long>(depth)) {
      throw ConfigError("layer index " + std::to_string(idx) + " out of range for " + std::to_string(depth) +
                        " layers");
    }
    out.push_back(static_cast<std::size_t>(resolved));
  }
  return out;
}

Vector usage_vector(const EmbeddingRecord& record, const PoolingSpec& spec) {
  const auto layers = resolve_layers(spec, record.layers);
  std::vector<Vector> pooled;
  pooled.reserve(layers.size());
  for (std::size_t l : layers) {
    pooled.push_back(pool_subwords(record.layer(l), record.tokens, record.dim, spec.subword_pooling));
  }
  return aggregate_layers(pooled, spec.layer_aggregation);
}

}  // namespace lscd
