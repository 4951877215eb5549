#pragma once

// Core domain types: usages, DURel judgments, word usage graphs and sense
// clusterings, plus graph construction and period slicing.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lscd {

/// Corpus slice a usage was drawn from: 1 = earlier, 2 = later.
enum class Grouping : int { Earlier = 1, Later = 2 };

/// Half-open character (code point) interval [start, end).
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  bool operator==(const CharSpan&) const = default;
};

struct Usage {
  std::string id;
  std::string lemma;
  std::optional<std::string> pos;
  std::optional<std::string> date;
  Grouping grouping = Grouping::Earlier;
  std::string context;
  CharSpan target;
  std::optional<CharSpan> sentence;
  // Unrecognised source columns, kept for round-tripping.
  std::vector<std::pair<std::string, std::string>> extra;

  bool operator==(const Usage&) const = default;
};

/// Validates span bounds against the context's code-point length.
void validate_usage(const Usage& u);

/// DURel rating 1..4; nullopt is MISSING ("cannot decide").
using Rating = std::optional<int>;

struct Judgment {
  std::string id1;
  std::string id2;
  std::string annotator;
  Rating rating;

  bool operator==(const Judgment&) const = default;
};

using PairKey = std::pair<std::string, std::string>;

/// Lexicographically smaller id first.
PairKey canonical_pair(std::string a, std::string b);

enum class PairType { Compare, Earlier, Later, All };

std::string to_string(PairType t);
PairType parse_pair_type(const std::string& s);

struct UsagePair {
  std::string id1;
  std::string id2;
  PairType type = PairType::All;

  PairKey key() const { return {id1, id2}; }
  bool operator==(const UsagePair&) const = default;
};

enum class Aggregation { Median, Mean };

std::string to_string(Aggregation a);
Aggregation parse_aggregation(const std::string& s);

struct EdgeData {
  double weight = 0.0;
  std::vector<int> ratings;  // non-missing ratings, sorted

  bool operator==(const EdgeData&) const = default;
};

/// Usages as nodes, aggregated judgments (or model scores) as weighted edges.
/// Nodes are kept sorted by id; edges keyed by canonical pair.
class WordUsageGraph {
 public:
  WordUsageGraph() = default;
  WordUsageGraph(std::string lemma, std::vector<Usage> nodes, std::map<PairKey, EdgeData> edges);

  const std::string& lemma() const { return lemma_; }
  const std::vector<Usage>& nodes() const { return nodes_; }
  const std::map<PairKey, EdgeData>& edges() const { return edges_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  /// Node index by id, or nullopt.
  std::optional<std::size_t> index_of(const std::string& id) const;
  const Usage* find(const std::string& id) const;

  bool operator==(const WordUsageGraph&) const = default;

 private:
  std::string lemma_;
  std::vector<Usage> nodes_;
  std::map<PairKey, EdgeData> edges_;
};

/// Statistic over the non-missing ratings; throws DegenerateInputError when none remain.
double edge_weight(std::span<const Rating> ratings, Aggregation method);
double edge_weight(std::span<const int> ratings, Aggregation method);

/// One edge per judged pair, weighted by `aggregation`; all-missing pairs yield no edge.
/// Unknown ids or mixed lemmas raise FormatError.
WordUsageGraph build_graph(const std::vector<Usage>& usages, const std::vector<Judgment>& judgments,
                           Aggregation aggregation = Aggregation::Median);

/// Nodes of one grouping and the edges among them.
WordUsageGraph subgraph_by_grouping(const WordUsageGraph& g, Grouping grouping);

/// Partition of usage ids into sense clusters. Label -1 is noise.
struct SenseClustering {
  static constexpr int kNoise = -1;
  std::map<std::string, int> assignment;

  bool operator==(const SenseClustering&) const = default;
};

}  // namespace lscd
