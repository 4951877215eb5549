#include "lscd/wug.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "lscd/error.hpp"
#include "lscd/tsv.hpp"

namespace lscd {

void validate_usage(const Usage& u) {
  const std::size_t len = tsv::utf8_length(u.context);
  if (!(u.target.start < u.target.end && u.target.end <= len)) {
    throw FormatError("usage " + u.id + ": target span " + std::to_string(u.target.start) + ":" +
                      std::to_string(u.target.end) + " out of bounds for context length " +
                      std::to_string(len));
  }
  if (u.sentence && !(u.sentence->start < u.sentence->end && u.sentence->end <= len)) {
    throw FormatError("usage " + u.id + ": sentence span out of bounds");
  }
  if (u.grouping != Grouping::Earlier && u.grouping != Grouping::Later) {
    throw FormatError("usage " + u.id + ": grouping must be 1 or 2");
  }
}

PairKey canonical_pair(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

std::string to_string(PairType t) {
  switch (t) {
    case PairType::Compare: return "COMPARE";
    case PairType::Earlier: return "EARLIER";
    case PairType::Later: return "LATER";
    case PairType::All: return "ALL";
  }
  return "ALL";
}

PairType parse_pair_type(const std::string& s) {
  if (s == "COMPARE") return PairType::Compare;
  if (s == "EARLIER") return PairType::Earlier;
  if (s == "LATER") return PairType::Later;
  if (s == "ALL") return PairType::All;
  throw ConfigError("unknown pair type '" + s + "'");
}

std::string to_string(Aggregation a) { return a == Aggregation::Median ? "median" : "mean"; }

Aggregation parse_aggregation(const std::string& s) {
  if (s == "median") return Aggregation::Median;
  if (s == "mean") return Aggregation::Mean;
  throw ConfigError("unknown aggregation '" + s + "'");
}

WordUsageGraph::WordUsageGraph(std::string lemma, std::vector<Usage> nodes,
                               std::map<PairKey, EdgeData> edges)
    : lemma_(std::move(lemma)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const Usage& a, const Usage& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i].id == nodes_[i - 1].id) {
      throw FormatError("lemma " + lemma_ + ": duplicate usage id " + nodes_[i].id);
    }
  }
  for (const auto& [key, data] : edges_) {
    if (key.first == key.second) throw ContractError("self-edge on " + key.first);
    if (!(key.first < key.second)) throw ContractError("edge key not canonical");
    if (!index_of(key.first) || !index_of(key.second)) {
      throw ContractError("edge endpoint missing from node set");
    }
  }
}

std::optional<std::size_t> WordUsageGraph::index_of(const std::string& id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const Usage& u, const std::string& v) { return u.id < v; });
  if (it == nodes_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

const Usage* WordUsageGraph::find(const std::string& id) const {
  auto i = index_of(id);
  return i ? &nodes_[*i] : nullptr;
}

double edge_weight(std::span<const int> ratings, Aggregation method) {
  if (ratings.empty()) throw DegenerateInputError("no valid judgments");
  std::vector<int> v(ratings.begin(), ratings.end());
  if (method == Aggregation::Mean) {
    double sum = 0;
    for (int r : v) sum += r;
    return sum / static_cast<double>(v.size());
  }
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0;
}

double edge_weight(std::span<const Rating> ratings, Aggregation method) {
  std::vector<int> valid;
  for (const auto& r : ratings) {
    if (r) valid.push_back(*r);
  }
  return edge_weight(std::span<const int>(valid), method);
}

WordUsageGraph build_graph(const std::vector<Usage>& usages, const std::vector<Judgment>& judgments,
                           Aggregation aggregation) {
  std::string lemma;
  std::set<std::string> lemmas;
  std::unordered_map<std::string, const Usage*> by_id;
  for (const auto& u : usages) {
    lemmas.insert(u.lemma);
    by_id.emplace(u.id, &u);
  }
  if (lemmas.size() > 1) {
    std::string list;
    for (const auto& l : lemmas) list += (list.empty() ? "" : ", ") + l;
    throw FormatError("build_graph: usages span multiple lemmas: " + list);
  }
  if (!lemmas.empty()) lemma = *lemmas.begin();

  std::set<std::string> dangling;
  std::map<PairKey, std::vector<int>> ratings;
  for (const auto& j : judgments) {
    if (!by_id.count(j.id1)) dangling.insert(j.id1);
    if (!by_id.count(j.id2)) dangling.insert(j.id2);
    if (j.id1 == j.id2) throw FormatError("judgment pairs usage " + j.id1 + " with itself");
    auto& slot = ratings[canonical_pair(j.id1, j.id2)];
    if (j.rating) slot.push_back(*j.rating);
  }
  if (!dangling.empty()) {
    std::string list;
    for (const auto& d : dangling) list += (list.empty() ? "" : ", ") + d;
    throw FormatError("judgments reference unknown usage ids: " + list);
  }

  std::map<PairKey, EdgeData> edges;
  for (auto& [key, rs] : ratings) {
    if (rs.empty()) continue;
    std::sort(rs.begin(), rs.end());
    EdgeData e;
    e.weight = edge_weight(std::span<const int>(rs), aggregation);
    e.ratings = rs;
    edges.emplace(key, std::move(e));
  }
  return WordUsageGraph(lemma, usages, std::move(edges));
}

WordUsageGraph subgraph_by_grouping(const WordUsageGraph& g, Grouping grouping) {
  std::vector<Usage> nodes;
  for (const auto& u : g.nodes()) {
    if (u.grouping == grouping) nodes.push_back(u);
  }
  std::map<PairKey, EdgeData> edges;
  for (const auto& [key, data] : g.edges()) {
    if (g.find(key.first)->grouping == grouping && g.find(key.second)->grouping == grouping) {
      edges.emplace(key, data);
    }
  }
  return WordUsageGraph(g.lemma(), std::move(nodes), std::move(edges));
}

}  // namespace lscd
