#include "lscd/clustering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "lscd/error.hpp"
#include "lscd/rng.hpp"

namespace lscd {

namespace {

constexpr double kEps = 1e-12;

struct Neighbor {
  std::size_t node;
  double shifted;  // weight - threshold
};

struct CompactGraph {
  std::size_t n = 0;
  std::vector<std::vector<Neighbor>> adj;
  std::vector<std::pair<std::size_t, std::size_t>> edge_ends;
  std::vector<double> edge_shifted;
};

CompactGraph compact(const WordUsageGraph& g, double threshold) {
  CompactGraph c;
  c.n = g.node_count();
  c.adj.resize(c.n);
  for (const auto& [key, data] : g.edges()) {
    const auto a = *g.index_of(key.first);
    const auto b = *g.index_of(key.second);
    const double s = data.weight - threshold;
    c.adj[a].push_back({b, s});
    c.adj[b].push_back({a, s});
    c.edge_ends.emplace_back(a, b);
    c.edge_shifted.push_back(s);
  }
  return c;
}

double loss_of(const CompactGraph& g, const std::vector<int>& labels) {
  double loss = 0;
  for (std::size_t e = 0; e < g.edge_ends.size(); ++e) {
    const auto [a, b] = g.edge_ends[e];
    const double s = g.edge_shifted[e];
    if (labels[a] == labels[b]) {
      if (s < 0) loss -= s;
    } else if (s > 0) {
      loss += s;
    }
  }
  return loss;
}

/// Relabels to 0..k-1 in order of first appearance.
std::vector<int> canonical_labels(const std::vector<int>& labels) {
  std::map<int, int> remap;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = remap.find(labels[i]);
    if (it == remap.end()) it = remap.emplace(labels[i], static_cast<int>(remap.size())).first;
    out[i] = it->second;
  }
  return out;
}

/// Mutable partition over node indices with O(1) access to the non-empty labels.
class Partition {
 public:
  explicit Partition(std::size_t n) : labels_(n, -1), sizes_(n, 0), slot_(n, -1) {
    for (std::size_t l = n; l-- > 0;) free_.push_back(static_cast<int>(l));
  }

  int label(std::size_t v) const { return labels_[v]; }
  int size(int l) const { return sizes_[l]; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<int>& active() const { return active_; }

  int fresh_label() const { return free_.back(); }

  void assign(std::size_t v, int l) {
    const int old = labels_[v];
    if (old == l) return;
    if (old >= 0 && --sizes_[old] == 0) deactivate(old);
    if (sizes_[l]++ == 0) activate(l);
    labels_[v] = l;
  }

 private:
  void activate(int l) {
    free_.erase(std::find(free_.begin(), free_.end(), l));
    slot_[l] = static_cast<int>(active_.size());
    active_.push_back(l);
  }
  void deactivate(int l) {
    const int pos = slot_[l];
    active_[pos] = active_.back();
    slot_[active_[pos]] = pos;
    active_.pop_back();
    slot_[l] = -1;
    free_.push_back(l);
  }

  std::vector<int> labels_;
  std::vector<int> sizes_;
  std::vector<int> slot_;
  std::vector<int> active_;
  std::vector<int> free_;
};

double attraction(const CompactGraph& g, const Partition& p, std::size_t v, int l) {
  double s = 0;
  for (const auto& nb : g.adj[v]) {
    if (p.label(nb.node) == l) s += nb.shifted;
  }
  return s;
}

/// Single-node moves to the most attractive cluster and pairwise cluster merges,
/// applied until neither lowers the loss.
void greedy_descent(const CompactGraph& g, Partition& p) {
  std::map<int, double> sums;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t v = 0; v < g.n; ++v) {
      const int cur = p.label(v);
      sums.clear();
      for (const auto& nb : g.adj[v]) sums[p.label(nb.node)] += nb.shifted;
      const double here = sums.count(cur) ? sums[cur] : 0.0;
      int best = cur;
      double best_gain = kEps;
      for (const auto& [l, s] : sums) {
        if (l != cur && s - here > best_gain) {
          best_gain = s - here;
          best = l;
        }
      }
      if (best == cur && p.size(cur) > 1 && -here > best_gain) best = p.fresh_label();
      if (best != cur) {
        p.assign(v, best);
        improved = true;
      }
    }
    std::map<std::pair<int, int>, double> between;
    for (std::size_t e = 0; e < g.edge_ends.size(); ++e) {
      int a = p.label(g.edge_ends[e].first);
      int b = p.label(g.edge_ends[e].second);
      if (a == b) continue;
      if (b < a) std::swap(a, b);
      between[{a, b}] += g.edge_shifted[e];
    }
    std::pair<int, int> merge{-1, -1};
    double merge_gain = kEps;
    for (const auto& [ab, s] : between) {
      if (s > merge_gain) {
        merge_gain = s;
        merge = ab;
      }
    }
    if (merge.first >= 0) {
      for (std::size_t v = 0; v < g.n; ++v) {
        if (p.label(v) == merge.second) p.assign(v, merge.first);
      }
      improved = true;
    }
  }
}

struct RestartResult {
  std::vector<int> labels;
  double loss = std::numeric_limits<double>::infinity();
};

RestartResult anneal(const CompactGraph& g, const ClusteringParams& params, std::uint64_t seed) {
  Rng rng(seed);
  Partition p(g.n);
  for (std::size_t v = 0; v < g.n; ++v) p.assign(v, static_cast<int>(uniform_below(rng, g.n)));

  double scale = 0;
  std::size_t nonzero = 0;
  for (double s : g.edge_shifted) {
    if (s != 0.0) {
      scale += std::abs(s);
      ++nonzero;
    }
  }
  double loss = loss_of(g, p.labels());
  RestartResult best{p.labels(), loss};

  if (nonzero > 0) {
    const double t0 = scale / static_cast<double>(nonzero);
    const double t_end = t0 * 1e-3;
    const double cooling = std::pow(t_end / t0, 1.0 / static_cast<double>(params.max_iterations));
    double temperature = t0;
    std::vector<std::size_t> order(g.n);
    for (std::size_t i = 0; i < g.n; ++i) order[i] = i;

    for (std::size_t sweep = 0; sweep < params.max_iterations; ++sweep) {
      shuffle(rng, order);
      for (std::size_t v : order) {
        const int cur = p.label(v);
        int target;
        // Half of the proposals go to a neighbour's cluster, the rest to any
        // existing cluster or a fresh one.
        if (!g.adj[v].empty() && uniform01(rng) < 0.5) {
          target = p.label(g.adj[v][uniform_below(rng, g.adj[v].size())].node);
        } else {
          const auto& act = p.active();
          const std::size_t pick = uniform_below(rng, act.size() + 1);
          if (pick == act.size()) {
            if (p.size(cur) == 1) continue;
            target = p.fresh_label();
          } else {
            target = act[pick];
          }
        }
        if (target == cur) continue;
        const double delta = attraction(g, p, v, cur) - attraction(g, p, v, target);
        if (delta <= 0.0 || uniform01(rng) < std::exp(-delta / temperature)) {
          p.assign(v, target);
          loss += delta;
          if (loss < best.loss - kEps) best = {p.labels(), loss};
        }
      }
      temperature *= cooling;
    }
  }

  Partition q(g.n);
  for (std::size_t v = 0; v < g.n; ++v) q.assign(v, best.labels[v]);
  greedy_descent(g, q);
  return {q.labels(), loss_of(g, q.labels())};
}

}  // namespace

void ClusteringParams::validate() const {
  if (restarts < 1) throw ConfigError("clustering restarts must be >= 1");
  if (max_iterations < 1) throw ConfigError("clustering max_iterations must be >= 1");
  if (!std::isfinite(threshold)) throw ConfigError("clustering threshold must be finite");
}

double clustering_loss(const WordUsageGraph& g, const SenseClustering& c, double threshold) {
  std::vector<int> labels(g.node_count());
  int next_noise = -2;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    auto it = c.assignment.find(g.nodes()[i].id);
    if (it == c.assignment.end()) throw ContractError("clustering leaves usage " + g.nodes()[i].id + " unassigned");
    labels[i] = it->second == SenseClustering::kNoise ? next_noise-- : it->second;
  }
  return loss_of(compact(g, threshold), labels);
}

SenseClustering correlation_cluster(const WordUsageGraph& g, const ClusteringParams& params) {
  params.validate();
  if (g.empty()) throw ContractError("correlation_cluster: empty graph");
  const CompactGraph cg = compact(g, params.threshold);

  std::vector<RestartResult> results(params.restarts);
  std::size_t threads = params.threads ? params.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, params.restarts);
  if (threads <= 1) {
    for (std::size_t r = 0; r < params.restarts; ++r) results[r] = anneal(cg, params, derive_seed(params.seed, r));
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < params.restarts; r = next++) {
          results[r] = anneal(cg, params, derive_seed(params.seed, r));
        }
      });
    }
  }

  std::size_t winner = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].loss < results[winner].loss - kEps) winner = r;
  }
  std::vector<int> labels = results[winner].labels;

  int next_label = static_cast<int>(g.node_count());
  for (std::size_t v = 0; v < cg.n; ++v) {
    if (cg.adj[v].empty()) labels[v] = next_label++;
  }

  if (!params.allow_singletons) {
    std::map<int, int> sizes;
    for (int l : labels) ++sizes[l];
    for (std::size_t v = 0; v < cg.n; ++v) {
      if (cg.adj[v].empty() || sizes[labels[v]] != 1) continue;
      std::map<int, double> sums;
      for (const auto& nb : cg.adj[v]) sums[labels[nb.node]] += nb.shifted;
      auto best = std::max_element(sums.begin(), sums.end(),
                                   [](const auto& a, const auto& b) { return a.second < b.second; });
      --sizes[labels[v]];
      labels[v] = best->first;
      ++sizes[labels[v]];
    }
  }

  labels = canonical_labels(labels);
  SenseClustering out;
  for (std::size_t v = 0; v < cg.n; ++v) out.assignment.emplace(g.nodes()[v].id, labels[v]);
  return out;
}

namespace {

struct Enumerator {
  const CompactGraph& g;
  std::vector<int> labels;
  std::vector<int> best_labels;
  double best_loss = std::numeric_limits<double>::infinity();
  int best_k = 0;

  // Cost of node v's edges to already placed nodes (index < v) under label l.
  double placement_cost(std::size_t v, int l) const {
    double c = 0;
    for (const auto& nb : g.adj[v]) {
      if (nb.node >= v) continue;
      if (labels[nb.node] == l) {
        if (nb.shifted < 0) c -= nb.shifted;
      } else if (nb.shifted > 0) {
        c += nb.shifted;
      }
    }
    return c;
  }

  // Restricted growth strings in lexicographic order; pruned only when strictly worse.
  void recurse(std::size_t v, int k, double partial) {
    if (partial > best_loss + 1e-9) return;
    if (v == g.n) {
      if (partial < best_loss - 1e-9 || (partial <= best_loss + 1e-9 && k < best_k)) {
        best_loss = partial;
        best_k = k;
        best_labels = labels;
      }
      return;
    }
    for (int l = 0; l <= k; ++l) {
      labels[v] = l;
      recurse(v + 1, l == k ? k + 1 : k, partial + placement_cost(v, l));
    }
    labels[v] = -1;
  }
};

}  // namespace

ExactClustering brute_force_cluster(const WordUsageGraph& g, double threshold) {
  if (g.node_count() > kBruteForceMaxNodes) {
    throw ContractError("brute_force_cluster: " + std::to_string(g.node_count()) + " nodes exceeds the limit of " +
                        std::to_string(kBruteForceMaxNodes));
  }
  const CompactGraph cg = compact(g, threshold);
  Enumerator e{cg, std::vector<int>(cg.n, -1), {}, std::numeric_limits<double>::infinity(), 0};
  e.recurse(0, 0, 0.0);
  ExactClustering out;
  for (std::size_t v = 0; v < cg.n; ++v) out.clustering.assignment.emplace(g.nodes()[v].id, e.best_labels[v]);
  out.loss = loss_of(cg, e.best_labels);
  return out;
}

WordUsageGraph scored_graph(const std::string& lemma, const std::vector<Usage>& usages,
                            std::span<const PairScore> scores) {
  std::map<PairKey, EdgeData> edges;
  for (const auto& s : scores) {
    auto key = canonical_pair(s.pair.id1, s.pair.id2);
    EdgeData e;
    e.weight = s.score;
    edges[key] = e;
  }
  return WordUsageGraph(lemma, usages, std::move(edges));
}

}  // namespace lscd
