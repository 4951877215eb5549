#include "lscd/fixture.hpp"

#include <cstdio>
#include <map>

#include "lscd/change_measures.hpp"
#include "lscd/embed_store.hpp"
#include "lscd/error.hpp"
#include "lscd/ingest.hpp"
#include "lscd/rng.hpp"
#include "lscd/tsv.hpp"

namespace lscd {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kStructureStream = 0x5354525543540000ULL;
constexpr std::uint64_t kNoiseStream = 0x4e4f495345000000ULL;
constexpr std::uint64_t kEmbeddingStream = 0x454d424544000000ULL;

std::string pad(std::size_t v, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*zu", width, v);
  return buf;
}

struct PlantedLemma {
  std::string lemma;
  std::vector<Usage> usages;
  SenseClustering senses;
  bool changed = false;
};

PlantedLemma plant(const FixtureSpec& spec, std::size_t index, std::uint64_t seed) {
  Rng rng(derive_seed(seed ^ kStructureStream, index));
  PlantedLemma p;
  p.lemma = "w" + pad(index, 2);
  p.changed = index < spec.changed;

  // counts[sense] = (earlier, later)
  std::vector<std::pair<std::size_t, std::size_t>> counts;
  const std::size_t shared = 1 + uniform_below(rng, spec.max_shared_senses);
  for (std::size_t s = 0; s < shared; ++s) {
    counts.emplace_back(1 + uniform_below(rng, spec.max_usages_per_cell), 1 + uniform_below(rng, spec.max_usages_per_cell));
  }
  if (p.changed) counts.emplace_back(0, 2 + uniform_below(rng, spec.max_usages_per_cell - 1));

  const int base_year[] = {1850, 1990};
  std::size_t serial = 0;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    for (int g = 1; g <= 2; ++g) {
      const std::size_t n = g == 1 ? counts[s].first : counts[s].second;
      for (std::size_t k = 0; k < n; ++k) {
        Usage u;
        u.lemma = p.lemma;
        u.id = p.lemma + "_" + std::to_string(g) + "_" + pad(serial++, 3);
        u.pos = "NN";
        u.grouping = static_cast<Grouping>(g);
        u.date = std::to_string(base_year[g - 1] + static_cast<int>(uniform_below(rng, 30)));
        const std::string prefix = "In sense " + std::to_string(s) + " the word ";
        u.context = prefix + p.lemma + " appears in example " + std::to_string(k) + ".";
        u.target = {prefix.size(), prefix.size() + p.lemma.size()};
        u.sentence = CharSpan{0, u.context.size()};
        p.senses.assignment.emplace(u.id, static_cast<int>(s));
        p.usages.push_back(std::move(u));
      }
    }
  }
  return p;
}

}  // namespace

void make_fixture(const FixtureSpec& spec, std::uint64_t seed, const fs::path& dir) {
  if (spec.changed > spec.lemmas) throw ConfigError("fixture: more changed lemmas than lemmas");
  if (spec.max_shared_senses < 1 || spec.max_usages_per_cell < 2 || spec.annotators < 1) {
    throw ConfigError("fixture: need >= 1 shared sense, >= 2 usages per cell and >= 1 annotator");
  }
  if (spec.noise < 0.0 || spec.noise > 1.0) throw ConfigError("fixture: noise must lie in [0,1]");

  DatasetManifest manifest;
  manifest.name = "synthetic";
  manifest.version = "1.0.0";
  manifest.language = "none";
  manifest.tasks = {Task::WiC, Task::WSI, Task::LscdBinary, Task::LscdGraded, Task::Compare};
  manifest.gold = dir / "gold.tsv";
  manifest.split = dir / "split.tsv";

  std::map<std::string, GoldLabels> gold;
  std::vector<std::vector<std::string>> score_rows;
  std::vector<EmbeddingRecord> records;
  std::vector<std::string> lemma_names;

  for (std::size_t i = 0; i < spec.lemmas; ++i) {
    PlantedLemma p = plant(spec, i, seed);
    Rng structure(derive_seed(seed ^ kStructureStream, 1000003 + i));
    Rng noise(derive_seed(seed ^ kNoiseStream, i));

    std::vector<Judgment> judgments;
    for (std::size_t a = 0; a < p.usages.size(); ++a) {
      for (std::size_t b = a + 1; b < p.usages.size(); ++b) {
        const bool same = p.senses.assignment.at(p.usages[a].id) == p.senses.assignment.at(p.usages[b].id);
        for (std::size_t k = 0; k < spec.annotators; ++k) {
          // Planted ratings sit on the correct side of the 2.5 midpoint.
          int rating = same ? 3 + static_cast<int>(uniform_below(structure, 2))
                            : 1 + static_cast<int>(uniform_below(structure, 2));
          const double u = uniform01(noise);
          const int replacement = 1 + static_cast<int>(uniform_below(noise, 4));
          if (u < spec.noise) rating = replacement;
          judgments.push_back({p.usages[a].id, p.usages[b].id, "A" + std::to_string(k + 1), rating});
        }
      }
    }

    const fs::path lemma_dir = dir / "data" / p.lemma;
    write_uses(lemma_dir / "uses.tsv", p.usages);
    write_judgments(lemma_dir / "judgments.tsv", judgments);
    write_clusters(lemma_dir / "clusters.tsv", p.senses);
    manifest.lemmas.push_back({p.lemma, lemma_dir / "uses.tsv", lemma_dir / "judgments.tsv", lemma_dir / "clusters.tsv"});

    const WordUsageGraph g = build_graph(p.usages, judgments, manifest.aggregation);
    std::vector<double> cross;
    for (const auto& [key, e] : g.edges()) {
      if (g.find(key.first)->grouping != g.find(key.second)->grouping) cross.push_back(e.weight);
      score_rows.push_back({key.first, key.second, tsv::format_double(e.weight)});
    }

    GoldLabels labels;
    labels.lemma = p.lemma;
    labels.change_graded = jsd_distance(sense_distribution(p.senses, p.usages, Grouping::Earlier),
                                        sense_distribution(p.senses, p.usages, Grouping::Later));
    const BinaryChange bc = binary_change(p.senses, p.usages, manifest.binary_min_attestations,
                                          manifest.binary_max_attestations);
    labels.change_binary = bc.binary;
    labels.change_binary_gain = bc.gain;
    labels.change_binary_loss = bc.loss;
    labels.compare = apd(std::span<const double>(cross));
    gold.emplace(p.lemma, labels);
    lemma_names.push_back(p.lemma);

    // Usage vectors: a per-sense prototype plus small per-token jitter.
    Rng emb(derive_seed(seed ^ kEmbeddingStream, i));
    std::map<int, std::vector<float>> prototypes;
    for (const auto& [id, sense] : p.senses.assignment) {
      if (prototypes.count(sense)) continue;
      std::vector<float> v(spec.dim);
      for (auto& x : v) x = static_cast<float>(uniform01(emb) * 2.0 - 1.0);
      prototypes.emplace(sense, std::move(v));
    }
    for (const auto& u : p.usages) {
      EmbeddingRecord rec;
      rec.usage_id = u.id;
      rec.layers = spec.layers;
      rec.tokens = spec.tokens;
      rec.dim = spec.dim;
      const auto& proto = prototypes.at(p.senses.assignment.at(u.id));
      for (std::size_t l = 0; l < spec.layers; ++l) {
        for (std::size_t t = 0; t < spec.tokens; ++t) {
          for (std::size_t d = 0; d < spec.dim; ++d) {
            rec.values.push_back(proto[d] + static_cast<float>((uniform01(emb) - 0.5) * 0.2));
          }
        }
      }
      records.push_back(std::move(rec));
    }
  }

  write_gold_lscd(dir / "gold.tsv", gold);
  write_split(dir / "split.tsv", make_seeded_split(lemma_names, seed));
  tsv::write(dir / "wic_gold_scores.tsv", {"identifier1", "identifier2", "score"}, score_rows);
  write_store(records, dir / "embeddings.bin");
  manifest.save(dir / "manifest.json");
}

}  // namespace lscd
