#pragma once

// Synthetic WUG dataset with planted sense structure, written in the ingest
// formats. Gold labels are derived from the planted clusters with this
// toolkit's own measures, so a lossless pipeline reproduces them exactly.

#include <cstdint>
#include <filesystem>

namespace lscd {

struct FixtureSpec {
  std::size_t lemmas = 10;
  std::size_t changed = 5;          // lemmas with a later-period-only sense
  std::size_t max_shared_senses = 3;
  std::size_t max_usages_per_cell = 5;  // per sense and period
  std::size_t annotators = 3;
  double noise = 0.0;  // probability that a rating is replaced by a uniform draw from 1..4
  // Synthetic embedding store shape.
  std::uint16_t layers = 2;
  std::uint16_t tokens = 2;
  std::uint32_t dim = 8;
};

/// Writes manifest.json, gold.tsv, split.tsv, data/<lemma>/{uses,judgments,clusters}.tsv,
/// wic_gold_scores.tsv (edge medians as external scores) and embeddings.bin.
/// The planted structure depends only on (spec minus noise, seed).
void make_fixture(const FixtureSpec& spec, std::uint64_t seed, const std::filesystem::path& dir);

}  // namespace lscd
