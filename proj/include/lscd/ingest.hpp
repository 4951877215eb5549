#pragma once

// Readers and writers for WUG-style dataset releases: tab-separated UTF-8
// files with a header row, plus a JSON manifest tying them together.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lscd/wug.hpp"

namespace lscd {

struct GoldLabels {
  std::string lemma;
  std::optional<double> change_graded;
  std::optional<int> change_binary;
  std::optional<int> change_binary_gain;
  std::optional<int> change_binary_loss;
  std::optional<double> compare;

  bool operator==(const GoldLabels&) const = default;
};

enum class SplitName { Train, Dev, Test };

std::string to_string(SplitName s);
SplitName parse_split_name(const std::string& s);

struct Split {
  std::map<std::string, SplitName> assignment;

  /// Lemmas assigned to `which`, sorted.
  std::vector<std::string> lemmas(SplitName which) const;
};

enum class Task { WiC, WSI, LscdBinary, LscdGraded, Compare };

std::string to_string(Task t);
Task parse_task(const std::string& s);

struct LemmaFiles {
  std::string lemma;
  std::filesystem::path uses;
  std::filesystem::path judgments;                // may be empty
  std::optional<std::filesystem::path> clusters;  // absent for datasets without clustering
};

struct DatasetManifest {
  std::string name;
  std::string version;
  std::string language;
  Aggregation aggregation = Aggregation::Median;
  std::set<Task> tasks;
  std::vector<LemmaFiles> lemmas;  // sorted by lemma
  std::optional<std::filesystem::path> gold;
  std::optional<std::filesystem::path> split;
  int binary_min_attestations = 1;  // M
  int binary_max_attestations = 0;  // K

  /// Paths are resolved relative to the manifest's directory.
  static DatasetManifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

std::vector<Usage> parse_uses(const std::filesystem::path& path);
std::vector<Judgment> parse_judgments(const std::filesystem::path& path);
SenseClustering parse_clusters(const std::filesystem::path& path);
std::map<std::string, GoldLabels> parse_gold_lscd(const std::filesystem::path& path);
Split load_split(const std::filesystem::path& path);

/// Parse a "start:end" span field.
CharSpan parse_span(const std::string& field);
/// Parse a DURel rating field; "0" and "-" are MISSING.
Rating parse_rating(const std::string& field);

void write_uses(const std::filesystem::path& path, const std::vector<Usage>& usages);
void write_judgments(const std::filesystem::path& path, const std::vector<Judgment>& judgments);
void write_clusters(const std::filesystem::path& path, const SenseClustering& clustering);
void write_gold_lscd(const std::filesystem::path& path, const std::map<std::string, GoldLabels>& gold);
void write_split(const std::filesystem::path& path, const Split& split);

/// Deterministic 60/20/20 train/dev/test assignment for datasets without published splits.
Split make_seeded_split(std::vector<std::string> lemmas, std::uint64_t seed);

/// All files of one lemma, parsed.
struct LemmaData {
  std::string lemma;
  std::vector<Usage> usages;
  std::vector<Judgment> judgments;
  std::optional<SenseClustering> clusters;
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<LemmaData> lemmas;  // sorted by lemma
  std::map<std::string, GoldLabels> gold;
  std::optional<Split> split;

  const LemmaData* find(const std::string& lemma) const;
};

/// Loads every file referenced by the manifest and checks cross-file consistency:
/// judgment and cluster ids must resolve to usages (all dangling ids are listed),
/// usages must carry the lemma they are filed under, and declared tasks must be
/// backed by gold data.
Dataset load_dataset(const std::filesystem::path& manifest_path);

/// Checks that declared tasks are backed by the corresponding files/columns.
void check_task_support(const Dataset& ds);

}  // namespace lscd
