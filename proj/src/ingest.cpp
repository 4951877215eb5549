#include "lscd/ingest.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "lscd/error.hpp"
#include "lscd/rng.hpp"
#include "lscd/tsv.hpp"

namespace lscd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string row_ref(const tsv::Table& t, std::size_t row) {
  // +2: one for the header, one for 1-based numbering.
  return t.source.string() + ": row " + std::to_string(row + 2);
}

std::optional<std::size_t> parse_size(const std::string& s) {
  auto v = tsv::parse_int(s);
  if (!v || *v < 0) return std::nullopt;
  return static_cast<std::size_t>(*v);
}

std::string format_span(const CharSpan& s) {
  return std::to_string(s.start) + ":" + std::to_string(s.end);
}

const std::vector<std::string> kUseColumns = {"lemma", "pos", "date", "grouping", "identifier",
                                              "context", "indexes_target_token",
                                              "indexes_target_sentence"};

}  // namespace

std::string to_string(SplitName s) {
  switch (s) {
    case SplitName::Train: return "train";
    case SplitName::Dev: return "dev";
    case SplitName::Test: return "test";
  }
  return "test";
}

SplitName parse_split_name(const std::string& s) {
  if (s == "train") return SplitName::Train;
  if (s == "dev") return SplitName::Dev;
  if (s == "test") return SplitName::Test;
  throw FormatError("unknown split value '" + s + "'");
}

std::vector<std::string> Split::lemmas(SplitName which) const {
  std::vector<std::string> out;
  for (const auto& [lemma, s] : assignment) {
    if (s == which) out.push_back(lemma);
  }
  return out;
}

std::string to_string(Task t) {
  switch (t) {
    case Task::WiC: return "WiC";
    case Task::WSI: return "WSI";
    case Task::LscdBinary: return "LSCD-binary";
    case Task::LscdGraded: return "LSCD-graded";
    case Task::Compare: return "COMPARE";
  }
  return "WiC";
}

Task parse_task(const std::string& s) {
  if (s == "WiC") return Task::WiC;
  if (s == "WSI") return Task::WSI;
  if (s == "LSCD-binary") return Task::LscdBinary;
  if (s == "LSCD-graded") return Task::LscdGraded;
  if (s == "COMPARE") return Task::Compare;
  throw ConfigError("unknown dataset task '" + s + "'");
}

CharSpan parse_span(const std::string& field) {
  const auto colon = field.find(':');
  if (colon == std::string::npos) throw FormatError("span '" + field + "' is not start:end");
  auto a = parse_size(field.substr(0, colon));
  auto b = parse_size(field.substr(colon + 1));
  if (!a || !b) throw FormatError("span '" + field + "' is not start:end");
  return {*a, *b};
}

Rating parse_rating(const std::string& field) {
  if (field == "-" ) return std::nullopt;
  auto v = tsv::parse_int(field);
  if (!v) {
    // Some releases write ratings as floats ("4.0").
    auto d = tsv::parse_double(field);
    if (d && *d == static_cast<double>(static_cast<long long>(*d))) v = static_cast<long long>(*d);
  }
  if (!v || *v < 0 || *v > 4) throw FormatError("judgment '" + field + "' outside {0,1,2,3,4,-}");
  if (*v == 0) return std::nullopt;
  return static_cast<int>(*v);
}

std::vector<Usage> parse_uses(const fs::path& path) {
  const auto t = tsv::read(path);
  const auto c_lemma = t.require("lemma");
  const auto c_id = t.require("identifier");
  const auto c_ctx = t.require("context");
  const auto c_group = t.require("grouping");
  const auto c_span = t.require("indexes_target_token");
  const auto c_pos = t.column("pos");
  const auto c_date = t.column("date");
  const auto c_sent = t.column("indexes_target_sentence");

  std::vector<Usage> out;
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    Usage u;
    u.lemma = row[c_lemma];
    u.id = row[c_id];
    u.context = row[c_ctx];
    const auto g = tsv::parse_int(row[c_group]);
    if (!g || (*g != 1 && *g != 2)) {
      throw FormatError(row_ref(t, r) + ": grouping '" + row[c_group] +
                        "' not in {1,2}; split multi-period data into period pairs");
    }
    u.grouping = static_cast<Grouping>(*g);
    try {
      u.target = parse_span(row[c_span]);
      if (c_sent && !row[*c_sent].empty()) u.sentence = parse_span(row[*c_sent]);
      validate_usage(u);
    } catch (const FormatError& e) {
      throw FormatError(row_ref(t, r) + ": " + e.what());
    }
    if (c_pos && !row[*c_pos].empty()) u.pos = row[*c_pos];
    if (c_date && !row[*c_date].empty()) u.date = row[*c_date];
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      if (std::find(kUseColumns.begin(), kUseColumns.end(), t.header[c]) == kUseColumns.end()) {
        u.extra.emplace_back(t.header[c], row[c]);
      }
    }
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<Judgment> parse_judgments(const fs::path& path) {
  const auto t = tsv::read(path);
  const auto c1 = t.require("identifier1");
  const auto c2 = t.require("identifier2");
  const auto ca = t.require("annotator");
  const auto cj = t.require("judgment");
  std::vector<Judgment> out;
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    Judgment j;
    auto [a, b] = canonical_pair(row[c1], row[c2]);
    j.id1 = std::move(a);
    j.id2 = std::move(b);
    j.annotator = row[ca];
    try {
      j.rating = parse_rating(row[cj]);
    } catch (const FormatError& e) {
      throw FormatError(row_ref(t, r) + ": " + e.what());
    }
    out.push_back(std::move(j));
  }
  return out;
}

SenseClustering parse_clusters(const fs::path& path) {
  const auto t = tsv::read(path);
  const auto ci = t.require("identifier");
  const auto cc = t.require("cluster");
  SenseClustering out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const auto label = tsv::parse_int(row[cc]);
    if (!label || *label < -1) {
      throw FormatError(row_ref(t, r) + ": cluster label '" + row[cc] + "' is not an integer >= -1");
    }
    if (!out.assignment.emplace(row[ci], static_cast<int>(*label)).second) {
      throw FormatError(row_ref(t, r) + ": duplicate identifier " + row[ci]);
    }
  }
  return out;
}

std::map<std::string, GoldLabels> parse_gold_lscd(const fs::path& path) {
  const auto t = tsv::read(path);
  const auto cl = t.require("lemma");
  const auto cg = t.column("change_graded");
  const auto cb = t.column("change_binary");
  const auto cgain = t.column("change_binary_gain");
  const auto closs = t.column("change_binary_loss");
  const auto ccmp = t.column("COMPARE");

  auto binary = [&](std::size_t r, std::optional<std::size_t> col) -> std::optional<int> {
    if (!col || t.rows[r][*col].empty()) return std::nullopt;
    const auto& f = t.rows[r][*col];
    auto v = tsv::parse_double(f);
    if (!v || (*v != 0.0 && *v != 1.0)) {
      throw FormatError(row_ref(t, r) + ": " + t.header[*col] + " '" + f + "' not in {0,1}");
    }
    return static_cast<int>(*v);
  };
  auto real = [&](std::size_t r, std::optional<std::size_t> col) -> std::optional<double> {
    if (!col || t.rows[r][*col].empty()) return std::nullopt;
    const auto& f = t.rows[r][*col];
    auto v = tsv::parse_double(f);
    if (!v) throw FormatError(row_ref(t, r) + ": " + t.header[*col] + " '" + f + "' is not numeric");
    return v;
  };

  std::map<std::string, GoldLabels> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    GoldLabels g;
    g.lemma = t.rows[r][cl];
    g.change_graded = real(r, cg);
    if (g.change_graded && (*g.change_graded < 0.0 || *g.change_graded > 1.0)) {
      throw FormatError(row_ref(t, r) + ": change_graded outside [0,1]");
    }
    g.change_binary = binary(r, cb);
    g.change_binary_gain = binary(r, cgain);
    g.change_binary_loss = binary(r, closs);
    g.compare = real(r, ccmp);
    if (!g.change_graded && !g.change_binary && !g.change_binary_gain && !g.change_binary_loss &&
        !g.compare) {
      throw FormatError(row_ref(t, r) + ": lemma " + g.lemma + " has no gold label");
    }
    if (!out.emplace(g.lemma, g).second) {
      throw FormatError(row_ref(t, r) + ": duplicate lemma " + g.lemma);
    }
  }
  return out;
}

Split load_split(const fs::path& path) {
  const auto t = tsv::read(path);
  Split out;
  if (t.header.empty()) return out;
  const auto cl = t.require("lemma");
  const auto cs = t.require("split");
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    SplitName s;
    try {
      s = parse_split_name(t.rows[r][cs]);
    } catch (const FormatError& e) {
      throw FormatError(row_ref(t, r) + ": " + e.what());
    }
    if (!out.assignment.emplace(t.rows[r][cl], s).second) {
      throw FormatError(row_ref(t, r) + ": lemma " + t.rows[r][cl] + " listed twice");
    }
  }
  return out;
}

void write_uses(const fs::path& path, const std::vector<Usage>& usages) {
  std::vector<std::string> header = kUseColumns;
  if (!usages.empty()) {
    for (const auto& [k, v] : usages.front().extra) header.push_back(k);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& u : usages) {
    std::vector<std::string> row = {u.lemma,
                                    u.pos.value_or(""),
                                    u.date.value_or(""),
                                    std::to_string(static_cast<int>(u.grouping)),
                                    u.id,
                                    u.context,
                                    format_span(u.target),
                                    u.sentence ? format_span(*u.sentence) : ""};
    for (std::size_t c = kUseColumns.size(); c < header.size(); ++c) {
      std::string value;
      for (const auto& [k, v] : u.extra) {
        if (k == header[c]) value = v;
      }
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  tsv::write(path, header, rows);
}

void write_judgments(const fs::path& path, const std::vector<Judgment>& judgments) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& j : judgments) {
    rows.push_back({j.id1, j.id2, j.annotator, j.rating ? std::to_string(*j.rating) : "0"});
  }
  tsv::write(path, {"identifier1", "identifier2", "annotator", "judgment"}, rows);
}

void write_clusters(const fs::path& path, const SenseClustering& clustering) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [id, label] : clustering.assignment) rows.push_back({id, std::to_string(label)});
  tsv::write(path, {"identifier", "cluster"}, rows);
}

void write_gold_lscd(const fs::path& path, const std::map<std::string, GoldLabels>& gold) {
  auto opt_real = [](const std::optional<double>& v) { return v ? tsv::format_double(*v) : ""; };
  auto opt_int = [](const std::optional<int>& v) { return v ? std::to_string(*v) : ""; };
  std::vector<std::vector<std::string>> rows;
  for (const auto& [lemma, g] : gold) {
    rows.push_back({lemma, opt_real(g.change_graded), opt_int(g.change_binary),
                    opt_int(g.change_binary_gain), opt_int(g.change_binary_loss),
                    opt_real(g.compare)});
  }
  tsv::write(path,
             {"lemma", "change_graded", "change_binary", "change_binary_gain", "change_binary_loss",
              "COMPARE"},
             rows);
}

void write_split(const fs::path& path, const Split& split) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [lemma, s] : split.assignment) rows.push_back({lemma, to_string(s)});
  tsv::write(path, {"lemma", "split"}, rows);
}

Split make_seeded_split(std::vector<std::string> lemmas, std::uint64_t seed) {
  std::sort(lemmas.begin(), lemmas.end());
  lemmas.erase(std::unique(lemmas.begin(), lemmas.end()), lemmas.end());
  Rng rng(seed);
  shuffle(rng, lemmas);
  const std::size_t n = lemmas.size();
  const std::size_t n_train = (n * 60) / 100;
  const std::size_t n_dev = (n * 20) / 100;
  Split out;
  for (std::size_t i = 0; i < n; ++i) {
    SplitName s = i < n_train ? SplitName::Train : (i < n_train + n_dev ? SplitName::Dev : SplitName::Test);
    out.assignment.emplace(lemmas[i], s);
  }
  return out;
}

DatasetManifest DatasetManifest::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("manifest " + path.string() + ": " + e.what());
  }
  const fs::path base = path.parent_path();
  auto resolve = [&base](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

  DatasetManifest m;
  try {
    m.name = j.at("name").get<std::string>();
    m.version = j.value("version", "");
    m.language = j.value("language", "");
    m.aggregation = parse_aggregation(j.value("aggregation", "median"));
    for (const auto& t : j.at("tasks")) m.tasks.insert(parse_task(t.get<std::string>()));
    for (const auto& l : j.at("lemmas")) {
      LemmaFiles f;
      f.lemma = l.at("lemma").get<std::string>();
      f.uses = resolve(l.at("uses").get<std::string>());
      if (l.contains("judgments")) f.judgments = resolve(l.at("judgments").get<std::string>());
      if (l.contains("clusters")) f.clusters = resolve(l.at("clusters").get<std::string>());
      m.lemmas.push_back(std::move(f));
    }
    if (j.contains("gold")) m.gold = resolve(j.at("gold").get<std::string>());
    if (j.contains("split")) m.split = resolve(j.at("split").get<std::string>());
    m.binary_min_attestations = j.value("binary_M", 1);
    m.binary_max_attestations = j.value("binary_K", 0);
  } catch (const json::exception& e) {
    throw ConfigError("manifest " + path.string() + ": " + e.what());
  }
  std::sort(m.lemmas.begin(), m.lemmas.end(),
            [](const LemmaFiles& a, const LemmaFiles& b) { return a.lemma < b.lemma; });
  for (std::size_t i = 1; i < m.lemmas.size(); ++i) {
    if (m.lemmas[i].lemma == m.lemmas[i - 1].lemma) {
      throw ConfigError("manifest lists lemma " + m.lemmas[i].lemma + " twice");
    }
  }
  return m;
}

void DatasetManifest::save(const fs::path& path) const {
  const fs::path base = path.parent_path();
  auto rel = [&base](const fs::path& p) { return p.lexically_relative(base).generic_string(); };
  json j;
  j["name"] = name;
  j["version"] = version;
  j["language"] = language;
  j["aggregation"] = to_string(aggregation);
  j["tasks"] = json::array();
  for (Task t : tasks) j["tasks"].push_back(to_string(t));
  j["lemmas"] = json::array();
  for (const auto& l : lemmas) {
    json e;
    e["lemma"] = l.lemma;
    e["uses"] = rel(l.uses);
    if (!l.judgments.empty()) e["judgments"] = rel(l.judgments);
    if (l.clusters) e["clusters"] = rel(*l.clusters);
    j["lemmas"].push_back(e);
  }
  if (gold) j["gold"] = rel(*gold);
  if (split) j["split"] = rel(*split);
  j["binary_M"] = binary_min_attestations;
  j["binary_K"] = binary_max_attestations;
  fs::create_directories(base);
  std::ofstream out(path, std::ios::trunc);
  out << j.dump(2) << "\n";
}

const LemmaData* Dataset::find(const std::string& lemma) const {
  auto it = std::lower_bound(lemmas.begin(), lemmas.end(), lemma,
                             [](const LemmaData& d, const std::string& l) { return d.lemma < l; });
  return (it != lemmas.end() && it->lemma == lemma) ? &*it : nullptr;
}

void check_task_support(const Dataset& ds) {
  const auto& m = ds.manifest;
  auto fail = [&m](Task t, const std::string& why) {
    throw ConfigError("dataset " + m.name + " declares " + to_string(t) + " but " + why);
  };
  for (Task t : m.tasks) {
    switch (t) {
      case Task::WiC:
        for (const auto& l : ds.lemmas) {
          if (l.judgments.empty()) fail(t, "lemma " + l.lemma + " has no judgments");
        }
        break;
      case Task::WSI:
        for (const auto& l : ds.lemmas) {
          if (!l.clusters) fail(t, "lemma " + l.lemma + " has no clusters file");
        }
        break;
      case Task::LscdBinary:
      case Task::LscdGraded:
      case Task::Compare:
        for (const auto& l : ds.lemmas) {
          auto it = ds.gold.find(l.lemma);
          if (it == ds.gold.end()) fail(t, "lemma " + l.lemma + " has no gold row");
          const auto& g = it->second;
          if (t == Task::LscdBinary && !g.change_binary) fail(t, "lemma " + l.lemma + " lacks change_binary");
          if (t == Task::LscdGraded && !g.change_graded) fail(t, "lemma " + l.lemma + " lacks change_graded");
          if (t == Task::Compare && !g.compare) fail(t, "lemma " + l.lemma + " lacks COMPARE");
        }
        break;
    }
  }
}

Dataset load_dataset(const fs::path& manifest_path) {
  Dataset ds;
  ds.manifest = DatasetManifest::load(manifest_path);
  if (ds.manifest.gold) ds.gold = parse_gold_lscd(*ds.manifest.gold);
  if (ds.manifest.split) ds.split = load_split(*ds.manifest.split);

  std::vector<std::string> problems;
  for (const auto& f : ds.manifest.lemmas) {
    LemmaData d;
    d.lemma = f.lemma;
    d.usages = parse_uses(f.uses);
    if (!f.judgments.empty()) d.judgments = parse_judgments(f.judgments);
    if (f.clusters) d.clusters = parse_clusters(*f.clusters);

    std::set<std::string> ids;
    for (const auto& u : d.usages) {
      if (u.lemma != f.lemma) {
        problems.push_back("usage " + u.id + " has lemma " + u.lemma + ", filed under " + f.lemma);
      }
      if (!ids.insert(u.id).second) problems.push_back("lemma " + f.lemma + ": duplicate usage id " + u.id);
    }
    std::set<std::string> dangling;
    for (const auto& j : d.judgments) {
      if (!ids.count(j.id1)) dangling.insert(j.id1);
      if (!ids.count(j.id2)) dangling.insert(j.id2);
    }
    if (d.clusters) {
      for (const auto& [id, label] : d.clusters->assignment) {
        if (!ids.count(id)) dangling.insert(id);
      }
    }
    for (const auto& id : dangling) problems.push_back("lemma " + f.lemma + ": dangling usage id " + id);
    ds.lemmas.push_back(std::move(d));
  }
  if (!problems.empty()) {
    std::string msg = "dataset " + ds.manifest.name + " failed consistency checks:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw FormatError(msg);
  }
  check_task_support(ds);
  return ds;
}

}  // namespace lscd
