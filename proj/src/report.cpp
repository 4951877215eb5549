#include "lscd/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include "lscd/error.hpp"
#include "lscd/ingest.hpp"
#include "lscd/tsv.hpp"

namespace lscd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string opt(const std::optional<double>& v) { return v ? tsv::format_double(*v) : ""; }

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

ReportFormat parse_report_format(const std::string& s) {
  if (s == "tsv") return ReportFormat::Tsv;
  if (s == "json") return ReportFormat::Json;
  if (s == "plot") return ReportFormat::Plot;
  throw ConfigError("unknown report format '" + s + "'");
}

std::string render_predictions_tsv(const EvalReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : r.predictions) rows.push_back({p.item, p.measure, opt(p.value), p.orientation});
  return tsv::render({"item", "measure", "value", "orientation"}, rows);
}

std::string render_metrics_tsv(const EvalReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& m : r.metrics) {
    rows.push_back({m.name, opt(m.value), tsv::format_double(m.coverage), std::to_string(m.n), m.note});
  }
  return tsv::render({"metric", "value", "coverage", "n", "note"}, rows);
}

json report_to_json(const EvalReport& r) {
  json j;
  j["config"] = {{"name", r.config_name}, {"hash", r.config_hash}, {"seed", r.seed}};
  j["dataset"] = {{"name", r.dataset}, {"version", r.dataset_version}};
  j["task"] = r.task;
  j["measure"] = r.measure;
  j["metrics"] = json::array();
  for (const auto& m : r.metrics) {
    j["metrics"].push_back({{"name", m.name},
                            {"value", m.value ? json(*m.value) : json(nullptr)},
                            {"coverage", m.coverage},
                            {"n", m.n},
                            {"note", m.note}});
  }
  j["predictions"] = json::array();
  for (const auto& p : r.predictions) {
    j["predictions"].push_back({{"item", p.item},
                                {"measure", p.measure},
                                {"value", p.value ? json(*p.value) : json(nullptr)},
                                {"orientation", p.orientation}});
  }
  j["warnings"] = r.warnings;
  return j;
}

EvalReport report_from_json(const json& j) {
  EvalReport r;
  try {
    r.config_name = j.at("config").at("name").get<std::string>();
    r.config_hash = j.at("config").at("hash").get<std::string>();
    r.seed = j.at("config").at("seed").get<std::uint64_t>();
    r.dataset = j.at("dataset").at("name").get<std::string>();
    r.dataset_version = j.at("dataset").at("version").get<std::string>();
    r.task = j.at("task").get<std::string>();
    r.measure = j.at("measure").get<std::string>();
    for (const auto& m : j.at("metrics")) {
      MetricResult x;
      x.name = m.at("name").get<std::string>();
      if (!m.at("value").is_null()) x.value = m.at("value").get<double>();
      x.coverage = m.at("coverage").get<double>();
      x.n = m.at("n").get<std::size_t>();
      x.note = m.at("note").get<std::string>();
      r.metrics.push_back(std::move(x));
    }
    for (const auto& p : j.at("predictions")) {
      Prediction x;
      x.item = p.at("item").get<std::string>();
      x.measure = p.at("measure").get<std::string>();
      if (!p.at("value").is_null()) x.value = p.at("value").get<double>();
      x.orientation = p.at("orientation").get<std::string>();
      r.predictions.push_back(std::move(x));
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("report JSON: ") + e.what());
  }
  return r;
}

EvalReport read_report_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open report " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError("report " + path.string() + ": " + e.what());
  }
  return report_from_json(j);
}

std::vector<MetricResult> parse_metrics_tsv(const fs::path& path) {
  const auto t = tsv::read(path);
  const auto cm = t.require("metric"), cv = t.require("value"), cc = t.require("coverage"), cn = t.require("n"),
             cnote = t.require("note");
  std::vector<MetricResult> out;
  for (const auto& row : t.rows) {
    MetricResult m;
    m.name = row[cm];
    if (!row[cv].empty()) {
      m.value = tsv::parse_double(row[cv]);
      if (!m.value) throw FormatError(path.string() + ": bad metric value '" + row[cv] + "'");
    }
    auto cov = tsv::parse_double(row[cc]);
    auto n = tsv::parse_int(row[cn]);
    if (!cov || !n) throw FormatError(path.string() + ": bad coverage or count");
    m.coverage = *cov;
    m.n = static_cast<std::size_t>(*n);
    m.note = row[cnote];
    out.push_back(std::move(m));
  }
  return out;
}

std::string headline_metric(const std::string& task) {
  if (task == "wic-ordinal") return "krippendorff_alpha";
  if (task == "wsi") return "ari_mean";
  if (task == "lscd-binary") return "f1";
  return "spearman";
}

std::string render_plot_svg(const std::vector<EvalReport>& reports) {
  std::vector<std::string> datasets, configs;
  std::map<std::pair<std::string, std::string>, std::optional<double>> values;
  std::string task = reports.empty() ? "" : reports.front().task;
  for (const auto& r : reports) {
    const std::string ds = r.dataset + (r.dataset_version.empty() ? "" : " " + r.dataset_version);
    const std::string cfg = r.config_name.empty() ? r.measure : r.config_name;
    if (std::find(datasets.begin(), datasets.end(), ds) == datasets.end()) datasets.push_back(ds);
    if (std::find(configs.begin(), configs.end(), cfg) == configs.end()) configs.push_back(cfg);
    const MetricResult* m = r.metric(headline_metric(r.task));
    values[{ds, cfg}] = m ? m->value : std::nullopt;
  }

  const double bar_w = 24, gap = 32, left = 60, top = 40, height = 240;
  const double group_w = bar_w * static_cast<double>(std::max<std::size_t>(configs.size(), 1)) + gap;
  const double width = left + group_w * static_cast<double>(std::max<std::size_t>(datasets.size(), 1)) + 160;
  const double total_h = top + height + 80;
  const char* palette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};
  // Axis spans [-1, 1] so negative correlations stay visible.
  auto y_of = [&](double v) { return top + height * (1.0 - (std::clamp(v, -1.0, 1.0) + 1.0) / 2.0); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width, 0) + "\" height=\"" + fixed(total_h, 0) +
       "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<text x=\"" + fixed(left, 0) + "\" y=\"20\" font-size=\"14\">" + xml_escape(task) + ": " +
       xml_escape(headline_metric(task)) + "</text>\n";
  for (double tick : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const std::string y = fixed(y_of(tick), 1);
    s += "<line x1=\"" + fixed(left, 0) + "\" x2=\"" + fixed(width - 160, 0) + "\" y1=\"" + y + "\" y2=\"" + y +
         "\" stroke=\"#ddd\"/>\n";
    s += "<text x=\"" + fixed(left - 6, 0) + "\" y=\"" + y + "\" text-anchor=\"end\">" + fixed(tick, 1) + "</text>\n";
  }
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    const double gx = left + gap / 2 + group_w * static_cast<double>(d);
    for (std::size_t c = 0; c < configs.size(); ++c) {
      const auto v = values[{datasets[d], configs[c]}];
      if (!v) continue;
      const double x = gx + bar_w * static_cast<double>(c);
      const double y0 = y_of(0.0), y1 = y_of(*v);
      s += "<rect x=\"" + fixed(x, 1) + "\" y=\"" + fixed(std::min(y0, y1), 1) + "\" width=\"" + fixed(bar_w - 2, 1) +
           "\" height=\"" + fixed(std::abs(y1 - y0), 1) + "\" fill=\"" + palette[c % 8] + "\"><title>" +
           xml_escape(configs[c]) + " / " + xml_escape(datasets[d]) + ": " + fixed(*v, 4) + "</title></rect>\n";
    }
    s += "<text x=\"" + fixed(gx, 1) + "\" y=\"" + fixed(top + height + 16, 1) + "\">" + xml_escape(datasets[d]) +
         "</text>\n";
  }
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const double y = top + 14.0 * static_cast<double>(c);
    s += "<rect x=\"" + fixed(width - 150, 0) + "\" y=\"" + fixed(y, 0) + "\" width=\"10\" height=\"10\" fill=\"" +
         palette[c % 8] + "\"/>\n";
    s += "<text x=\"" + fixed(width - 135, 0) + "\" y=\"" + fixed(y + 9, 0) + "\">" + xml_escape(configs[c]) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

void write_report(const EvalReport& r, const fs::path& dir, const std::set<ReportFormat>& formats) {
  fs::create_directories(dir);
  if (formats.count(ReportFormat::Tsv)) {
    write_text(dir / "predictions.tsv", render_predictions_tsv(r));
    write_text(dir / "metrics.tsv", render_metrics_tsv(r));
    for (const auto& [lemma, c] : r.clusterings) write_clusters(dir / "clusters" / (lemma + ".tsv"), c);
  }
  if (formats.count(ReportFormat::Json)) write_text(dir / "report.json", report_to_json(r).dump(2) + "\n");
  if (formats.count(ReportFormat::Plot)) write_plots({r}, dir);
  write_text(dir / "timing.json", json({{"seconds", r.seconds}}).dump() + "\n");
}

void write_plots(const std::vector<EvalReport>& reports, const fs::path& dir) {
  std::map<std::string, std::vector<EvalReport>> by_task;
  for (const auto& r : reports) by_task[r.task].push_back(r);
  for (const auto& [task, rs] : by_task) write_text(dir / ("plot_" + task + ".svg"), render_plot_svg(rs));
}

}  // namespace lscd
