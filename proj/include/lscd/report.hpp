#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lscd/pipeline.hpp"

namespace lscd {

enum class ReportFormat { Tsv, Json, Plot };

ReportFormat parse_report_format(const std::string& s);

/// predictions.tsv: item, measure, value, orientation (MISSING values are empty).
std::string render_predictions_tsv(const EvalReport& r);
/// metrics.tsv: metric, value, coverage, n, note.
std::string render_metrics_tsv(const EvalReport& r);

nlohmann::json report_to_json(const EvalReport& r);
EvalReport report_from_json(const nlohmann::json& j);
EvalReport read_report_json(const std::filesystem::path& path);

std::vector<MetricResult> parse_metrics_tsv(const std::filesystem::path& path);

/// Metric plotted for a task (spearman, krippendorff_alpha, ari_mean or f1).
std::string headline_metric(const std::string& task);

/// Grouped bar chart as SVG: one group per dataset, one bar per configuration.
std::string render_plot_svg(const std::vector<EvalReport>& reports);

/// Writes the requested formats into `dir`. TSV also writes clusters/<lemma>.tsv
/// for runs that clustered. Wall time goes to timing.json, outside the report files.
void write_report(const EvalReport& r, const std::filesystem::path& dir, const std::set<ReportFormat>& formats);

/// One SVG per task found in `reports`, named plot_<task>.svg.
void write_plots(const std::vector<EvalReport>& reports, const std::filesystem::path& dir);

}  // namespace lscd
