#ifndef EHOIKIT_REPORT_HPP_
#define EHOIKIT_REPORT_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ehoikit/metrics.hpp"

namespace ehoi {

inline constexpr int kMetricColumns = 6;

// Column headers in report order.
const std::array<std::string, kMetricColumns>& metric_names();

// One evaluation run, reduced to what tables and plots need.
struct ReportEntry {
  std::string label;
  std::array<std::optional<double>, kMetricColumns> metrics;  // percents
  std::optional<double> mar_obj;

  bool operator==(const ReportEntry&) const = default;
};

std::string report_to_json(const EvalReport& report);
ReportEntry report_to_entry(const EvalReport& report);

// Parses a JSON document produced by report_to_json.
ReportEntry parse_report(const std::string& text);
ReportEntry parse_report_file(const std::string& path);

// Markdown table, one row per entry, the best value of each column in bold
// (ties all bold). Undefined metrics render as "-".
std::string report_table(const std::vector<ReportEntry>& entries);

// Per-metric value series for downstream plotting:
// {"series": {"ap_hand": [{"label": ..., "value": ...}, ...], ...}}.
std::string report_series_json(const std::vector<ReportEntry>& entries);

// Human-readable evaluation summary: the table plus per-category breakdown.
std::string render_report_text(const EvalReport& report);

}  // namespace ehoi

#endif  // EHOIKIT_REPORT_HPP_
