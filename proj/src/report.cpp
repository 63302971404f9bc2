#include "ehoikit/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ehoikit/errors.hpp"

namespace ehoi {

using Json = nlohmann::ordered_json;

namespace {

const std::array<std::string, kMetricColumns> kMetricKeys = {
    "ap_hand", "map_obj", "ap_hand_side", "ap_hand_state", "map_hand_obj", "map_all"};

const std::array<std::string, kMetricColumns> kMetricHeaders = {
    "AP Hand", "mAP Obj", "AP H+Side", "AP H+State", "mAP H+Obj", "mAP All"};

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

Json entry_value(const MetricEntry& e) {
  if (!e.defined) return nullptr;
  return e.percent;
}

Json entry_counts(const MetricEntry& e) {
  Json j;
  j["tp"] = e.tp;
  j["fp"] = e.fp;
  j["fn"] = e.fn;
  return j;
}

std::array<const MetricEntry*, kMetricColumns> entries_of(const EvalReport& r) {
  return {&r.ap_hand,       &r.map_obj,      &r.ap_hand_side,
          &r.ap_hand_state, &r.map_hand_obj, &r.map_all};
}

}  // namespace

const std::array<std::string, kMetricColumns>& metric_names() { return kMetricHeaders; }

std::string report_to_json(const EvalReport& report) {
  Json doc;
  doc["schema_version"] = 1;
  doc["label"] = report.label;
  doc["config"] = Json{{"iou_threshold", report.config.iou_threshold},
                       {"interpolation", to_string(report.config.interpolation)}};
  const auto entries = entries_of(report);
  for (int i = 0; i < kMetricColumns; ++i) doc[kMetricKeys[i]] = entry_value(*entries[i]);
  doc["mar_obj"] = report.mar_obj_defined ? Json(report.mar_obj) : Json(nullptr);
  doc["assignment"] = Json::object();
  for (int i = 0; i < kMetricColumns; ++i)
    doc["assignment"][kMetricKeys[i]] = entry_counts(*entries[i]);
  doc["per_category"] = Json::array();
  for (const auto& c : report.per_category) {
    Json jc;
    jc["id"] = c.id;
    jc["name"] = c.name;
    jc["ap"] = c.defined ? Json(c.percent) : Json(nullptr);
    jc["gt_count"] = c.gt_count;
    doc["per_category"].push_back(std::move(jc));
  }
  doc["counts"] = Json{{"gt_frames", report.counts.gt_frames},
                       {"det_frames", report.counts.det_frames},
                       {"gt_hands", report.counts.gt_hands},
                       {"det_hands", report.counts.det_hands},
                       {"gt_objects", report.counts.gt_objects},
                       {"det_objects", report.counts.det_objects}};
  return doc.dump(2) + "\n";
}

ReportEntry report_to_entry(const EvalReport& report) {
  ReportEntry e;
  e.label = report.label;
  const auto entries = entries_of(report);
  for (int i = 0; i < kMetricColumns; ++i)
    if (entries[i]->defined) e.metrics[i] = entries[i]->percent;
  if (report.mar_obj_defined) e.mar_obj = report.mar_obj;
  return e;
}

ReportEntry parse_report(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("report: top level must be a JSON object");
  ReportEntry entry;
  auto lit = doc.find("label");
  if (lit == doc.end() || !lit->is_string())
    throw ParseError("report: missing string key 'label'");
  entry.label = lit->get<std::string>();
  for (int i = 0; i < kMetricColumns; ++i) {
    auto it = doc.find(kMetricKeys[i]);
    if (it == doc.end())
      throw ParseError("report '" + entry.label + "': missing key '" + kMetricKeys[i] + "'");
    if (it->is_null()) continue;
    if (!it->is_number())
      throw ParseError("report '" + entry.label + "': key '" + kMetricKeys[i] +
                       "' is not a number");
    entry.metrics[i] = it->get<double>();
  }
  auto mit = doc.find("mar_obj");
  if (mit != doc.end() && mit->is_number()) entry.mar_obj = mit->get<double>();
  return entry;
}

ReportEntry parse_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_report(ss.str());
}

std::string report_table(const std::vector<ReportEntry>& entries) {
  std::array<std::optional<double>, kMetricColumns> best;
  for (const auto& e : entries)
    for (int i = 0; i < kMetricColumns; ++i)
      if (e.metrics[i] && (!best[i] || *e.metrics[i] > *best[i])) best[i] = e.metrics[i];
  std::string out = "| Method |";
  for (const auto& h : kMetricHeaders) out += " " + h + " |";
  out += "\n|---|";
  for (int i = 0; i < kMetricColumns; ++i) out += "---|";
  out += "\n";
  for (const auto& e : entries) {
    out += "| " + e.label + " |";
    for (int i = 0; i < kMetricColumns; ++i) {
      if (!e.metrics[i]) {
        out += " - |";
        continue;
      }
      std::string v = format_value(*e.metrics[i]);
      if (best[i] && *e.metrics[i] == *best[i]) v = "**" + v + "**";
      out += " " + v + " |";
    }
    out += "\n";
  }
  return out;
}

std::string report_series_json(const std::vector<ReportEntry>& entries) {
  Json doc;
  doc["schema_version"] = 1;
  doc["series"] = Json::object();
  for (int i = 0; i < kMetricColumns; ++i) {
    Json arr = Json::array();
    for (const auto& e : entries) {
      Json point;
      point["label"] = e.label;
      point["value"] = e.metrics[i] ? Json(*e.metrics[i]) : Json(nullptr);
      arr.push_back(std::move(point));
    }
    doc["series"][kMetricKeys[i]] = std::move(arr);
  }
  doc["table"] = report_table(entries);
  return doc.dump(2) + "\n";
}

std::string render_report_text(const EvalReport& report) {
  std::string out = report_table({report_to_entry(report)});
  out += "\nPer-category active-object AP:\n";
  for (const auto& c : report.per_category) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-32s %8s  (gt %llu)\n", c.name.c_str(),
                  c.defined ? format_value(c.percent).c_str() : "-",
                  static_cast<unsigned long long>(c.gt_count));
    out += buf;
  }
  if (report.mar_obj_defined) out += "\nmAR Obj: " + format_value(report.mar_obj) + "\n";
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "Counts (gt/det): frames %llu/%llu, hands %llu/%llu, objects %llu/%llu\n",
                static_cast<unsigned long long>(report.counts.gt_frames),
                static_cast<unsigned long long>(report.counts.det_frames),
                static_cast<unsigned long long>(report.counts.gt_hands),
                static_cast<unsigned long long>(report.counts.det_hands),
                static_cast<unsigned long long>(report.counts.gt_objects),
                static_cast<unsigned long long>(report.counts.det_objects));
  out += buf;
  return out;
}

}  // namespace ehoi
