#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ehoikit/errors.hpp"
#include "ehoikit/report.hpp"
#include "fixture.hpp"

using namespace ehoi;

namespace {

EvalReport sample_report() {
  EvalReport r;
  r.label = "baseline";
  r.config.iou_threshold = 0.5;
  r.config.interpolation = Interpolation::kCoco101;
  r.ap_hand = {true, 91.25, 20, 3, 2};
  r.map_obj = {true, 64.5, 15, 5, 4};
  r.ap_hand_side = {true, 88.0, 19, 4, 3};
  r.ap_hand_state = {true, 85.75, 18, 5, 4};
  r.map_hand_obj = {true, 60.0, 14, 6, 5};
  r.map_all = {false, 0.0, 0, 0, 0};
  r.per_category.push_back({1, "mug", true, 64.5, 9});
  r.per_category.push_back({2, "plate", false, 0.0, 0});
  r.mar_obj_defined = true;
  r.mar_obj = 70.5;
  r.counts = {12, 12, 24, 25, 60, 58};
  return r;
}

}  // namespace

TEST_CASE("report json roundtrips through the parser") {
  const EvalReport r = sample_report();
  const ReportEntry entry = parse_report(report_to_json(r));
  CHECK(entry.label == "baseline");
  CHECK(entry.metrics[0] == 91.25);
  CHECK(entry.metrics[1] == 64.5);
  CHECK(entry.metrics[2] == 88.0);
  CHECK(entry.metrics[3] == 85.75);
  CHECK(entry.metrics[4] == 60.0);
  CHECK_FALSE(entry.metrics[5].has_value());
  CHECK(entry.mar_obj == 70.5);
  CHECK(entry == report_to_entry(r));
}

TEST_CASE("report json spells out config, assignment and counts") {
  const std::string text = report_to_json(sample_report());
  CHECK(text.find("\"schema_version\": 1") != std::string::npos);
  CHECK(text.find("\"iou_threshold\": 0.5") != std::string::npos);
  CHECK(text.find("\"interpolation\": \"coco101\"") != std::string::npos);
  CHECK(text.find("\"map_all\": null") != std::string::npos);
  CHECK(text.find("\"assignment\"") != std::string::npos);
  CHECK(text.find("\"per_category\"") != std::string::npos);
  CHECK(text.find("\"mug\"") != std::string::npos);
  CHECK(text.find("\"gt_frames\": 12") != std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("bad report documents are rejected") {
  CHECK_THROWS_AS(parse_report("not json"), ParseError);
  CHECK_THROWS_AS(parse_report("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_report("{\"label\": \"x\"}"), ParseError);
  CHECK_THROWS_AS(parse_report("{\"label\": 3}"), ParseError);
  CHECK_THROWS_AS(
      parse_report("{\"label\": \"x\", \"ap_hand\": \"high\", \"map_obj\": null, "
                   "\"ap_hand_side\": null, \"ap_hand_state\": null, "
                   "\"map_hand_obj\": null, \"map_all\": null}"),
      ParseError);
  CHECK_THROWS_AS(parse_report_file("/nonexistent/report.json"), ParseError);
}

TEST_CASE("the comparison table bolds column winners") {
  ReportEntry a;
  a.label = "run-a";
  a.metrics = {90.0, 50.0, 80.0, 70.0, 40.0, std::nullopt};
  ReportEntry b;
  b.label = "run-b";
  b.metrics = {85.0, 55.0, 80.0, std::nullopt, 45.0, std::nullopt};
  const std::string table = report_table({a, b});

  CHECK(table.find("| Method | AP Hand | mAP Obj | AP H+Side | AP H+State | mAP H+Obj |"
                   " mAP All |") != std::string::npos);
  CHECK(table.find("**90.00**") != std::string::npos);   // run-a wins column 0
  CHECK(table.find("**55.00**") != std::string::npos);   // run-b wins column 1
  CHECK(table.find(" 85.00 ") != std::string::npos);     // loser unbolded
  CHECK(table.find("**70.00**") != std::string::npos);   // sole defined value wins
  const std::size_t first_tie = table.find("**80.00**");
  CHECK(first_tie != std::string::npos);
  CHECK(table.find("**80.00**", first_tie + 1) != std::string::npos);  // ties all bold
  CHECK(table.find(" - |") != std::string::npos);
}

TEST_CASE("series json carries one point per entry and metric") {
  ReportEntry a;
  a.label = "run-a";
  a.metrics[0] = 90.0;
  ReportEntry b;
  b.label = "run-b";
  const std::string text = report_series_json({a, b});
  CHECK(text.find("\"series\"") != std::string::npos);
  CHECK(text.find("\"ap_hand\"") != std::string::npos);
  CHECK(text.find("\"map_all\"") != std::string::npos);
  CHECK(text.find("\"label\": \"run-a\"") != std::string::npos);
  CHECK(text.find("\"value\": 90.0") != std::string::npos);
  CHECK(text.find("\"value\": null") != std::string::npos);
  CHECK(text.find("\"table\"") != std::string::npos);
}

TEST_CASE("metric headers are stable") {
  const auto& names = metric_names();
  CHECK(names[0] == "AP Hand");
  CHECK(names[5] == "mAP All");
}

TEST_CASE("rendered text summarizes categories and counts") {
  const std::string text = render_report_text(sample_report());
  CHECK(text.find("| baseline |") != std::string::npos);
  CHECK(text.find("Per-category active-object AP:") != std::string::npos);
  CHECK(text.find("mug") != std::string::npos);
  CHECK(text.find("(gt 9)") != std::string::npos);
  CHECK(text.find("mAR Obj: 70.50") != std::string::npos);
  CHECK(text.find("frames 12/12, hands 24/25, objects 60/58") != std::string::npos);
}

TEST_CASE("an end-to-end evaluation renders and roundtrips") {
  const FrameSet gt = fixture::reference_dataset();
  const FrameSet dets = fixture::perfect_detections(gt);
  const EvalReport report = evaluate(gt, dets, {}, "perfect");
  const ReportEntry entry = parse_report(report_to_json(report));
  CHECK(entry.label == "perfect");
  for (int i = 0; i < kMetricColumns; ++i) {
    REQUIRE(entry.metrics[i].has_value());
    CHECK(*entry.metrics[i] == 100.0);
  }
  const std::string table = report_table({entry});
  CHECK(table.find("**100.00**") != std::string::npos);
}
