#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ehoikit/augment.hpp"
#include "ehoikit/dataset.hpp"
#include "ehoikit/errors.hpp"
#include "ehoikit/matcher.hpp"
#include "ehoikit/metrics.hpp"
#include "ehoikit/parallel.hpp"
#include "ehoikit/report.hpp"
#include "ehoikit/rng.hpp"

namespace fs = std::filesystem;

namespace {

struct UsageError {
  std::string message;
};

std::optional<std::string> env_out_dir() {
  const char* v = std::getenv("EHOIKIT_OUT_DIR");
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

// Empty flag value falls back to $EHOIKIT_OUT_DIR/<default_name>; an empty
// result means "no file output".
std::string resolve_out(const std::string& flag_value, const std::string& default_name,
                        bool required) {
  if (!flag_value.empty()) return flag_value;
  if (const auto dir = env_out_dir()) return (fs::path(*dir) / default_name).string();
  if (required)
    throw UsageError{"no output path given: pass --out or set EHOIKIT_OUT_DIR"};
  return "";
}

void write_text_file(const std::string& path, const std::string& text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw ehoi::ParseError("cannot write file: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ehoi::ParseError("cannot write file: " + path);
}

std::string mangle_path(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (const char c : name) {
    if (c == '/')
      out += "__";
    else
      out += c;
  }
  return out;
}

struct EvaluateArgs {
  std::string gt, dets, out, label, interp = "coco101";
  double iou = 0.5;
  double state_threshold = 0.5;
  int jobs = 1;
};

int run_evaluate(const EvaluateArgs& args) {
  ehoi::ParseOptions popts;
  popts.state_threshold = args.state_threshold;
  const ehoi::FrameSet gt = ehoi::parse_annotations_file(args.gt, popts);
  const ehoi::FrameSet dets = ehoi::parse_detections_file(args.dets, popts);
  ehoi::ApConfig config;
  config.iou_threshold = args.iou;
  config.interpolation = ehoi::interpolation_from_string(args.interp);
  config.jobs = args.jobs;
  if (config.iou_threshold <= 0.0 || config.iou_threshold > 1.0)
    throw ehoi::ValidationError("--iou must lie in (0, 1]");
  const std::string label =
      args.label.empty() ? fs::path(args.dets).stem().string() : args.label;
  const ehoi::EvalReport report = ehoi::evaluate(gt, dets, config, label);
  std::cout << ehoi::render_report_text(report);
  const std::string out = resolve_out(args.out, "report.json", false);
  if (!out.empty()) {
    write_text_file(out, ehoi::report_to_json(report));
    std::cout << "report written to " << out << "\n";
  }
  return 0;
}

struct MatchArgs {
  std::string dets, gt, out;
  double state_threshold = 0.5;
  int jobs = 1;
};

int run_match(const MatchArgs& args) {
  ehoi::ParseOptions popts;
  popts.state_threshold = args.state_threshold;
  ehoi::FrameSet dets = ehoi::parse_detections_file(args.dets, popts);
  std::optional<ehoi::FrameSet> gt;
  if (!args.gt.empty()) gt = ehoi::parse_annotations_file(args.gt, popts);
  const auto infos = ehoi::match_dataset(dets, gt ? &*gt : nullptr, args.jobs);
  std::size_t matched = 0, considered = 0;
  for (const auto& info : infos)
    for (const auto& q : info.quadruplets) {
      ++considered;
      if (q.active_object) ++matched;
    }
  const std::string out = resolve_out(args.out, "matched.json", true);
  write_text_file(out, ehoi::write_detections(dets, &infos));
  std::cout << "matched " << matched << " of " << considered << " in-contact hands across "
            << dets.frames.size() << " frames\n"
            << "matched detections written to " << out << "\n";
  return 0;
}

struct AugmentArgs {
  std::string annotations, images, masks, out;
  int kernel_size = 17;
  int trajectory_points = 4;
  double threshold = 0.5;
  std::uint64_t seed = 42;
  int jobs = 1;
};

int run_augment(const AugmentArgs& args) {
  const ehoi::FrameSet input = ehoi::parse_annotations_file(args.annotations, {});
  const std::string out_dir = resolve_out(args.out, "augmented", true);
  fs::create_directories(fs::path(out_dir) / "images");
  fs::create_directories(fs::path(out_dir) / "kernels");
  for (const auto& frame : input.frames) {
    const fs::path target = fs::path(out_dir) / "images" / frame.image_path;
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
  }

  std::vector<ehoi::FrameBlurResult> results(input.frames.size());
  ehoi::parallel_for(input.frames.size(), args.jobs, [&](std::size_t i) {
    const ehoi::Frame& frame = input.frames[i];
    ehoi::KernelConfig kc;
    kc.size = args.kernel_size;
    kc.trajectory_points = args.trajectory_points;
    const ehoi::BlurKernel kernel =
        ehoi::generate_kernel(kc, ehoi::mix_seed(args.seed, static_cast<std::uint64_t>(frame.id)));

    const std::string image_path = (fs::path(args.images) / frame.image_path).string();
    const ehoi::Image image = ehoi::read_pnm(image_path);
    if (image.width != frame.width || image.height != frame.height)
      throw ehoi::ValidationError("frame " + std::to_string(frame.id) + ": image " + image_path +
                                  " does not match the annotated dimensions");
    ehoi::write_pnm((fs::path(out_dir) / "images" / frame.image_path).string(),
                    ehoi::convolve(image, kernel));

    std::map<int, ehoi::BinaryMask> masks;
    auto load_mask = [&](int annotation_id) {
      const fs::path path = fs::path(args.masks) / (mangle_path(frame.image_path) + "_" +
                                                    std::to_string(annotation_id) + ".pgm");
      if (!fs::exists(path)) return;
      const ehoi::Image mask_image = ehoi::read_pnm(path.string());
      if (mask_image.width != frame.width || mask_image.height != frame.height)
        throw ehoi::ValidationError("frame " + std::to_string(frame.id) + ": mask " +
                                    path.string() + " does not match the frame dimensions");
      masks.emplace(annotation_id, ehoi::mask_from_image(mask_image, 0.5));
    };
    if (!args.masks.empty()) {
      for (const auto& h : frame.hands) load_mask(h.id);
      for (const auto& o : frame.objects) load_mask(o.id);
    }

    results[i] = ehoi::correct_frame(frame, masks, kernel, args.threshold);
    write_text_file(
        (fs::path(out_dir) / "kernels" / ("frame_" + std::to_string(frame.id) + ".txt")).string(),
        ehoi::kernel_to_text(kernel));
  });

  ehoi::FrameSet output = input;
  output.frames.clear();
  std::size_t dropped = 0, released = 0;
  for (auto& r : results) {
    dropped += r.dropped_hands.size() + r.dropped_objects.size();
    released += r.released_hands.size();
    output.frames.push_back(std::move(r.frame));
  }
  write_text_file((fs::path(out_dir) / "annotations.json").string(),
                  ehoi::write_annotations(output));
  std::cout << "blurred " << output.frames.size() << " frames (" << dropped
            << " annotations dropped, " << released << " hands released to no_contact)\n"
            << "augmented dataset written to " << out_dir << "\n";
  return 0;
}

struct StatsArgs {
  std::string annotations, out;
  bool json = false;
};

int run_stats(const StatsArgs& args) {
  const ehoi::FrameSet set = ehoi::parse_annotations_file(args.annotations, {});
  const ehoi::DatasetStats s = ehoi::stats(set);
  const std::string text =
      args.json ? ehoi::stats_to_json(s, set.categories) : ehoi::render_stats_table(s);
  std::cout << text;
  const std::string out = resolve_out(args.out, args.json ? "stats.json" : "stats.txt", false);
  if (!out.empty()) write_text_file(out, text);
  return 0;
}

struct SplitArgs {
  std::string annotations, spec, out_dir;
  bool json = false;
};

int run_split(const SplitArgs& args) {
  const ehoi::FrameSet set = ehoi::parse_annotations_file(args.annotations, {});
  const ehoi::SplitSpec spec = ehoi::parse_split_spec_file(args.spec);
  const ehoi::SplitResult result = ehoi::split(set, spec);
  std::cout << (args.json ? ehoi::split_stats_to_json(result, set.categories)
                          : ehoi::render_split_table(result));
  const std::string out_dir = resolve_out(args.out_dir, "splits", false);
  if (!out_dir.empty()) {
    write_text_file((fs::path(out_dir) / "train.json").string(),
                    ehoi::write_annotations(result.train));
    write_text_file((fs::path(out_dir) / "val.json").string(),
                    ehoi::write_annotations(result.val));
    write_text_file((fs::path(out_dir) / "test.json").string(),
                    ehoi::write_annotations(result.test));
    std::cout << "split annotations written to " << out_dir << "\n";
  }
  return 0;
}

struct SubsampleArgs {
  std::string annotations, out;
  double fraction = 1.0;
  std::uint64_t seed = 42;
};

int run_subsample(const SubsampleArgs& args) {
  const ehoi::FrameSet set = ehoi::parse_annotations_file(args.annotations, {});
  const ehoi::FrameSet kept = ehoi::subsample(set, args.fraction, args.seed);
  const std::string out = resolve_out(args.out, "subsample.json", true);
  write_text_file(out, ehoi::write_annotations(kept));
  std::cout << "kept " << kept.frames.size() << " of " << set.frames.size() << " frames\n"
            << "subsampled annotations written to " << out << "\n";
  return 0;
}

struct ReportArgs {
  std::vector<std::string> reports;
  std::string out;
  bool json = false;
};

int run_report(const ReportArgs& args) {
  std::vector<ehoi::ReportEntry> entries;
  for (const auto& path : args.reports) entries.push_back(ehoi::parse_report_file(path));
  const std::string text =
      args.json ? ehoi::report_series_json(entries) : ehoi::report_table(entries);
  std::cout << text;
  const std::string out = resolve_out(args.out, args.json ? "series.json" : "table.md", false);
  if (!out.empty()) write_text_file(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for egocentric hand-object interaction detection pipelines"};
  app.set_version_flag("--version", "ehoikit 1.0.0");
  app.require_subcommand(1);

  EvaluateArgs eval_args;
  CLI::App* eval = app.add_subcommand("evaluate", "Score detections against ground truth");
  eval->add_option("--gt", eval_args.gt, "ground-truth annotations JSON")->required();
  eval->add_option("--dets", eval_args.dets, "detections JSON")->required();
  eval->add_option("--iou", eval_args.iou, "IoU threshold for a correct box");
  eval->add_option("--interp", eval_args.interp, "AP interpolation: coco101 or allpoints");
  eval->add_option("--label", eval_args.label, "run label for the report");
  eval->add_option("--state-threshold", eval_args.state_threshold,
                   "contact probability mapped to in-contact at or above this");
  eval->add_option("--jobs", eval_args.jobs, "worker threads");
  eval->add_option("--out", eval_args.out, "report JSON path");

  MatchArgs match_args;
  CLI::App* match = app.add_subcommand("match", "Associate in-contact hands with active objects");
  match->add_option("--dets", match_args.dets, "detections JSON")->required();
  match->add_option("--gt", match_args.gt, "annotations JSON supplying frame dimensions");
  match->add_option("--state-threshold", match_args.state_threshold,
                    "contact probability mapped to in-contact at or above this");
  match->add_option("--jobs", match_args.jobs, "worker threads");
  match->add_option("--out", match_args.out, "matched detections JSON path");

  AugmentArgs aug_args;
  CLI::App* augment = app.add_subcommand("augment", "Apply motion blur and correct annotations");
  augment->add_option("--annotations", aug_args.annotations, "annotations JSON")->required();
  augment->add_option("--images", aug_args.images, "input image directory")->required();
  augment->add_option("--masks", aug_args.masks,
                      "mask directory (<image path, '/' as '__'>_<annotation id>.pgm)");
  augment->add_option("--kernel-size", aug_args.kernel_size, "odd kernel size in pixels");
  augment->add_option("--trajectory-points", aug_args.trajectory_points,
                      "control points of the motion path");
  augment->add_option("--threshold", aug_args.threshold, "mask re-binarization threshold");
  augment->add_option("--seed", aug_args.seed, "base seed; each frame derives its own");
  augment->add_option("--jobs", aug_args.jobs, "worker threads");
  augment->add_option("--out", aug_args.out, "output directory");

  StatsArgs stats_args;
  CLI::App* stats = app.add_subcommand("stats", "Summarize an annotations file");
  stats->add_option("--annotations", stats_args.annotations, "annotations JSON")->required();
  stats->add_flag("--json", stats_args.json, "emit JSON instead of a table");
  stats->add_option("--out", stats_args.out, "also write the summary to this path");

  SplitArgs split_args;
  CLI::App* split = app.add_subcommand("split", "Partition a dataset by video");
  split->add_option("--annotations", split_args.annotations, "annotations JSON")->required();
  split->add_option("--spec", split_args.spec, "split spec JSON (train/val/test video ids)")
      ->required();
  split->add_flag("--json", split_args.json, "emit JSON instead of a table");
  split->add_option("--out-dir", split_args.out_dir, "directory for train/val/test JSON");

  SubsampleArgs sub_args;
  CLI::App* subsample = app.add_subcommand("subsample", "Keep a random fraction of frames");
  subsample->add_option("--annotations", sub_args.annotations, "annotations JSON")->required();
  subsample->add_option("--fraction", sub_args.fraction, "fraction of frames to keep, in (0, 1]")
      ->required();
  subsample->add_option("--seed", sub_args.seed, "sampling seed");
  subsample->add_option("--out", sub_args.out, "output annotations JSON path");

  ReportArgs report_args;
  CLI::App* report = app.add_subcommand("report", "Tabulate one or more evaluation reports");
  report->add_option("reports", report_args.reports, "report JSON files")->required();
  report->add_flag("--json", report_args.json, "emit per-metric series JSON");
  report->add_option("--out", report_args.out, "also write the output to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (eval->parsed()) return run_evaluate(eval_args);
    if (match->parsed()) return run_match(match_args);
    if (augment->parsed()) return run_augment(aug_args);
    if (stats->parsed()) return run_stats(stats_args);
    if (split->parsed()) return run_split(split_args);
    if (subsample->parsed()) return run_subsample(sub_args);
    if (report->parsed()) return run_report(report_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 1;
  } catch (const ehoi::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ehoi::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
