#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ehoikit/model.hpp"

namespace ehoi {

struct Category {
  int id = 0;
  std::string name;

  bool operator==(const Category&) const = default;
};

// Ordered category list; ids are unique and contiguous from 1, names unique.
struct CategoryTable {
  std::vector<Category> categories;

  bool contains(int id) const;
  const std::string& name_of(int id) const;
  bool operator==(const CategoryTable&) const = default;
};

// The 19 categories of the reference industrial-laboratory setup.
CategoryTable reference_categories();

enum class FrameKind { kUnspecified, kContact, kNonContact };

struct VideoInfo {
  int id = 0;
  std::string name;

  bool operator==(const VideoInfo&) const = default;
};

struct Frame {
  int id = 0;
  std::string image_path;
  int width = 0;   // 0 when unknown (raw detection files)
  int height = 0;
  int video_id = 0;
  FrameKind kind = FrameKind::kUnspecified;
  std::optional<std::string> depth_path;
  std::optional<std::string> mask_path;
  std::vector<HandRecord> hands;
  std::vector<ObjectRecord> objects;
  // Annotation id -> hand/object 3D distance, sorted by id; parsed and
  // preserved, unused by any operation.
  std::vector<std::pair<int, double>> distances_3d;

  bool operator==(const Frame&) const = default;
};

struct FrameSet {
  CategoryTable categories;
  std::vector<VideoInfo> videos;
  std::vector<Frame> frames;

  const Frame* find_frame(int id) const;
  bool operator==(const FrameSet&) const = default;
};

struct SplitSpec {
  enum class Bucket { kTrain, kVal, kTest };
  std::map<int, Bucket> assignment;  // video id -> bucket
};

struct DatasetStats {
  std::uint64_t videos = 0;  // distinct video ids among frames
  std::uint64_t images = 0;
  std::uint64_t hands = 0;
  std::uint64_t hands_in_contact = 0;
  std::uint64_t hands_no_contact = 0;
  std::uint64_t left_hands = 0;
  std::uint64_t right_hands = 0;
  std::uint64_t categories_present = 0;
  std::uint64_t objects = 0;
  std::uint64_t active_objects = 0;
  std::map<int, std::uint64_t> per_category_all;
  std::map<int, std::uint64_t> per_category_active;

  bool operator==(const DatasetStats&) const = default;
};

struct SplitResult {
  FrameSet train;
  FrameSet val;
  FrameSet test;
  DatasetStats train_stats;
  DatasetStats val_stats;
  DatasetStats test_stats;
};

struct ParseOptions {
  // Detection hands whose file record carries a state probability but no
  // explicit contact_state are mapped to in-contact at this threshold.
  double state_threshold = 0.5;
};

// Ground-truth annotation document (COCO-style images/annotations/categories/
// videos arrays). Enforces every referential invariant; diagnostics name the
// offending record.
FrameSet parse_annotations(const std::string& text, const ParseOptions& opts = {});
FrameSet parse_annotations_file(const std::string& path, const ParseOptions& opts = {});
std::string write_annotations(const FrameSet& fs);

// Resolved associations attached to a matched detection file. Derived data:
// ignored on parse, regenerable by the matcher.
struct FrameMatchInfo {
  std::vector<EhoiQuadruplet> quadruplets;
  std::map<int, Point> interaction_points;  // hand id -> decoded point
};

// Detection document (per-frame hand/object record arrays, scores mandatory).
FrameSet parse_detections(const std::string& text, const ParseOptions& opts = {});
FrameSet parse_detections_file(const std::string& path, const ParseOptions& opts = {});
// match_info, when given, holds one entry per frame (aligned with fs.frames).
std::string write_detections(const FrameSet& fs,
                             const std::vector<FrameMatchInfo>* match_info = nullptr);

SplitSpec parse_split_spec(const std::string& text);
SplitSpec parse_split_spec_file(const std::string& path);

DatasetStats stats(const FrameSet& fs);

// Partitions frames by video id; every video id present in fs must be
// assigned. Frames keep their input order inside each split.
SplitResult split(const FrameSet& fs, const SplitSpec& spec);

// Seeded uniform subsample of ceil(fraction * frame count) frames, original
// frame order preserved. fraction must lie in (0, 1].
FrameSet subsample(const FrameSet& fs, double fraction, std::uint64_t seed);

// Rendering helpers; all output is deterministic.
std::string render_stats_table(const DatasetStats& s);
std::string render_split_table(const SplitResult& r);
std::string stats_to_json(const DatasetStats& s, const CategoryTable& table);
std::string split_stats_to_json(const SplitResult& r, const CategoryTable& table);

std::string format_count(std::uint64_t n);  // thousands separators: 1,330

}  // namespace ehoi
