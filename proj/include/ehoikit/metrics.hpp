#ifndef EHOIKIT_METRICS_HPP_
#define EHOIKIT_METRICS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ehoikit/dataset.hpp"

namespace ehoi {

enum class Interpolation {
  kCoco101,    // precision envelope sampled at recall 0.00, 0.01, ..., 1.00
  kAllPoints,  // exact area under the interpolated precision-recall curve
};

std::string to_string(Interpolation interp);
Interpolation interpolation_from_string(const std::string& name);

struct ApConfig {
  double iou_threshold = 0.5;
  Interpolation interpolation = Interpolation::kCoco101;
  int jobs = 1;
};

// One detection's outcome after greedy assignment.
struct ScoredHit {
  double score = 0.0;
  bool tp = false;
};

// Average precision over a pooled detection list. Detections are ranked by
// descending score (stable for ties) before the precision-recall sweep.
// gt_count must be positive.
double average_precision(std::vector<ScoredHit> hits, std::uint64_t gt_count,
                         Interpolation interpolation);

// Attribute predicates layered on top of box IoU during assignment. A ground
// truth failing a predicate for some detection stays available to others.
struct MetricFlags {
  bool require_side = false;
  bool require_state = false;
  bool require_object = false;
};

struct ApResult {
  bool defined = false;  // false when the ground-truth pool is empty
  double value = 0.0;    // in [0, 1]
  std::uint64_t gt_count = 0;
  std::uint64_t det_count = 0;
  std::uint64_t matched = 0;
};

// Ground-truth frame paired with its detections (null when none were
// reported for that frame).
struct FramePair {
  const Frame* gt = nullptr;
  const Frame* det = nullptr;
};

// Pairs detection frames with ground-truth frames by id, in ground-truth
// order. Detections for an unknown frame id raise ValidationError.
std::vector<FramePair> align_frames(const FrameSet& gt, const FrameSet& det);

// Class-agnostic hand detection AP. require_object is ignored here.
ApResult hand_detection_ap(std::span<const FramePair> pairs, const MetricFlags& flags,
                           const ApConfig& config);

// AP over active objects of one category. With require_hand_link, a
// detection only counts as correct when the hands linked on the two sides
// overlap with IoU at or above the threshold.
ApResult object_detection_ap(std::span<const FramePair> pairs, int category,
                             bool require_hand_link, const ApConfig& config);

// AP over in-contact hands restricted to one interacted category: the
// ground-truth pool holds hands linked to an active object of that category,
// the detection pool holds hands whose associated object (lowest-id active
// object linked back to the hand) has that category. Flags add side, state
// and object-box agreement to the assignment predicate.
ApResult interaction_hand_ap(std::span<const FramePair> pairs, int category,
                             const MetricFlags& flags, const ApConfig& config);

struct MetricEntry {
  bool defined = false;
  double percent = 0.0;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
};

struct CategoryAp {
  int id = 0;
  std::string name;
  bool defined = false;
  double percent = 0.0;
  std::uint64_t gt_count = 0;
};

struct EvalCounts {
  std::uint64_t gt_frames = 0;
  std::uint64_t det_frames = 0;
  std::uint64_t gt_hands = 0;
  std::uint64_t det_hands = 0;
  std::uint64_t gt_objects = 0;
  std::uint64_t det_objects = 0;
};

struct EvalReport {
  std::string label;
  ApConfig config;
  MetricEntry ap_hand;         // hand box only
  MetricEntry map_obj;         // active objects, mean over categories
  MetricEntry ap_hand_side;    // hand box + side
  MetricEntry ap_hand_state;   // hand box + contact state
  MetricEntry map_hand_obj;    // active objects gated on hand agreement
  MetricEntry map_all;         // hand box + side + state + interacted object
  std::vector<CategoryAp> per_category;  // active-object AP per category
  bool mar_obj_defined = false;
  double mar_obj = 0.0;        // mean per-category active-object recall, percent
  EvalCounts counts;
};

// Computes all six metrics for detections against ground truth. Detection
// category ids must resolve in the ground-truth table; a detection category
// table, when present, must equal the ground-truth table.
EvalReport evaluate(const FrameSet& gt, const FrameSet& det, const ApConfig& config,
                    const std::string& label);

}  // namespace ehoi

#endif  // EHOIKIT_METRICS_HPP_
