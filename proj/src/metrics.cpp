#include "ehoikit/metrics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "ehoikit/errors.hpp"
#include "ehoikit/geometry.hpp"
#include "ehoikit/parallel.hpp"

namespace ehoi {

std::string to_string(Interpolation interp) {
  return interp == Interpolation::kCoco101 ? "coco101" : "allpoints";
}

Interpolation interpolation_from_string(const std::string& name) {
  if (name == "coco101") return Interpolation::kCoco101;
  if (name == "allpoints") return Interpolation::kAllPoints;
  throw ParseError("unknown interpolation '" + name + "'");
}

double average_precision(std::vector<ScoredHit> hits, std::uint64_t gt_count,
                         Interpolation interpolation) {
  if (gt_count == 0)
    throw std::invalid_argument("average_precision: gt_count must be positive");
  std::stable_sort(hits.begin(), hits.end(),
                   [](const ScoredHit& a, const ScoredHit& b) { return a.score > b.score; });
  const std::size_t n = hits.size();
  std::vector<double> precision(n), recall(n);
  std::uint64_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (hits[i].tp) ++tp;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
    recall[i] = static_cast<double>(tp) / static_cast<double>(gt_count);
  }
  for (std::size_t i = n; i-- > 1;)
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  if (interpolation == Interpolation::kAllPoints) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (hits[i].tp) sum += precision[i];
    return sum / static_cast<double>(gt_count);
  }
  double total = 0.0;
  std::size_t lo = 0;
  for (int t = 0; t <= 100; ++t) {
    const double r = static_cast<double>(t) / 100.0;
    while (lo < n && recall[lo] < r) ++lo;
    if (lo < n) total += precision[lo];
  }
  return total / 101.0;
}

std::vector<FramePair> align_frames(const FrameSet& gt, const FrameSet& det) {
  std::map<int, const Frame*> det_by_id;
  for (const auto& f : det.frames) {
    if (!gt.find_frame(f.id))
      throw ValidationError("detections reference frame " + std::to_string(f.id) +
                            " absent from the ground truth");
    det_by_id[f.id] = &f;
  }
  std::vector<FramePair> pairs;
  pairs.reserve(gt.frames.size());
  for (const auto& f : gt.frames) {
    auto it = det_by_id.find(f.id);
    pairs.push_back({&f, it == det_by_id.end() ? nullptr : it->second});
  }
  return pairs;
}

namespace {

struct PoolDet {
  double score = 0.0;
  BBox box;
  int local = 0;
};

struct PoolGt {
  BBox box;
  int local = 0;
};

// Greedy assignment within one frame: detections in descending score order
// each claim the still-unclaimed ground truth of highest overlap that passes
// the predicate. Overlap ties resolve to the earliest ground truth.
void assign_frame(std::vector<PoolDet> dets, const std::vector<PoolGt>& gts, double threshold,
                  const std::function<bool(int, int)>& predicate, std::vector<ScoredHit>& hits,
                  std::uint64_t& matched) {
  std::stable_sort(dets.begin(), dets.end(),
                   [](const PoolDet& a, const PoolDet& b) { return a.score > b.score; });
  std::vector<char> taken(gts.size(), 0);
  for (const auto& d : dets) {
    int best = -1;
    double best_iou = 0.0;
    for (std::size_t j = 0; j < gts.size(); ++j) {
      if (taken[j]) continue;
      const double v = iou(d.box, gts[j].box);
      if (v < threshold) continue;
      if (predicate && !predicate(d.local, gts[j].local)) continue;
      if (best < 0 || v > best_iou) {
        best = static_cast<int>(j);
        best_iou = v;
      }
    }
    if (best >= 0) {
      taken[best] = 1;
      ++matched;
      hits.push_back({d.score, true});
    } else {
      hits.push_back({d.score, false});
    }
  }
}

// Builds per-frame pools, assigns greedily, then pools hits dataset-wide.
// The builder fills dets/gts for pair i and returns the predicate to apply.
using PoolBuilder = std::function<std::function<bool(int, int)>(
    const FramePair&, std::vector<PoolDet>&, std::vector<PoolGt>&)>;

ApResult pooled_ap(std::span<const FramePair> pairs, const PoolBuilder& builder,
                   const ApConfig& config) {
  std::vector<std::vector<ScoredHit>> frame_hits(pairs.size());
  std::vector<std::uint64_t> frame_gts(pairs.size(), 0), frame_matched(pairs.size(), 0);
  parallel_for(pairs.size(), config.jobs, [&](std::size_t i) {
    std::vector<PoolDet> dets;
    std::vector<PoolGt> gts;
    const auto predicate = builder(pairs[i], dets, gts);
    frame_gts[i] = gts.size();
    assign_frame(std::move(dets), gts, config.iou_threshold, predicate, frame_hits[i],
                 frame_matched[i]);
  });
  ApResult r;
  std::vector<ScoredHit> hits;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    r.gt_count += frame_gts[i];
    r.matched += frame_matched[i];
    r.det_count += frame_hits[i].size();
    hits.insert(hits.end(), frame_hits[i].begin(), frame_hits[i].end());
  }
  if (r.gt_count == 0) return r;
  r.defined = true;
  r.value = average_precision(std::move(hits), r.gt_count, config.interpolation);
  return r;
}

// The detection hand's associated object: the lowest-id active object linked
// back to it, or -1.
int associated_object(const Frame& frame, int hand_id) {
  int best = -1;
  for (const auto& o : frame.objects) {
    if (!o.active || o.linked_hand != hand_id) continue;
    if (best < 0 || o.id < best) best = o.id;
  }
  return best;
}

const ObjectRecord* object_by_id(const Frame& frame, int id) {
  for (const auto& o : frame.objects)
    if (o.id == id) return &o;
  return nullptr;
}

const HandRecord* hand_by_id(const Frame& frame, int id) {
  for (const auto& h : frame.hands)
    if (h.id == id) return &h;
  return nullptr;
}

}  // namespace

ApResult hand_detection_ap(std::span<const FramePair> pairs, const MetricFlags& flags,
                           const ApConfig& config) {
  return pooled_ap(
      pairs,
      [&flags](const FramePair& pair, std::vector<PoolDet>& dets, std::vector<PoolGt>& gts) {
        const Frame* g = pair.gt;
        const Frame* d = pair.det;
        for (std::size_t j = 0; j < g->hands.size(); ++j)
          gts.push_back({g->hands[j].box, static_cast<int>(j)});
        if (d)
          for (std::size_t j = 0; j < d->hands.size(); ++j)
            dets.push_back({d->hands[j].score, d->hands[j].box, static_cast<int>(j)});
        return std::function<bool(int, int)>([&flags, g, d](int di, int gi) {
          const HandRecord& dh = d->hands[di];
          const HandRecord& gh = g->hands[gi];
          if (flags.require_side && dh.side != gh.side) return false;
          if (flags.require_state && dh.state != gh.state) return false;
          return true;
        });
      },
      config);
}

ApResult object_detection_ap(std::span<const FramePair> pairs, int category,
                             bool require_hand_link, const ApConfig& config) {
  const double threshold = config.iou_threshold;
  return pooled_ap(
      pairs,
      [category, require_hand_link, threshold](const FramePair& pair, std::vector<PoolDet>& dets,
                                               std::vector<PoolGt>& gts) {
        const Frame* g = pair.gt;
        const Frame* d = pair.det;
        for (std::size_t j = 0; j < g->objects.size(); ++j) {
          const auto& o = g->objects[j];
          if (o.active && o.category == category) gts.push_back({o.box, static_cast<int>(j)});
        }
        if (d)
          for (std::size_t j = 0; j < d->objects.size(); ++j) {
            const auto& o = d->objects[j];
            if (o.active && o.category == category)
              dets.push_back({o.score, o.box, static_cast<int>(j)});
          }
        if (!require_hand_link) return std::function<bool(int, int)>();
        return std::function<bool(int, int)>([g, d, threshold](int di, int gi) {
          const ObjectRecord& dobj = d->objects[di];
          const ObjectRecord& gobj = g->objects[gi];
          if (!dobj.linked_hand || !gobj.linked_hand) return false;
          const HandRecord* dh = hand_by_id(*d, *dobj.linked_hand);
          const HandRecord* gh = hand_by_id(*g, *gobj.linked_hand);
          if (!dh || !gh) return false;
          return iou(dh->box, gh->box) >= threshold;
        });
      },
      config);
}

ApResult interaction_hand_ap(std::span<const FramePair> pairs, int category,
                             const MetricFlags& flags, const ApConfig& config) {
  const double threshold = config.iou_threshold;
  return pooled_ap(
      pairs,
      [category, &flags, threshold](const FramePair& pair, std::vector<PoolDet>& dets,
                                    std::vector<PoolGt>& gts) {
        const Frame* g = pair.gt;
        const Frame* d = pair.det;
        for (std::size_t j = 0; j < g->hands.size(); ++j) {
          const auto& h = g->hands[j];
          if (h.state != ContactState::kInContact) continue;
          bool linked = false;
          for (const auto& o : g->objects)
            if (o.active && o.linked_hand == h.id && o.category == category) linked = true;
          if (linked) gts.push_back({h.box, static_cast<int>(j)});
        }
        if (d)
          for (std::size_t j = 0; j < d->hands.size(); ++j) {
            const auto& h = d->hands[j];
            if (h.state != ContactState::kInContact) continue;
            const int obj = associated_object(*d, h.id);
            if (obj < 0) continue;
            if (object_by_id(*d, obj)->category == category)
              dets.push_back({h.score, h.box, static_cast<int>(j)});
          }
        return std::function<bool(int, int)>([category, &flags, g, d, threshold](int di, int gi) {
          const HandRecord& dh = d->hands[di];
          const HandRecord& gh = g->hands[gi];
          if (flags.require_side && dh.side != gh.side) return false;
          if (flags.require_state && dh.state != gh.state) return false;
          if (flags.require_object) {
            const ObjectRecord* dobj = object_by_id(*d, associated_object(*d, dh.id));
            bool overlaps = false;
            for (const auto& o : g->objects) {
              if (!o.active || o.linked_hand != gh.id || o.category != category) continue;
              if (iou(dobj->box, o.box) >= threshold) overlaps = true;
            }
            if (!overlaps) return false;
          }
          return true;
        });
      },
      config);
}

namespace {

MetricEntry to_entry(const ApResult& r) {
  MetricEntry e;
  e.defined = r.defined;
  e.percent = r.defined ? 100.0 * r.value : 0.0;
  e.tp = r.matched;
  e.fp = r.det_count - r.matched;
  e.fn = r.gt_count - r.matched;
  return e;
}

MetricEntry mean_entry(const std::vector<ApResult>& results) {
  MetricEntry e;
  double sum = 0.0;
  std::uint64_t defined = 0;
  for (const auto& r : results) {
    e.tp += r.matched;
    e.fp += r.det_count - r.matched;
    e.fn += r.gt_count - r.matched;
    if (r.defined) {
      sum += r.value;
      ++defined;
    }
  }
  if (defined > 0) {
    e.defined = true;
    e.percent = 100.0 * sum / static_cast<double>(defined);
  }
  return e;
}

}  // namespace

EvalReport evaluate(const FrameSet& gt, const FrameSet& det, const ApConfig& config,
                    const std::string& label) {
  if (!det.categories.categories.empty()) {
    const auto& a = gt.categories.categories;
    const auto& b = det.categories.categories;
    bool equal = a.size() == b.size();
    for (std::size_t i = 0; equal && i < a.size(); ++i)
      equal = a[i].id == b[i].id && a[i].name == b[i].name;
    if (!equal)
      throw ValidationError("detection category table does not match the ground truth");
  }
  for (const auto& f : det.frames)
    for (const auto& o : f.objects)
      if (!gt.categories.contains(o.category))
        throw ValidationError("frame " + std::to_string(f.id) + ": object " +
                              std::to_string(o.id) + ": unknown category_id " +
                              std::to_string(o.category));

  const std::vector<FramePair> pairs = align_frames(gt, det);

  EvalReport rep;
  rep.label = label;
  rep.config = config;
  rep.counts.gt_frames = gt.frames.size();
  rep.counts.det_frames = det.frames.size();
  for (const auto& f : gt.frames) {
    rep.counts.gt_hands += f.hands.size();
    rep.counts.gt_objects += f.objects.size();
  }
  for (const auto& f : det.frames) {
    rep.counts.det_hands += f.hands.size();
    rep.counts.det_objects += f.objects.size();
  }

  rep.ap_hand = to_entry(hand_detection_ap(pairs, {}, config));
  rep.ap_hand_side = to_entry(hand_detection_ap(pairs, {.require_side = true}, config));
  rep.ap_hand_state = to_entry(hand_detection_ap(pairs, {.require_state = true}, config));

  const auto& cats = gt.categories.categories;
  std::vector<ApResult> obj(cats.size()), hand_obj(cats.size()), all(cats.size());
  ApConfig serial = config;
  serial.jobs = 1;
  parallel_for(cats.size(), config.jobs, [&](std::size_t i) {
    obj[i] = object_detection_ap(pairs, cats[i].id, false, serial);
    hand_obj[i] = object_detection_ap(pairs, cats[i].id, true, serial);
    all[i] = interaction_hand_ap(
        pairs, cats[i].id,
        {.require_side = true, .require_state = true, .require_object = true}, serial);
  });
  rep.map_obj = mean_entry(obj);
  rep.map_hand_obj = mean_entry(hand_obj);
  rep.map_all = mean_entry(all);

  double recall_sum = 0.0;
  std::uint64_t recall_defined = 0;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    CategoryAp c;
    c.id = cats[i].id;
    c.name = cats[i].name;
    c.defined = obj[i].defined;
    c.percent = obj[i].defined ? 100.0 * obj[i].value : 0.0;
    c.gt_count = obj[i].gt_count;
    rep.per_category.push_back(std::move(c));
    if (obj[i].defined) {
      recall_sum +=
          static_cast<double>(obj[i].matched) / static_cast<double>(obj[i].gt_count);
      ++recall_defined;
    }
  }
  if (recall_defined > 0) {
    rep.mar_obj_defined = true;
    rep.mar_obj = 100.0 * recall_sum / static_cast<double>(recall_defined);
  }
  return rep;
}

}  // namespace ehoi
