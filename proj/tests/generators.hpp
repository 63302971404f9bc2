#ifndef EHOIKIT_TESTS_GENERATORS_HPP_
#define EHOIKIT_TESTS_GENERATORS_HPP_

#include <utility>
#include <vector>

#include "ehoikit/dataset.hpp"
#include "ehoikit/geometry.hpp"
#include "ehoikit/metrics.hpp"
#include "ehoikit/model.hpp"
#include "ehoikit/rng.hpp"

namespace gen {

// Random frame for association testing: integer-valued geometry on a
// 640x480 canvas (diagonal exactly 800), up to two in-contact hands with
// encoded offsets and up to ten objects, some overlapping the hands.
// Object scores come from a coarse grid so score ties occur.
inline ehoi::Frame match_frame(ehoi::Rng& rng) {
  ehoi::Frame frame;
  frame.width = 640;
  frame.height = 480;
  const ehoi::ImageSize image{640.0, 480.0};

  const int hands = 1 + static_cast<int>(rng.below(2));
  for (int i = 0; i < hands; ++i) {
    ehoi::HandRecord h;
    h.id = i + 1;
    h.box = {static_cast<double>(rng.uniform_int(0, 500)),
             static_cast<double>(rng.uniform_int(0, 360)),
             static_cast<double>(rng.uniform_int(30, 120)),
             static_cast<double>(rng.uniform_int(30, 100))};
    h.side = rng.below(2) ? ehoi::HandSide::kLeft : ehoi::HandSide::kRight;
    if (rng.below(8) == 0) {
      h.state = ehoi::ContactState::kNoContact;
    } else {
      h.state = ehoi::ContactState::kInContact;
      const ehoi::BBox target{static_cast<double>(rng.uniform_int(0, 600)),
                              static_cast<double>(rng.uniform_int(0, 440)),
                              static_cast<double>(rng.uniform_int(2, 40)),
                              static_cast<double>(rng.uniform_int(2, 40))};
      h.offset = ehoi::encode_offset(h.box, target, image);
    }
    frame.hands.push_back(h);
  }

  const int objects = static_cast<int>(rng.below(11));
  for (int j = 0; j < objects; ++j) {
    ehoi::ObjectRecord o;
    o.id = 100 + j;
    o.category = 1 + static_cast<int>(rng.below(19));
    o.score = 0.1 * static_cast<double>(rng.uniform_int(1, 9));
    if (rng.below(2) && !frame.hands.empty()) {
      // anchored near a hand so overlap is likely
      const ehoi::BBox& hb = frame.hands[rng.below(frame.hands.size())].box;
      o.box = {hb.x + static_cast<double>(rng.uniform_int(-30, 60)),
               hb.y + static_cast<double>(rng.uniform_int(-30, 60)),
               static_cast<double>(rng.uniform_int(10, 80)),
               static_cast<double>(rng.uniform_int(10, 80))};
    } else {
      o.box = {static_cast<double>(rng.uniform_int(0, 560)),
               static_cast<double>(rng.uniform_int(0, 400)),
               static_cast<double>(rng.uniform_int(10, 80)),
               static_cast<double>(rng.uniform_int(10, 80))};
    }
    frame.objects.push_back(o);
  }
  return frame;
}

inline ehoi::Frame scaled(const ehoi::Frame& frame, double factor) {
  ehoi::Frame out = frame;
  out.width = static_cast<int>(frame.width * factor);
  out.height = static_cast<int>(frame.height * factor);
  const ehoi::ImageSize image{static_cast<double>(out.width), static_cast<double>(out.height)};
  auto scale_box = [factor](ehoi::BBox& b) {
    b = {b.x * factor, b.y * factor, b.w * factor, b.h * factor};
  };
  for (auto& h : out.hands) {
    const ehoi::BBox original = h.box;
    scale_box(h.box);
    if (h.offset) {
      // re-derive the offset against the scaled target point
      const ehoi::Point p =
          ehoi::decode_offset(original, *h.offset, {static_cast<double>(frame.width),
                                                    static_cast<double>(frame.height)});
      const ehoi::BBox target{p.x * factor, p.y * factor, 0.0, 0.0};
      h.offset = ehoi::encode_offset(h.box, target, image);
    }
  }
  for (auto& o : out.objects) scale_box(o.box);
  return out;
}

// One randomized evaluation instance for predicate-relaxation checks: a pair
// of ground-truth and detection frame sets over two categories. Every
// ground-truth pool box overlaps each detection box at most once near the
// 0.5 IoU threshold (instances violating that margin are rejected by the
// caller via `ambiguous`), which is what makes relaxation monotone.
struct RelaxationInstance {
  ehoi::FrameSet gt;
  ehoi::FrameSet det;
};

// True when some detection hand sits near or above the matching threshold
// with two or more ground-truth hands of one frame.
inline bool ambiguous(const RelaxationInstance& inst, double margin_iou) {
  for (std::size_t i = 0; i < inst.gt.frames.size(); ++i) {
    const ehoi::Frame& g = inst.gt.frames[i];
    const ehoi::Frame& d = inst.det.frames[i];
    for (const auto& dh : d.hands) {
      int close = 0;
      for (const auto& gh : g.hands)
        if (ehoi::iou(dh.box, gh.box) >= margin_iou) ++close;
      if (close > 1) return true;
    }
  }
  return false;
}

inline RelaxationInstance relaxation_instance(ehoi::Rng& rng) {
  RelaxationInstance inst;
  inst.gt.categories.categories = {{1, "alpha"}, {2, "beta"}};
  inst.det.categories = inst.gt.categories;

  const int frames = 1 + static_cast<int>(rng.below(3));
  for (int fi = 0; fi < frames; ++fi) {
    ehoi::Frame g;
    g.id = fi + 1;
    g.width = 640;
    g.height = 480;
    const int gt_hands = 1 + static_cast<int>(rng.below(4));
    int next_id = 1;
    for (int i = 0; i < gt_hands; ++i) {
      ehoi::HandRecord h;
      h.id = next_id++;
      h.box = {static_cast<double>(rng.uniform_int(0, 500)),
               static_cast<double>(rng.uniform_int(0, 360)),
               static_cast<double>(rng.uniform_int(40, 120)),
               static_cast<double>(rng.uniform_int(40, 100))};
      h.side = rng.below(2) ? ehoi::HandSide::kLeft : ehoi::HandSide::kRight;
      h.state = ehoi::ContactState::kInContact;
      ehoi::ObjectRecord o;
      o.id = next_id++;
      o.category = 1 + static_cast<int>(rng.below(2));
      o.active = true;
      o.linked_hand = h.id;
      o.box = {h.box.x + static_cast<double>(rng.uniform_int(-20, 40)),
               h.box.y + static_cast<double>(rng.uniform_int(-20, 40)),
               static_cast<double>(rng.uniform_int(20, 60)),
               static_cast<double>(rng.uniform_int(20, 60))};
      g.hands.push_back(h);
      g.objects.push_back(o);
    }

    ehoi::Frame d;
    d.id = g.id;
    d.width = g.width;
    d.height = g.height;
    const int det_hands = 1 + static_cast<int>(rng.below(6));
    int det_id = 1;
    for (int i = 0; i < det_hands; ++i) {
      ehoi::HandRecord h;
      h.id = det_id++;
      h.score = rng.uniform();
      h.side_score = 0.9;
      h.state_score = 0.9;
      h.side = rng.below(2) ? ehoi::HandSide::kLeft : ehoi::HandSide::kRight;
      h.state =
          rng.below(6) == 0 ? ehoi::ContactState::kNoContact : ehoi::ContactState::kInContact;
      const ehoi::HandRecord& anchor = g.hands[rng.below(g.hands.size())];
      if (rng.below(4) == 0) {
        h.box = {static_cast<double>(rng.uniform_int(0, 500)),
                 static_cast<double>(rng.uniform_int(0, 360)),
                 static_cast<double>(rng.uniform_int(40, 120)),
                 static_cast<double>(rng.uniform_int(40, 100))};
      } else {
        h.box = {anchor.box.x + static_cast<double>(rng.uniform_int(-12, 12)),
                 anchor.box.y + static_cast<double>(rng.uniform_int(-12, 12)),
                 anchor.box.w + static_cast<double>(rng.uniform_int(-8, 8)),
                 anchor.box.h + static_cast<double>(rng.uniform_int(-8, 8))};
      }
      if (h.state == ehoi::ContactState::kInContact) {
        ehoi::ObjectRecord o;
        o.id = det_id++;
        o.score = rng.uniform();
        o.category = 1 + static_cast<int>(rng.below(2));
        o.active = true;
        o.linked_hand = h.id;
        const ehoi::ObjectRecord& target = g.objects[rng.below(g.objects.size())];
        if (rng.below(2)) {
          o.box = {target.box.x + static_cast<double>(rng.uniform_int(-4, 4)),
                   target.box.y + static_cast<double>(rng.uniform_int(-4, 4)), target.box.w,
                   target.box.h};
        } else {
          o.box = {static_cast<double>(rng.uniform_int(0, 560)),
                   static_cast<double>(rng.uniform_int(0, 400)),
                   static_cast<double>(rng.uniform_int(20, 60)),
                   static_cast<double>(rng.uniform_int(20, 60))};
        }
        d.objects.push_back(o);
      }
      d.hands.push_back(h);
    }
    inst.gt.frames.push_back(std::move(g));
    inst.det.frames.push_back(std::move(d));
  }
  return inst;
}

// Random scored hit list for average-precision oracle comparisons.
inline std::pair<std::vector<ehoi::ScoredHit>, std::uint64_t> ap_case(ehoi::Rng& rng,
                                                                      int max_dets) {
  std::vector<ehoi::ScoredHit> hits(rng.below(static_cast<std::uint64_t>(max_dets) + 1));
  std::uint64_t tp = 0;
  for (auto& h : hits) {
    h.score = 0.1 * static_cast<double>(rng.uniform_int(0, 10));
    h.tp = rng.below(2) == 1;
    tp += h.tp;
  }
  const std::uint64_t gt_count = tp + rng.below(4) + (tp == 0 ? 1 : 0);
  return {std::move(hits), gt_count};
}

}  // namespace gen

#endif  // EHOIKIT_TESTS_GENERATORS_HPP_
