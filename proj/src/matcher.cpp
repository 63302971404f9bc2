#include "ehoikit/matcher.hpp"

#include <algorithm>
#include <cmath>

#include "ehoikit/errors.hpp"
#include "ehoikit/geometry.hpp"
#include "ehoikit/parallel.hpp"

namespace ehoi {

std::vector<MatchResult> match_frame(std::span<const HandRecord> hands,
                                     std::span<const ObjectRecord> objects,
                                     const ImageSize& image) {
  std::vector<MatchResult> results;
  for (const auto& hand : hands) {
    if (hand.state != ContactState::kInContact || !hand.offset) continue;
    MatchResult r;
    r.hand = hand.id;
    r.interaction_point = decode_offset(hand.box, *hand.offset, image);
    const ObjectRecord* best = nullptr;
    double best_dist = 0.0;
    for (const auto& obj : objects) {
      if (!intersects(hand.box, obj.box)) continue;
      ++r.candidates_considered;
      const Point c = obj.box.center();
      const double dist = std::hypot(c.x - r.interaction_point.x, c.y - r.interaction_point.y);
      const bool better =
          !best || dist < best_dist ||
          (dist == best_dist &&
           (obj.score > best->score || (obj.score == best->score && obj.id < best->id)));
      if (better) {
        best = &obj;
        best_dist = dist;
      }
    }
    if (best) r.active_object = best->id;
    results.push_back(r);
  }
  return results;
}

FrameMatchInfo apply_matches(Frame& frame, const std::vector<MatchResult>& results) {
  for (auto& obj : frame.objects) {
    obj.active = false;
    obj.linked_hand.reset();
  }
  std::map<int, int> hand_to_object;  // input order drives quadruplet order
  for (const auto& r : results) {
    if (!r.active_object) continue;
    hand_to_object[r.hand] = *r.active_object;
    for (auto& obj : frame.objects) {
      if (obj.id != *r.active_object) continue;
      obj.active = true;
      if (!obj.linked_hand || r.hand < *obj.linked_hand) obj.linked_hand = r.hand;
    }
  }
  FrameMatchInfo info;
  info.quadruplets = build_quadruplets(frame.hands, frame.objects, hand_to_object);
  for (const auto& r : results) info.interaction_points[r.hand] = r.interaction_point;
  return info;
}

std::vector<FrameMatchInfo> match_dataset(FrameSet& fs, const FrameSet* reference, int jobs) {
  std::vector<FrameMatchInfo> infos(fs.frames.size());
  parallel_for(fs.frames.size(), jobs, [&](std::size_t i) {
    Frame& frame = fs.frames[i];
    int width = frame.width;
    int height = frame.height;
    if (width <= 0 || height <= 0) {
      const Frame* ref = reference ? reference->find_frame(frame.id) : nullptr;
      if (!ref || ref->width <= 0 || ref->height <= 0)
        throw ValidationError("frame " + std::to_string(frame.id) +
                              ": image dimensions unavailable for interaction point decoding");
      width = ref->width;
      height = ref->height;
    }
    const ImageSize image{static_cast<double>(width), static_cast<double>(height)};
    infos[i] = apply_matches(frame, match_frame(frame.hands, frame.objects, image));
  });
  return infos;
}

}  // namespace ehoi
