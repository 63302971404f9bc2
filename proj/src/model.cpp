#include "ehoikit/model.hpp"

#include <algorithm>
#include <set>

#include "ehoikit/errors.hpp"

namespace ehoi {

OffsetVector encode_offset(const BBox& hand_box, const BBox& object_box, ImageSize image) {
  const Point hc = hand_box.center();
  const Point oc = object_box.center();
  const double dx = oc.x - hc.x;
  const double dy = oc.y - hc.y;
  const double dist = std::hypot(dx, dy);
  if (dist == 0.0) return {1.0, 0.0, 0.0};
  return {dx / dist, dy / dist, dist / image.diagonal()};
}

Point decode_offset(const BBox& hand_box, const OffsetVector& offset, ImageSize image) {
  const Point hc = hand_box.center();
  const double step = offset.m * image.diagonal();
  return {hc.x + step * offset.vx, hc.y + step * offset.vy};
}

std::vector<EhoiQuadruplet> build_quadruplets(std::span<const HandRecord> hands,
                                              std::span<const ObjectRecord> objects,
                                              const std::map<int, int>& matches) {
  std::set<int> hand_ids, object_ids;
  for (const auto& h : hands) hand_ids.insert(h.id);
  for (const auto& o : objects) object_ids.insert(o.id);
  for (const auto& [hand_id, object_id] : matches) {
    if (!hand_ids.count(hand_id))
      throw ValidationError("match references unknown hand id " + std::to_string(hand_id));
    if (!object_ids.count(object_id))
      throw ValidationError("match for hand " + std::to_string(hand_id) +
                            " references unknown object id " + std::to_string(object_id));
  }

  std::vector<EhoiQuadruplet> out;
  out.reserve(hands.size());
  for (const auto& h : hands) {
    EhoiQuadruplet q;
    q.hand = h.id;
    q.contact_state = h.state;
    const auto it = matches.find(h.id);
    if (it != matches.end()) {
      if (h.state != ContactState::kInContact)
        throw ValidationError("hand " + std::to_string(h.id) +
                              " is matched to an object but its contact state is no_contact");
      q.active_object = it->second;
    }
    for (const auto& o : objects) {
      if (q.active_object && o.id == *q.active_object) continue;
      q.other_objects.push_back(o.id);
    }
    out.push_back(std::move(q));
  }
  return out;
}

const char* to_string(HandSide side) { return side == HandSide::kLeft ? "left" : "right"; }

const char* to_string(ContactState state) {
  return state == ContactState::kInContact ? "contact" : "no_contact";
}

}  // namespace ehoi
