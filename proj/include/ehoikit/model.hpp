#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ehoikit/geometry.hpp"

namespace ehoi {

enum class HandSide { kLeft, kRight };
enum class ContactState { kNoContact, kInContact };

struct ImageSize {
  double width = 0.0;
  double height = 0.0;

  double diagonal() const { return std::hypot(width, height); }
};

// Unit direction (vx, vy) plus magnitude m expressed as a fraction of the
// image diagonal. Coincident centers are encoded as (1, 0, 0).
struct OffsetVector {
  double vx = 1.0;
  double vy = 0.0;
  double m = 0.0;

  bool operator==(const OffsetVector&) const = default;
};

struct HandRecord {
  int id = 0;
  BBox box;
  double score = 1.0;
  HandSide side = HandSide::kLeft;
  double side_score = 1.0;
  ContactState state = ContactState::kNoContact;
  double state_score = 1.0;
  std::optional<OffsetVector> offset;  // present iff state == kInContact

  bool operator==(const HandRecord&) const = default;
};

struct ObjectRecord {
  int id = 0;
  BBox box;
  double score = 1.0;
  int category = 0;
  bool active = false;
  std::optional<int> linked_hand;

  bool operator==(const ObjectRecord&) const = default;
};

// Resolved interaction for one hand: its contact state, the matched active
// object (when in contact) and every remaining object of the frame.
struct EhoiQuadruplet {
  int hand = 0;
  ContactState contact_state = ContactState::kNoContact;
  std::optional<int> active_object;
  std::vector<int> other_objects;

  bool operator==(const EhoiQuadruplet&) const = default;
};

// m = |object_center - hand_center| / diagonal; (vx, vy) is the normalized
// displacement. Coincident centers return (1, 0, 0).
OffsetVector encode_offset(const BBox& hand_box, const BBox& object_box, ImageSize image);

// hand_center + m * diagonal * (vx, vy). Not clipped to the image bounds.
Point decode_offset(const BBox& hand_box, const OffsetVector& offset, ImageSize image);

// One quadruplet per hand, in hand input order. matches maps hand id to the
// id of its active object; every remaining frame object lands in
// other_objects in input order. Dangling ids raise ValidationError.
std::vector<EhoiQuadruplet> build_quadruplets(std::span<const HandRecord> hands,
                                              std::span<const ObjectRecord> objects,
                                              const std::map<int, int>& matches);

const char* to_string(HandSide side);
const char* to_string(ContactState state);

}  // namespace ehoi
