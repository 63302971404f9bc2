#ifndef EHOIKIT_MATCHER_HPP_
#define EHOIKIT_MATCHER_HPP_

#include <map>
#include <span>
#include <vector>

#include "ehoikit/dataset.hpp"
#include "ehoikit/model.hpp"

namespace ehoi {

// Hand-to-active-object association for one in-contact hand.
struct MatchResult {
  int hand = 0;
  Point interaction_point;
  std::optional<int> active_object;   // absent when no candidate qualified
  int candidates_considered = 0;
};

// Associates every in-contact hand with the object whose center lies closest
// to the hand's projected interaction point. Only objects whose box overlaps
// the hand box with positive area are candidates. Distance ties fall to the
// higher-scored object, then to the lower id. Hands lacking an offset or not
// in contact produce no entry.
std::vector<MatchResult> match_frame(std::span<const HandRecord> hands,
                                     std::span<const ObjectRecord> objects,
                                     const ImageSize& image);

// Runs match_frame over every frame and rewrites object/hand linkage in
// place: each matched object becomes active with linked_hand_id set to the
// lowest matched hand id; stale links are cleared first. Per-frame match
// details are returned in frame order. Frames without stored dimensions fall
// back to `reference`'s frame of the same id (ValidationError when neither
// source has them). `jobs` bounds worker threads; results are identical for
// any value.
std::vector<FrameMatchInfo> match_dataset(FrameSet& fs, const FrameSet* reference, int jobs);

// Applies one frame's match results to its records (helper shared with the
// dataset runner; exposed for tests).
FrameMatchInfo apply_matches(Frame& frame, const std::vector<MatchResult>& results);

}  // namespace ehoi

#endif  // EHOIKIT_MATCHER_HPP_
