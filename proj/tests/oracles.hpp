#ifndef EHOIKIT_TESTS_ORACLES_HPP_
#define EHOIKIT_TESTS_ORACLES_HPP_

// Reference implementations kept deliberately naive and structurally
// different from the library: pixel counting instead of interval algebra,
// quadratic scans instead of running extrema, exhaustive search instead of
// incremental bookkeeping.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ehoikit/augment.hpp"
#include "ehoikit/geometry.hpp"
#include "ehoikit/image_io.hpp"
#include "ehoikit/metrics.hpp"
#include "ehoikit/model.hpp"

namespace oracle {

// IoU of integer-valued boxes by counting grid pixels. A pixel (px, py)
// belongs to a box when it lies in [x, x+w) x [y, y+h).
inline double raster_iou(const ehoi::BBox& a, const ehoi::BBox& b, int grid = 160) {
  long in_a = 0, in_b = 0, inter = 0;
  for (int py = 0; py < grid; ++py)
    for (int px = 0; px < grid; ++px) {
      const bool pa = px >= a.x && px < a.x + a.w && py >= a.y && py < a.y + a.h;
      const bool pb = px >= b.x && px < b.x + b.w && py >= b.y && py < b.y + b.h;
      in_a += pa;
      in_b += pb;
      inter += pa && pb;
    }
  const long uni = in_a + in_b - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Definition-level average precision over an explicit precision-recall
// table, with the envelope recomputed by a full scan at every position.
inline double average_precision(std::vector<ehoi::ScoredHit> hits, std::uint64_t gt_count,
                                ehoi::Interpolation interp) {
  std::stable_sort(hits.begin(), hits.end(),
                   [](const ehoi::ScoredHit& a, const ehoi::ScoredHit& b) {
                     return a.score > b.score;
                   });
  const std::size_t n = hits.size();
  std::vector<double> precision(n), recall(n), envelope(n);
  std::uint64_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (hits[i].tp) ++tp;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
    recall[i] = static_cast<double>(tp) / static_cast<double>(gt_count);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double best = 0.0;
    for (std::size_t j = i; j < n; ++j) best = std::max(best, precision[j]);
    envelope[i] = best;
  }
  if (interp == ehoi::Interpolation::kAllPoints) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (hits[i].tp) sum += envelope[i];
    return sum / static_cast<double>(gt_count);
  }
  double total = 0.0;
  for (int t = 0; t <= 100; ++t) {
    const double r = static_cast<double>(t) / 100.0;
    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i)
      if (recall[i] >= r) {
        first = i;
        break;
      }
    if (first < n) total += envelope[first];
  }
  return total / 101.0;
}

// Correlation with replicate borders, accumulated over the neighborhood in
// column-major displacement order.
inline std::vector<double> convolve(const ehoi::Image& image, const ehoi::BlurKernel& kernel) {
  const int c = kernel.size / 2;
  std::vector<double> out(image.data.size(), 0.0);
  for (int ch = 0; ch < image.channels; ++ch)
    for (int y = 0; y < image.height; ++y)
      for (int x = 0; x < image.width; ++x) {
        double acc = 0.0;
        for (int dx = -c; dx <= c; ++dx)
          for (int dy = -c; dy <= c; ++dy) {
            const int sx = std::clamp(x + dx, 0, image.width - 1);
            const int sy = std::clamp(y + dy, 0, image.height - 1);
            acc += kernel.at(c + dx, c + dy) * image.at(sx, sy, ch);
          }
        out[(static_cast<std::size_t>(y) * image.width + x) * image.channels + ch] = acc;
      }
  return out;
}

struct HandMatch {
  int hand = 0;
  double px = 0.0;
  double py = 0.0;
  std::optional<int> object;
  // Relative gap between the two closest candidate distances; infinity with
  // fewer than two candidates. Lets property tests reject near-ties that
  // honest floating-point differences could flip.
  double tie_gap = std::numeric_limits<double>::infinity();
};

// Exhaustive hand-object association: projects the interaction point and
// scans every object for overlap and center distance.
inline std::vector<HandMatch> match_frame(const std::vector<ehoi::HandRecord>& hands,
                                          const std::vector<ehoi::ObjectRecord>& objects,
                                          double width, double height) {
  std::vector<HandMatch> out;
  const double diag = std::sqrt(width * width + height * height);
  for (const auto& h : hands) {
    if (h.state != ehoi::ContactState::kInContact || !h.offset) continue;
    HandMatch m;
    m.hand = h.id;
    m.px = h.box.x + h.box.w / 2.0 + h.offset->m * diag * h.offset->vx;
    m.py = h.box.y + h.box.h / 2.0 + h.offset->m * diag * h.offset->vy;
    std::vector<std::pair<double, const ehoi::ObjectRecord*>> candidates;
    for (const auto& o : objects) {
      const double ix =
          std::min(h.box.x + h.box.w, o.box.x + o.box.w) - std::max(h.box.x, o.box.x);
      const double iy =
          std::min(h.box.y + h.box.h, o.box.y + o.box.h) - std::max(h.box.y, o.box.y);
      if (ix <= 0.0 || iy <= 0.0) continue;
      const double ox = o.box.x + o.box.w / 2.0;
      const double oy = o.box.y + o.box.h / 2.0;
      candidates.emplace_back(
          std::sqrt((ox - m.px) * (ox - m.px) + (oy - m.py) * (oy - m.py)), &o);
    }
    const ehoi::ObjectRecord* chosen = nullptr;
    double best = 0.0;
    for (const auto& [d, o] : candidates) {
      const bool better = !chosen || d < best ||
                          (d == best && (o->score > chosen->score ||
                                         (o->score == chosen->score && o->id < chosen->id)));
      if (better) {
        chosen = o;
        best = d;
      }
    }
    if (chosen) m.object = chosen->id;
    if (candidates.size() > 1) {
      std::vector<double> dists;
      for (const auto& [d, o] : candidates) dists.push_back(d);
      std::sort(dists.begin(), dists.end());
      m.tie_gap = (dists[1] - dists[0]) / (diag > 0.0 ? diag : 1.0);
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace oracle

#endif  // EHOIKIT_TESTS_ORACLES_HPP_
