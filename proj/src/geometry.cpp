#include "ehoikit/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace ehoi {

namespace {

std::size_t checked_cell_count(int width, int height) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("BinaryMask: dimensions must be positive");
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

BinaryMask::BinaryMask(int width, int height)
    : width_(width), height_(height), bits_(checked_cell_count(width, height), 0) {}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (bits_.size() != checked_cell_count(width, height))
    throw std::invalid_argument("BinaryMask: bit count does not match dimensions");
}

namespace {

double intersection_area(const BBox& a, const BBox& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  return iw * ih;
}

}  // namespace

double iou(const BBox& a, const BBox& b) {
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

bool intersects(const BBox& a, const BBox& b) { return intersection_area(a, b) > 0.0; }

BBox enlarge(const BBox& b, double factor, double image_width, double image_height) {
  const Point c = b.center();
  const double nw = b.w * (1.0 + factor);
  const double nh = b.h * (1.0 + factor);
  const double x1 = std::max(0.0, c.x - nw / 2.0);
  const double y1 = std::max(0.0, c.y - nh / 2.0);
  const double x2 = std::min(image_width, c.x + nw / 2.0);
  const double y2 = std::min(image_height, c.y + nh / 2.0);
  return {x1, y1, std::max(0.0, x2 - x1), std::max(0.0, y2 - y1)};
}

std::optional<BBox> mask_to_box(const BinaryMask& m) {
  int min_x = m.width(), min_y = m.height(), max_x = -1, max_y = -1;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.at(x, y)) continue;
      min_x = std::min(min_x, x);
      min_y = std::min(min_y, y);
      max_x = std::max(max_x, x);
      max_y = std::max(max_y, y);
    }
  }
  if (max_x < 0) return std::nullopt;
  return BBox{static_cast<double>(min_x), static_cast<double>(min_y),
              static_cast<double>(max_x - min_x + 1), static_cast<double>(max_y - min_y + 1)};
}

}  // namespace ehoi
