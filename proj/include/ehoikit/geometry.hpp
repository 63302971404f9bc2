#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ehoi {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned box, top-left origin, real-valued pixel coordinates.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }
  Point center() const { return {x + w / 2.0, y + h / 2.0}; }

  bool operator==(const BBox&) const = default;
};

// Row-major boolean grid. bits holds exactly width*height entries.
class BinaryMask {
 public:
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int x, int y) const { return bits_[static_cast<std::size_t>(y) * width_ + x] != 0; }
  void set(int x, int y, bool v = true) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
  }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

// area(a∩b) / area(a∪b); 0 when the union has zero area.
double iou(const BBox& a, const BBox& b);

// True iff the overlap has strictly positive area. Touching edges do not count.
bool intersects(const BBox& a, const BBox& b);

// Scales width and height by (1 + factor) about the box center, then clips the
// result to the image rectangle [0,width]x[0,height].
BBox enlarge(const BBox& b, double factor, double image_width, double image_height);

// Tightest box covering all set pixels, spanning pixel extents inclusively
// (a single set pixel yields a 1x1 box). nullopt when no pixel is set.
std::optional<BBox> mask_to_box(const BinaryMask& m);

}  // namespace ehoi
