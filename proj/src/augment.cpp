#include "ehoikit/augment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "ehoikit/errors.hpp"
#include "ehoikit/model.hpp"
#include "ehoikit/rng.hpp"

namespace ehoi {

double BlurKernel::sum() const {
  double total = 0.0;
  for (const double w : weights) total += w;
  return total;
}

BlurKernel delta_kernel(int size) {
  if (size < 1 || size % 2 == 0)
    throw ValidationError("kernel size must be a positive odd number");
  BlurKernel k;
  k.size = size;
  k.weights.assign(static_cast<std::size_t>(size) * size, 0.0);
  k.at(size / 2, size / 2) = 1.0;
  return k;
}

BlurKernel generate_kernel(const KernelConfig& config, std::uint64_t seed) {
  if (config.size < 1 || config.size % 2 == 0)
    throw ValidationError("kernel size must be a positive odd number");
  if (config.trajectory_points < 2)
    throw ValidationError("trajectory needs at least two control points");
  if (config.size == 1) return delta_kernel(1);

  BlurKernel k;
  k.size = config.size;
  k.weights.assign(static_cast<std::size_t>(config.size) * config.size, 0.0);

  Rng rng(seed);
  const double hi = static_cast<double>(config.size - 1);
  std::vector<Point> points(config.trajectory_points);
  for (auto& p : points) {
    p.x = rng.uniform(0.0, hi);
    p.y = rng.uniform(0.0, hi);
  }
  points[points.size() / 2] = {hi / 2.0, hi / 2.0};

  auto splat = [&k](double px, double py, double amount) {
    const int x0 = static_cast<int>(std::floor(px));
    const int y0 = static_cast<int>(std::floor(py));
    const double fx = px - x0;
    const double fy = py - y0;
    const double w[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
    const int xs[4] = {x0, x0 + 1, x0, x0 + 1};
    const int ys[4] = {y0, y0, y0 + 1, y0 + 1};
    for (int i = 0; i < 4; ++i)
      if (xs[i] >= 0 && xs[i] < k.size && ys[i] >= 0 && ys[i] < k.size)
        k.at(xs[i], ys[i]) += amount * w[i];
  };

  const int per_segment = 64 * config.size;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const Point& a = points[s];
    const Point& b = points[s + 1];
    for (int i = 0; i < per_segment; ++i) {
      const double t = (i + 0.5) / per_segment;
      splat(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), 1.0);
    }
  }
  const double total = k.sum();
  for (double& w : k.weights) w /= total;
  return k;
}

std::string kernel_to_text(const BlurKernel& kernel) {
  std::string out = std::to_string(kernel.size) + "\n";
  char buf[40];
  for (int ky = 0; ky < kernel.size; ++ky) {
    for (int kx = 0; kx < kernel.size; ++kx) {
      std::snprintf(buf, sizeof(buf), "%.17g", kernel.at(kx, ky));
      if (kx > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<double> convolve_exact(const Image& image, const BlurKernel& kernel) {
  const int c = kernel.size / 2;
  std::vector<double> out(image.data.size(), 0.0);
  for (int y = 0; y < image.height; ++y)
    for (int x = 0; x < image.width; ++x)
      for (int ch = 0; ch < image.channels; ++ch) {
        double acc = 0.0;
        for (int ky = 0; ky < kernel.size; ++ky) {
          const int sy = std::clamp(y + ky - c, 0, image.height - 1);
          for (int kx = 0; kx < kernel.size; ++kx) {
            const int sx = std::clamp(x + kx - c, 0, image.width - 1);
            acc += kernel.at(kx, ky) * image.at(sx, sy, ch);
          }
        }
        out[(static_cast<std::size_t>(y) * image.width + x) * image.channels + ch] = acc;
      }
  return out;
}

Image convolve(const Image& image, const BlurKernel& kernel) {
  const std::vector<double> exact = convolve_exact(image, kernel);
  Image out;
  out.width = image.width;
  out.height = image.height;
  out.channels = image.channels;
  out.data.resize(image.data.size());
  for (std::size_t i = 0; i < exact.size(); ++i)
    out.data[i] = static_cast<std::uint8_t>(std::clamp<long>(std::lround(exact[i]), 0, 255));
  return out;
}

BinaryMask blur_mask(const BinaryMask& mask, const BlurKernel& kernel, double threshold) {
  const int c = kernel.size / 2;
  const int w = mask.width();
  const int h = mask.height();
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int ky = 0; ky < kernel.size; ++ky) {
        const int sy = std::clamp(y + ky - c, 0, h - 1);
        for (int kx = 0; kx < kernel.size; ++kx) {
          const int sx = std::clamp(x + kx - c, 0, w - 1);
          if (mask.at(sx, sy)) acc += kernel.at(kx, ky);
        }
      }
      out.set(x, y, acc >= threshold);
    }
  return out;
}

BinaryMask mask_from_image(const Image& image, double threshold) {
  BinaryMask mask(image.width, image.height);
  for (int y = 0; y < image.height; ++y)
    for (int x = 0; x < image.width; ++x)
      mask.set(x, y, image.at(x, y, 0) / 255.0 >= threshold);
  return mask;
}

Image image_from_mask(const BinaryMask& mask) {
  Image img;
  img.width = mask.width();
  img.height = mask.height();
  img.channels = 1;
  img.data.resize(static_cast<std::size_t>(img.width) * img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) img.at(x, y) = mask.at(x, y) ? 255 : 0;
  return img;
}

FrameBlurResult correct_frame(const Frame& frame, const std::map<int, BinaryMask>& masks,
                              const BlurKernel& kernel, double mask_threshold) {
  FrameBlurResult result;
  result.frame = frame;
  Frame& f = result.frame;

  std::set<int> dropped;
  auto corrected_box = [&](int id, const BBox& original) -> std::optional<BBox> {
    auto it = masks.find(id);
    if (it == masks.end()) return original;
    return mask_to_box(blur_mask(it->second, kernel, mask_threshold));
  };

  std::vector<HandRecord> hands;
  for (auto& h : f.hands) {
    const auto box = corrected_box(h.id, h.box);
    if (!box) {
      dropped.insert(h.id);
      result.dropped_hands.push_back(h.id);
      continue;
    }
    h.box = *box;
    hands.push_back(h);
  }
  f.hands = std::move(hands);

  std::vector<ObjectRecord> objects;
  for (auto& o : f.objects) {
    const auto box = corrected_box(o.id, o.box);
    if (!box) {
      result.dropped_objects.push_back(o.id);
      continue;
    }
    o.box = *box;
    if (o.linked_hand && dropped.count(*o.linked_hand)) {
      o.linked_hand.reset();
      o.active = false;
    }
    objects.push_back(o);
  }
  f.objects = std::move(objects);

  const ImageSize image{static_cast<double>(f.width), static_cast<double>(f.height)};
  for (auto& h : f.hands) {
    if (h.state != ContactState::kInContact) continue;
    const ObjectRecord* linked = nullptr;
    for (const auto& o : f.objects)
      if (o.active && o.linked_hand == h.id && (!linked || o.id < linked->id)) linked = &o;
    if (!linked) {
      h.state = ContactState::kNoContact;
      h.offset.reset();
      result.released_hands.push_back(h.id);
    } else {
      h.offset = encode_offset(h.box, linked->box, image);
    }
  }
  return result;
}

}  // namespace ehoi
