#ifndef EHOIKIT_AUGMENT_HPP_
#define EHOIKIT_AUGMENT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ehoikit/dataset.hpp"
#include "ehoikit/geometry.hpp"
#include "ehoikit/image_io.hpp"

namespace ehoi {

// Square odd-sized filter with weights normalized to unit sum.
struct BlurKernel {
  int size = 1;
  std::vector<double> weights;  // row-major, size*size

  double& at(int kx, int ky) { return weights[static_cast<std::size_t>(ky) * size + kx]; }
  double at(int kx, int ky) const { return weights[static_cast<std::size_t>(ky) * size + kx]; }
  double sum() const;
};

struct KernelConfig {
  int size = 17;              // odd, >= 1
  int trajectory_points = 4;  // piecewise-linear path control points, >= 2
};

// Motion trajectory kernel: control points drawn uniformly over the kernel
// square (the middle one pinned to the center), connected segments splatted
// bilinearly at subpixel resolution, weights normalized to 1. Size 1 yields
// the identity kernel. Same seed, same kernel.
BlurKernel generate_kernel(const KernelConfig& config, std::uint64_t seed);

// Unit impulse at the center.
BlurKernel delta_kernel(int size);

// Size on the first line, then one row of weights per line.
std::string kernel_to_text(const BlurKernel& kernel);

// Correlation with replicate borders, per channel: a unit weight at cell
// (kx, ky) moves content by (center - kx, center - ky) pixels.
std::vector<double> convolve_exact(const Image& image, const BlurKernel& kernel);
Image convolve(const Image& image, const BlurKernel& kernel);

// Blurs a binary mask in real arithmetic and keeps pixels at or above
// `threshold`.
BinaryMask blur_mask(const BinaryMask& mask, const BlurKernel& kernel, double threshold);

// Pixel is set when value/255 reaches `threshold`. Multi-channel images use
// channel 0.
BinaryMask mask_from_image(const Image& image, double threshold);
Image image_from_mask(const BinaryMask& mask);

struct FrameBlurResult {
  Frame frame;
  std::vector<int> dropped_hands;    // mask blurred away entirely
  std::vector<int> dropped_objects;
  std::vector<int> released_hands;   // flipped to no_contact
};

// Rewrites a frame's annotation geometry after its masks were blurred with
// `kernel`: boxes tighten to the blurred mask extents, annotations whose
// mask vanishes are removed, objects linked to a removed hand become
// inactive, in-contact hands left without an active object flip to
// no_contact, and surviving interactions get their offsets re-encoded from
// the corrected boxes. Annotations without an entry in `masks` keep their
// box.
FrameBlurResult correct_frame(const Frame& frame, const std::map<int, BinaryMask>& masks,
                              const BlurKernel& kernel, double mask_threshold);

}  // namespace ehoi

#endif  // EHOIKIT_AUGMENT_HPP_
