#ifndef EHOIKIT_IMAGE_IO_HPP_
#define EHOIKIT_IMAGE_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace ehoi {

// Interleaved 8-bit raster, row-major.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  std::uint8_t& at(int x, int y, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

// Netpbm codec. Decoding accepts P2/P3/P5/P6 with maxval up to 255 (samples
// are rescaled to the 0..255 range); encoding emits P5 for one channel and
// P6 for three.
Image decode_pnm(const std::string& bytes);
std::string encode_pnm(const Image& image);

Image read_pnm(const std::string& path);
void write_pnm(const std::string& path, const Image& image);

}  // namespace ehoi

#endif  // EHOIKIT_IMAGE_IO_HPP_
