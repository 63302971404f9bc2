#include "ehoikit/image_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

#include "ehoikit/errors.hpp"

namespace ehoi {

namespace {

struct Cursor {
  const std::string& bytes;
  std::size_t pos = 0;

  void skip_space_and_comments() {
    while (pos < bytes.size()) {
      const unsigned char c = bytes[pos];
      if (std::isspace(c)) {
        ++pos;
      } else if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  int read_int(const char* what) {
    skip_space_and_comments();
    if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos])))
      throw ParseError(std::string("PNM: expected ") + what);
    long v = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      v = v * 10 + (bytes[pos] - '0');
      if (v > 1 << 30) throw ParseError(std::string("PNM: ") + what + " out of range");
      ++pos;
    }
    return static_cast<int>(v);
  }
};

}  // namespace

Image decode_pnm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw ParseError("PNM: missing magic number");
  const char kind = bytes[1];
  const bool ascii = kind == '2' || kind == '3';
  const bool binary = kind == '5' || kind == '6';
  if (!ascii && !binary)
    throw ParseError(std::string("PNM: unsupported type P") + kind);
  Cursor cur{bytes, 2};
  Image img;
  img.channels = (kind == '3' || kind == '6') ? 3 : 1;
  img.width = cur.read_int("width");
  img.height = cur.read_int("height");
  const int maxval = cur.read_int("maxval");
  if (img.width <= 0 || img.height <= 0) throw ParseError("PNM: dimensions must be positive");
  if (maxval <= 0 || maxval > 255) throw ParseError("PNM: maxval must lie in 1..255");
  const std::size_t count =
      static_cast<std::size_t>(img.width) * img.height * img.channels;
  img.data.resize(count);
  if (ascii) {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = cur.read_int("sample");
      if (v > maxval) throw ParseError("PNM: sample exceeds maxval");
      img.data[i] = static_cast<std::uint8_t>(std::lround(v * 255.0 / maxval));
    }
  } else {
    if (cur.pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[cur.pos])))
      throw ParseError("PNM: missing raster separator");
    ++cur.pos;
    if (bytes.size() - cur.pos < count) throw ParseError("PNM: truncated raster");
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint8_t v = static_cast<std::uint8_t>(bytes[cur.pos + i]);
      if (v > maxval) throw ParseError("PNM: sample exceeds maxval");
      img.data[i] = maxval == 255 ? v
                                  : static_cast<std::uint8_t>(std::lround(v * 255.0 / maxval));
    }
  }
  return img;
}

std::string encode_pnm(const Image& image) {
  if (image.channels != 1 && image.channels != 3)
    throw std::invalid_argument("encode_pnm: image must have 1 or 3 channels");
  if (image.width <= 0 || image.height <= 0)
    throw std::invalid_argument("encode_pnm: image dimensions must be positive");
  const std::size_t count =
      static_cast<std::size_t>(image.width) * image.height * image.channels;
  if (image.data.size() != count)
    throw std::invalid_argument("encode_pnm: data size does not match dimensions");
  std::string out = image.channels == 1 ? "P5\n" : "P6\n";
  out += std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.data.data()), count);
  return out;
}

Image read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open image: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_pnm(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_pnm(const std::string& path, const Image& image) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write image: " + path);
  const std::string bytes = encode_pnm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ParseError("cannot write image: " + path);
}

}  // namespace ehoi
