#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmrt/util/hash.hpp"

namespace mmrt::imageops {

// 8-bit RGB raster, row-major. Alpha is discarded at decode time.
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width * height * 3

  static RasterImage filled(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b);

  std::uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }

  bool operator==(const RasterImage& other) const = default;
};

// Content hash over dimensions plus the raw pixel buffer.
std::string image_hash(const RasterImage& img);

}  // namespace mmrt::imageops
