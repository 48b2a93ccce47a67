#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partseg/mask.hpp"

namespace partseg {

/// Reads any libpng-supported image as a mask: pixels with luminance >= 128
/// are foreground. Throws IoError.
BinaryMask read_mask_png(const std::string& path);

/// 8-bit grayscale, foreground 255, background 0.
void write_mask_png(const std::string& path, const BinaryMask& mask);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB triples

  RgbImage() = default;
  RgbImage(int w, int h)
      : width(w), height(h),
        pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

  void put(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    auto* p = &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
    p[0] = r;
    p[1] = g;
    p[2] = b;
  }
};

void write_rgb_png(const std::string& path, const RgbImage& image);

}  // namespace partseg
