#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "partseg/geom.hpp"

namespace partseg {

/// Inclusive pixel rectangle.
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;
  int y1 = -1;

  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
};

/// Row-major binary raster. Pixel (x, y) has its center at coordinates
/// (x, y); x is the column, y the row.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);
  static BinaryMask from_bits(int width, int height,
                              std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }
  bool at(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool v) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
  }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  std::int64_t area() const;
  bool empty() const { return area() == 0; }
  bool same_size(const BinaryMask& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }
  std::optional<PixelRect> bbox() const;
  /// First foreground pixel in row-major order.
  std::optional<std::pair<int, int>> first_pixel() const;
  std::vector<Point2> foreground_points() const;
  /// Leftmost and rightmost foreground pixel of every row; the convex hull
  /// of these equals the hull of all foreground pixels.
  std::vector<Point2> row_extremal_points() const;

  bool operator==(const BinaryMask& o) const {
    return width_ == o.width_ && height_ == o.height_ && bits_ == o.bits_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Row-major run-length counts, first run counting background pixels
/// (possibly zero). Counts sum to width*height.
std::vector<std::int64_t> rle_encode(const BinaryMask& mask);
/// Throws LengthMismatch on bad sums or negative counts.
BinaryMask rle_decode(int width, int height,
                      const std::vector<std::int64_t>& counts);

/// 8-connected components, ordered by their first row-major pixel.
std::vector<BinaryMask> connected_components(const BinaryMask& mask);
int count_components(const BinaryMask& mask);

/// Mean of foreground pixel-center coordinates. Throws EmptyMask.
Point2 centroid(const BinaryMask& mask);

/// |a & b| / |a | b|; 0 when both empty. Throws DimensionMismatch.
double iou(const BinaryMask& a, const BinaryMask& b);
std::int64_t intersection_area(const BinaryMask& a, const BinaryMask& b);

/// Morphology with a (2r+1) x (2r+1) square structuring element. Erosion
/// treats out-of-canvas pixels as foreground so that closing never strips
/// border-adjacent pixels; dilation clips at the canvas.
BinaryMask dilate(const BinaryMask& mask, int radius);
BinaryMask erode(const BinaryMask& mask, int radius);
BinaryMask closing(const BinaryMask& mask, int radius);

/// Minimum over in-plane rotations theta in [0, 90) deg, stepped by
/// angle_step_deg, of foreground area over the axis-aligned bounding box of
/// the rotated pixel set (per-axis extent of rotated pixel centers plus one
/// pixel of footprint). Throws EmptyMask.
double solidity(const BinaryMask& mask, double angle_step_deg = 1.0);

BinaryMask intersect(const BinaryMask& a, const BinaryMask& b);
BinaryMask unite(const BinaryMask& a, const BinaryMask& b);
BinaryMask subtract(const BinaryMask& a, const BinaryMask& b);
bool is_subset(const BinaryMask& a, const BinaryMask& b);

/// Shift by (dx, dy); pixels leaving the canvas are dropped.
BinaryMask translate(const BinaryMask& mask, int dx, int dy);

}  // namespace partseg
