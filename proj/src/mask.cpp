#include "partseg/mask.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "partseg/contour.hpp"

namespace partseg {

BinaryMask::BinaryMask(int width, int height)
    : width_(width),
      height_(height),
      bits_(static_cast<std::size_t>(width) * height, 0) {}

BinaryMask BinaryMask::from_bits(int width, int height,
                                 std::vector<std::uint8_t> bits) {
  if (bits.size() != static_cast<std::size_t>(width) * height)
    raise(ErrorCode::LengthMismatch, "from_bits: bits length != width*height");
  BinaryMask m(width, height);
  for (auto& b : bits) b = b ? 1 : 0;
  m.bits_ = std::move(bits);
  return m;
}

std::int64_t BinaryMask::area() const {
  return std::accumulate(bits_.begin(), bits_.end(), std::int64_t{0});
}

std::optional<PixelRect> BinaryMask::bbox() const {
  PixelRect r{width_, height_, -1, -1};
  for (int y = 0; y < height_; ++y) {
    const std::uint8_t* row = bits_.data() + static_cast<std::size_t>(y) * width_;
    for (int x = 0; x < width_; ++x) {
      if (!row[x]) continue;
      r.x0 = std::min(r.x0, x);
      r.x1 = std::max(r.x1, x);
      r.y0 = std::min(r.y0, y);
      r.y1 = std::max(r.y1, y);
    }
  }
  if (r.x1 < 0) return std::nullopt;
  return r;
}

std::optional<std::pair<int, int>> BinaryMask::first_pixel() const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i])
      return std::make_pair(static_cast<int>(i % width_),
                            static_cast<int>(i / width_));
  return std::nullopt;
}

std::vector<Point2> BinaryMask::foreground_points() const {
  std::vector<Point2> pts;
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      if (at(x, y)) pts.emplace_back(x, y);
  return pts;
}

std::vector<Point2> BinaryMask::row_extremal_points() const {
  std::vector<Point2> pts;
  for (int y = 0; y < height_; ++y) {
    const std::uint8_t* row = bits_.data() + static_cast<std::size_t>(y) * width_;
    int lo = -1, hi = -1;
    for (int x = 0; x < width_; ++x) {
      if (!row[x]) continue;
      if (lo < 0) lo = x;
      hi = x;
    }
    if (lo < 0) continue;
    pts.emplace_back(lo, y);
    if (hi != lo) pts.emplace_back(hi, y);
  }
  return pts;
}

std::vector<std::int64_t> rle_encode(const BinaryMask& mask) {
  std::vector<std::int64_t> counts;
  std::uint8_t current = 0;  // first run counts background
  std::int64_t run = 0;
  for (std::uint8_t b : mask.bits()) {
    if (b == current) {
      ++run;
    } else {
      counts.push_back(run);
      current = b;
      run = 1;
    }
  }
  counts.push_back(run);
  if (counts.empty()) counts.push_back(0);
  return counts;
}

BinaryMask rle_decode(int width, int height,
                      const std::vector<std::int64_t>& counts) {
  const std::int64_t total = static_cast<std::int64_t>(width) * height;
  std::int64_t sum = 0;
  for (std::int64_t c : counts) {
    if (c < 0) raise(ErrorCode::LengthMismatch, "rle_decode: negative count");
    sum += c;
  }
  if (sum != total)
    raise(ErrorCode::LengthMismatch, "rle_decode: counts sum " +
                                         std::to_string(sum) + " != " +
                                         std::to_string(total));
  BinaryMask m(width, height);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(total));
  std::size_t pos = 0;
  std::uint8_t value = 0;
  for (std::int64_t c : counts) {
    std::fill_n(bits.begin() + pos, c, value);
    pos += static_cast<std::size_t>(c);
    value ^= 1;
  }
  return BinaryMask::from_bits(width, height, std::move(bits));
}

namespace {

struct LabelGrid {
  std::vector<std::int32_t> labels;  // -1 background
  std::vector<std::int64_t> sizes;
  int n = 0;
};

LabelGrid label_components(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  LabelGrid out;
  out.labels.assign(static_cast<std::size_t>(w) * h, -1);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (!mask.at(x, y) || out.labels[idx] >= 0) continue;
      const int label = out.n++;
      out.sizes.push_back(0);
      stack.clear();
      stack.emplace_back(x, y);
      out.labels[idx] = label;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        ++out.sizes[label];
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = cx + dx, ny = cy + dy;
            if (!mask.in_bounds(nx, ny) || !mask.at(nx, ny)) continue;
            const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
            if (out.labels[nidx] >= 0) continue;
            out.labels[nidx] = label;
            stack.emplace_back(nx, ny);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<BinaryMask> connected_components(const BinaryMask& mask) {
  const LabelGrid grid = label_components(mask);
  std::vector<BinaryMask> comps(grid.n, BinaryMask(mask.width(), mask.height()));
  const int w = mask.width();
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < w; ++x) {
      const std::int32_t l = grid.labels[static_cast<std::size_t>(y) * w + x];
      if (l >= 0) comps[l].set(x, y, true);
    }
  return comps;  // scan order of discovery == order by first row-major pixel
}

int count_components(const BinaryMask& mask) {
  return label_components(mask).n;
}

Point2 centroid(const BinaryMask& mask) {
  std::int64_t sx = 0, sy = 0, n = 0;
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (mask.at(x, y)) {
        sx += x;
        sy += y;
        ++n;
      }
  if (n == 0) raise(ErrorCode::EmptyMask, "centroid: empty mask");
  return {static_cast<double>(sx) / n, static_cast<double>(sy) / n};
}

std::int64_t intersection_area(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_size(b))
    raise(ErrorCode::DimensionMismatch, "intersection_area: size mismatch");
  const auto ra = a.bbox();
  const auto rb = b.bbox();
  if (!ra || !rb) return 0;
  const int x0 = std::max(ra->x0, rb->x0), x1 = std::min(ra->x1, rb->x1);
  const int y0 = std::max(ra->y0, rb->y0), y1 = std::min(ra->y1, rb->y1);
  std::int64_t inter = 0;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (a.at(x, y) && b.at(x, y)) ++inter;
  return inter;
}

double iou(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_size(b))
    raise(ErrorCode::DimensionMismatch, "iou: size mismatch");
  const std::int64_t inter = intersection_area(a, b);
  const std::int64_t uni = a.area() + b.area() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

// Integral image over the mask; sums_[y][x] counts foreground in [0,x)x[0,y).
std::vector<std::int32_t> integral(const BinaryMask& m) {
  const int w = m.width(), h = m.height();
  std::vector<std::int32_t> s(static_cast<std::size_t>(w + 1) * (h + 1), 0);
  for (int y = 0; y < h; ++y) {
    std::int32_t row = 0;
    for (int x = 0; x < w; ++x) {
      row += m.at(x, y) ? 1 : 0;
      s[static_cast<std::size_t>(y + 1) * (w + 1) + (x + 1)] =
          s[static_cast<std::size_t>(y) * (w + 1) + (x + 1)] + row;
    }
  }
  return s;
}

std::int32_t rect_sum(const std::vector<std::int32_t>& s, int w, int x0,
                      int y0, int x1, int y1) {
  // inclusive rect, assumed clipped
  return s[static_cast<std::size_t>(y1 + 1) * (w + 1) + (x1 + 1)] -
         s[static_cast<std::size_t>(y0) * (w + 1) + (x1 + 1)] -
         s[static_cast<std::size_t>(y1 + 1) * (w + 1) + x0] +
         s[static_cast<std::size_t>(y0) * (w + 1) + x0];
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, int radius) {
  if (radius <= 0) return mask;
  const int w = mask.width(), h = mask.height();
  const auto s = integral(mask);
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
      const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
      if (rect_sum(s, w, x0, y0, x1, y1) > 0) out.set(x, y, true);
    }
  return out;
}

BinaryMask erode(const BinaryMask& mask, int radius) {
  if (radius <= 0) return mask;
  const int w = mask.width(), h = mask.height();
  const auto s = integral(mask);
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
      const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
      const std::int32_t window = (x1 - x0 + 1) * (y1 - y0 + 1);
      if (rect_sum(s, w, x0, y0, x1, y1) == window) out.set(x, y, true);
    }
  return out;
}

BinaryMask closing(const BinaryMask& mask, int radius) {
  if (radius <= 0) return mask;
  return erode(dilate(mask, radius), radius);
}

double solidity(const BinaryMask& mask, double angle_step_deg) {
  if (angle_step_deg <= 0.0 || angle_step_deg > 90.0)
    raise(ErrorCode::OutOfBounds, "solidity: angle_step must be in (0, 90]");
  const std::int64_t area = mask.area();
  if (area == 0) raise(ErrorCode::EmptyMask, "solidity: empty mask");

  const Contour hull = convex_hull(mask.row_extremal_points());
  double best = std::numeric_limits<double>::infinity();
  for (double deg = 0.0; deg < 90.0; deg += angle_step_deg) {
    const double t = deg * 3.141592653589793 / 180.0;
    const double c = std::cos(t), s = std::sin(t);
    double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u;
    double lo_v = lo_u, hi_v = -lo_u;
    for (const Point2& p : hull) {
      const double u = p.x * c - p.y * s;
      const double v = p.x * s + p.y * c;
      lo_u = std::min(lo_u, u);
      hi_u = std::max(hi_u, u);
      lo_v = std::min(lo_v, v);
      hi_v = std::max(hi_v, v);
    }
    const double bw = (hi_u - lo_u) + 1.0;  // +1: pixel footprint
    const double bh = (hi_v - lo_v) + 1.0;
    best = std::min(best, static_cast<double>(area) / (bw * bh));
  }
  return best;
}

BinaryMask intersect(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_size(b))
    raise(ErrorCode::DimensionMismatch, "intersect: size mismatch");
  std::vector<std::uint8_t> bits(a.bits().size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    bits[i] = a.bits()[i] & b.bits()[i];
  return BinaryMask::from_bits(a.width(), a.height(), std::move(bits));
}

BinaryMask unite(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_size(b))
    raise(ErrorCode::DimensionMismatch, "unite: size mismatch");
  std::vector<std::uint8_t> bits(a.bits().size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    bits[i] = a.bits()[i] | b.bits()[i];
  return BinaryMask::from_bits(a.width(), a.height(), std::move(bits));
}

BinaryMask subtract(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_size(b))
    raise(ErrorCode::DimensionMismatch, "subtract: size mismatch");
  std::vector<std::uint8_t> bits(a.bits().size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    bits[i] = a.bits()[i] & static_cast<std::uint8_t>(~b.bits()[i]);
  return BinaryMask::from_bits(a.width(), a.height(), std::move(bits));
}

bool is_subset(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_size(b))
    raise(ErrorCode::DimensionMismatch, "is_subset: size mismatch");
  for (std::size_t i = 0; i < a.bits().size(); ++i)
    if (a.bits()[i] && !b.bits()[i]) return false;
  return true;
}

BinaryMask translate(const BinaryMask& mask, int dx, int dy) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      const int nx = x + dx, ny = y + dy;
      if (out.in_bounds(nx, ny)) out.set(nx, ny, true);
    }
  return out;
}

}  // namespace partseg
