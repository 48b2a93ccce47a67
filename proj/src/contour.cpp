#include "partseg/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <unordered_set>

namespace partseg {

namespace {

// 8-neighborhood in clockwise order (image coordinates, y = row):
// W, NW, N, NE, E, SE, S, SW.
constexpr int kDx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr int kDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

int dir_index(int dx, int dy) {
  for (int d = 0; d < 8; ++d)
    if (kDx[d] == dx && kDy[d] == dy) return d;
  return -1;
}

}  // namespace

Contour trace_contour(const BinaryMask& mask) {
  const auto start = mask.first_pixel();
  if (!start) raise(ErrorCode::EmptyMask, "trace_contour: empty mask");
  if (count_components(mask) != 1)
    raise(ErrorCode::MultiComponent,
          "trace_contour: mask has more than one component");

  const int sx = start->first;
  const int sy = start->second;
  if (mask.area() == 1) {
    return Contour{{sx - 0.5, sy - 0.5},
                   {sx + 0.5, sy - 0.5},
                   {sx + 0.5, sy + 0.5},
                   {sx - 0.5, sy + 0.5}};
  }

  // Moore-neighbor tracing with a background backtrack. The start pixel is
  // the first foreground pixel in row-major order, so its west neighbor is
  // background. Stop when the start pixel is re-entered with an already-seen
  // backtrack direction.
  std::vector<std::pair<int, int>> raw{{sx, sy}};
  int cx = sx, cy = sy, bd = 0;
  std::set<int> start_backtracks{0};
  const std::int64_t limit = 4 * static_cast<std::int64_t>(mask.width()) *
                                 mask.height() +
                             16;
  for (std::int64_t iter = 0; iter < limit; ++iter) {
    int nd = -1;
    for (int k = 1; k <= 8; ++k) {
      const int d = (bd + k) % 8;
      const int nx = cx + kDx[d], ny = cy + kDy[d];
      if (mask.in_bounds(nx, ny) && mask.at(nx, ny)) {
        nd = d;
        break;
      }
    }
    if (nd < 0) break;  // isolated pixel; unreachable for area > 1
    const int prev = (nd + 7) % 8;  // last background cell scanned
    const int bx = cx + kDx[prev], by = cy + kDy[prev];
    const int nx = cx + kDx[nd], ny = cy + kDy[nd];
    const int nbd = dir_index(bx - nx, by - ny);
    cx = nx;
    cy = ny;
    bd = nbd;
    if (cx == sx && cy == sy) {
      if (start_backtracks.count(bd)) break;
      start_backtracks.insert(bd);
    }
    raw.emplace_back(cx, cy);
  }

  // Keep the first visit of every boundary pixel.
  std::vector<std::pair<int, int>> walked;
  walked.reserve(raw.size());
  std::unordered_set<std::int64_t> seen;
  const auto key_of = [&](int x, int y) {
    return static_cast<std::int64_t>(y) * mask.width() + x;
  };
  for (const auto& [x, y] : raw)
    if (seen.insert(key_of(x, y)).second) walked.emplace_back(x, y);

  // The Moore walk crosses inside corners diagonally; pull the skipped
  // corner pixel (a boundary pixel whose only background contact is
  // diagonal) back into the sequence.
  const auto is_boundary = [&](int x, int y) {
    if (!mask.in_bounds(x, y) || !mask.at(x, y)) return false;
    for (int d = 0; d < 8; ++d) {
      const int nx = x + kDx[d], ny = y + kDy[d];
      if (!mask.in_bounds(nx, ny) || !mask.at(nx, ny)) return true;
    }
    return false;
  };
  Contour contour;
  contour.reserve(walked.size() + 8);
  const std::size_t m = walked.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto [px, py] = walked[i];
    const auto [qx, qy] = walked[(i + 1) % m];
    contour.emplace_back(px, py);
    if (std::abs(px - qx) == 1 && std::abs(py - qy) == 1) {
      for (const auto& [rx, ry] : {std::pair{px, qy}, std::pair{qx, py}}) {
        if (is_boundary(rx, ry) && seen.insert(key_of(rx, ry)).second) {
          contour.emplace_back(rx, ry);
          break;
        }
      }
    }
  }

  if (signed_area(contour) < 0.0)
    std::reverse(contour.begin(), contour.end());

  // Canonical start: row-major smallest point first.
  auto smallest = std::min_element(
      contour.begin(), contour.end(), [](const Point2& a, const Point2& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
      });
  std::rotate(contour.begin(), smallest, contour.end());
  return contour;
}

std::vector<std::pair<int, int>> bresenham(int x0, int y0, int x1, int y1) {
  std::vector<std::pair<int, int>> px;
  const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
  const int stepx = x0 < x1 ? 1 : -1;
  const int stepy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  int x = x0, y = y0;
  while (true) {
    px.emplace_back(x, y);
    if (x == x1 && y == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += stepx;
    }
    if (e2 <= dx) {
      err += dx;
      y += stepy;
    }
  }
  return px;
}

bool segment_inside_mask(const Point2& p, const Point2& q,
                         const BinaryMask& mask) {
  const int x0 = static_cast<int>(std::llround(p.x));
  const int y0 = static_cast<int>(std::llround(p.y));
  const int x1 = static_cast<int>(std::llround(q.x));
  const int y1 = static_cast<int>(std::llround(q.y));
  if (!mask.in_bounds(x0, y0) || !mask.in_bounds(x1, y1))
    raise(ErrorCode::OutOfBounds, "segment_inside_mask: endpoint off canvas");
  for (const auto& [x, y] : bresenham(x0, y0, x1, y1))
    if (!mask.at(x, y)) return false;
  return true;
}

}  // namespace partseg
