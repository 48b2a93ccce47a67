#pragma once

// Procedural shape builders and helpers shared by the unit and acceptance
// suites.

#include <cmath>
#include <vector>

#include <partseg/error.hpp>
#include <partseg/mask.hpp>
#include <partseg/rng.hpp>

namespace fixtures {

using partseg::BinaryMask;

inline void fill_rect(BinaryMask& m, int x0, int y0, int w, int h) {
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x)
      if (m.in_bounds(x, y)) m.set(x, y, true);
}

inline BinaryMask rect_mask(int W, int H, int x0, int y0, int w, int h) {
  BinaryMask m(W, H);
  fill_rect(m, x0, y0, w, h);
  return m;
}

/// L with pixels [0..30]x[0..10] plus [0..10]x[0..30]; the reflex boundary
/// pixel is (10, 10) and the hull bridges (30, 10)-(10, 30).
inline BinaryMask l_canonical() {
  BinaryMask m(32, 32);
  fill_rect(m, 0, 0, 31, 11);
  fill_rect(m, 0, 0, 11, 31);
  return m;
}

inline BinaryMask l_shape(int s) {
  const int len = 31 * s, t = 11 * s, margin = 2;
  BinaryMask m(len + 2 * margin, len + 2 * margin);
  fill_rect(m, margin, margin, len, t);
  fill_rect(m, margin, margin, t, len);
  return m;
}

inline BinaryMask t_shape(int s) {
  const int len = 31 * s, bar = 9 * s, margin = 2;
  BinaryMask m(len + 2 * margin, 31 * s + 2 * margin);
  fill_rect(m, margin, margin, len, bar);
  fill_rect(m, margin + 11 * s, margin + bar, 9 * s, 22 * s);
  return m;
}

inline BinaryMask u_shape(int s) {
  const int len = 31 * s, arm = 9 * s, margin = 2;
  BinaryMask m(len + 2 * margin, len + 2 * margin);
  fill_rect(m, margin, margin, arm, len);
  fill_rect(m, margin + 22 * s, margin, arm, len);
  fill_rect(m, margin, margin + 22 * s, len, arm);
  return m;
}

inline BinaryMask plus_shape(int s) {
  const int len = 31 * s, arm = 9 * s, margin = 2;
  BinaryMask m(len + 2 * margin, len + 2 * margin);
  fill_rect(m, margin, margin + 11 * s, len, arm);
  fill_rect(m, margin + 11 * s, margin, arm, len);
  return m;
}

inline BinaryMask s_shape(int s) {
  const int len = 31 * s, bar = 7 * s, margin = 2;
  BinaryMask m(len + 2 * margin, len + 2 * margin);
  fill_rect(m, margin, margin, len, bar);                       // top
  fill_rect(m, margin + 24 * s, margin, bar, 19 * s);           // right drop
  fill_rect(m, margin, margin + 12 * s, len, bar);              // middle
  fill_rect(m, margin, margin + 12 * s, bar, 19 * s);           // left drop
  fill_rect(m, margin, margin + 24 * s, len, bar);              // bottom
  return m;
}

inline void fill_disk(BinaryMask& m, double cx, double cy, double r) {
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      const double dx = x - cx, dy = y - cy;
      if (dx * dx + dy * dy <= r * r) m.set(x, y, true);
    }
}

inline BinaryMask disk_mask(int r) {
  BinaryMask m(2 * r + 5, 2 * r + 5);
  fill_disk(m, r + 2, r + 2, r);
  return m;
}

/// Handle with an open-jaw disk head.
inline BinaryMask wrench_shape(int s) {
  const int margin = 2;
  BinaryMask m(38 * s + 2 * margin, 31 * s + 2 * margin);
  fill_rect(m, margin, margin + 12 * s, 26 * s, 7 * s);  // handle
  fill_disk(m, margin + 28 * s, margin + 15 * s, 8 * s); // head
  // jaw: carve a bite out of the head's right side
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (x >= margin + 31 * s && y >= margin + 12 * s &&
          y < margin + 19 * s)
        m.set(x, y, false);
  return m;
}

/// Random blob: union of a few random rectangles, largest component kept.
inline BinaryMask random_polyomino(partseg::Rng& rng, int canvas = 64) {
  BinaryMask m(canvas, canvas);
  const int n = static_cast<int>(rng.uniform_int(2, 5));
  for (int i = 0; i < n; ++i) {
    const int w = static_cast<int>(rng.uniform_int(8, canvas / 2));
    const int h = static_cast<int>(rng.uniform_int(8, canvas / 2));
    const int x0 = static_cast<int>(rng.uniform_int(1, canvas - w - 1));
    const int y0 = static_cast<int>(rng.uniform_int(1, canvas - h - 1));
    fill_rect(m, x0, y0, w, h);
  }
  auto comps = partseg::connected_components(m);
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i)
    if (comps[i].area() > comps[best].area()) best = i;
  return comps[best];
}

inline BinaryMask random_mask(partseg::Rng& rng, int w, int h,
                              double density) {
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (rng.uniform() < density) m.set(x, y, true);
  return m;
}

/// Runs f and reports the thrown domain error code, if any.
template <typename F>
inline partseg::ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const partseg::Error& e) {
    return e.code();
  }
  return static_cast<partseg::ErrorCode>(-1);
}

}  // namespace fixtures
