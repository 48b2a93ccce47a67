#include "partseg/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace partseg {

namespace {

constexpr double kPi = 3.141592653589793;

double normalize_angle(double a) {
  a = std::fmod(a, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;
  return a;
}

}  // namespace

double signed_area(const Contour& c) {
  double twice = 0.0;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = c[i];
    const Point2& q = c[(i + 1) % n];
    twice += cross(p, q);
  }
  return 0.5 * twice;
}

std::array<Point2, 4> RotatedBox::corners() const {
  const Point2 dir{std::cos(a), std::sin(a)};
  const Point2 perp{-dir.y, dir.x};
  const Point2 c{x, y};
  const Point2 eu = dir * (w * 0.5);
  const Point2 ev = perp * (h * 0.5);
  return {c - eu - ev, c + eu - ev, c + eu + ev, c - eu + ev};
}

bool RotatedBox::contains(const Point2& p, double tol) const {
  const Point2 dir{std::cos(a), std::sin(a)};
  const Point2 d = p - Point2{x, y};
  const double u = dot(d, dir);
  const double v = cross(dir, d);
  return std::abs(u) <= w * 0.5 + tol && std::abs(v) <= h * 0.5 + tol;
}

Contour convex_hull(const std::vector<Point2>& points) {
  if (points.empty()) raise(ErrorCode::EmptyInput, "convex_hull: no points");

  std::vector<Point2> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const std::size_t n = pts.size();
  if (n <= 2) return Contour(pts.begin(), pts.end());

  // Monotone chain; strict turns only, so collinear points drop out.
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 &&
           cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0)
      --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t &&
           cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

RotatedBox min_area_rotated_box(const std::vector<Point2>& points) {
  const Contour hull = convex_hull(points);
  const std::size_t k = hull.size();

  if (k == 1) return RotatedBox{hull[0].x, hull[0].y, 0.0, 0.0, 0.0};
  if (k == 2) {
    const Point2 d = hull[1] - hull[0];
    const Point2 mid = (hull[0] + hull[1]) * 0.5;
    return RotatedBox{mid.x, mid.y, 0.0, d.norm(),
                      normalize_angle(std::atan2(d.y, d.x))};
  }

  double best_area = std::numeric_limits<double>::infinity();
  double best_angle = 0.0;
  bool have_best = false;
  RotatedBox best;

  for (std::size_t i = 0; i < k; ++i) {
    const Point2 e = hull[(i + 1) % k] - hull[i];
    const double theta = std::atan2(e.y, e.x);
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u;
    double lo_v = lo_u, hi_v = -lo_u;
    for (const Point2& p : hull) {
      const double u = p.x * c + p.y * s;
      const double v = -p.x * s + p.y * c;
      lo_u = std::min(lo_u, u);
      hi_u = std::max(hi_u, u);
      lo_v = std::min(lo_v, v);
      hi_v = std::max(hi_v, v);
    }
    const double eu = hi_u - lo_u;
    const double ev = hi_v - lo_v;
    const double area = eu * ev;

    const double major = normalize_angle(eu >= ev ? theta : theta + kPi / 2.0);
    const double rel_tol = 1e-9 * std::max(1.0, std::abs(area));
    const bool better =
        !have_best || area < best_area - rel_tol ||
        (std::abs(area - best_area) <= rel_tol && major < best_angle - 1e-12);
    if (better) {
      const double mu = 0.5 * (lo_u + hi_u);
      const double mv = 0.5 * (lo_v + hi_v);
      RotatedBox box;
      box.x = mu * c - mv * s;
      box.y = mu * s + mv * c;
      if (eu >= ev) {
        box.w = eu;
        box.h = ev;
      } else {
        box.w = ev;
        box.h = eu;
      }
      box.a = major;
      best = box;
      best_area = area;
      best_angle = major;
      have_best = true;
    }
  }
  return best;
}

double point_line_distance(const Point2& p, const Point2& a, const Point2& b) {
  if (a == b)
    raise(ErrorCode::DegenerateSegment, "point_line_distance: a == b");
  const Point2 d = b - a;
  return std::abs(cross(d, p - a)) / d.norm();
}

}  // namespace partseg
