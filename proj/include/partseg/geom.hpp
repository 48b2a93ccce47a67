#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "partseg/error.hpp"

namespace partseg {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2() = default;
  Point2(double px, double py) : x(px), y(py) {}

  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  Point2 operator-() const { return {-x, -y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point2& o) const { return !(*this == o); }

  double norm() const { return std::hypot(x, y); }
};

inline double dot(const Point2& a, const Point2& b) {
  return a.x * b.x + a.y * b.y;
}
inline double cross(const Point2& a, const Point2& b) {
  return a.x * b.y - a.y * b.x;
}
inline double distance(const Point2& a, const Point2& b) {
  return (a - b).norm();
}

/// Closed polygon over lattice points. The first point is not repeated at the
/// end; orientation is counterclockwise (positive shoelace area with x right,
/// y up).
using Contour = std::vector<Point2>;

double signed_area(const Contour& c);

/// Oriented rectangle: center (x, y), extent w along the major axis at angle
/// a (radians in [0, pi)), extent h across it. w >= h by construction for
/// boxes produced by min_area_rotated_box.
struct RotatedBox {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
  double w = 0.0;
  double a = 0.0;

  Point2 center() const { return {x, y}; }
  double d_short() const { return std::min(h, w); }
  double area() const { return h * w; }
  std::array<Point2, 4> corners() const;
  bool contains(const Point2& p, double tol = 1e-6) const;
};

/// Minimal convex polygon containing all points, counterclockwise, with no
/// three collinear vertices retained. Degenerate inputs produce 1- or 2-point
/// results. Throws EmptyInput.
Contour convex_hull(const std::vector<Point2>& points);

/// Minimum-area enclosing rectangle (caliper sweep over hull edges).
/// Area ties resolve to the smallest angle. Collinear or single-point inputs
/// yield h = 0 (or h = w = 0). Throws EmptyInput.
RotatedBox min_area_rotated_box(const std::vector<Point2>& points);

/// Distance from p to the infinite line through a and b.
/// Throws DegenerateSegment when a == b.
double point_line_distance(const Point2& p, const Point2& a, const Point2& b);

}  // namespace partseg
