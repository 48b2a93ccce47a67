#pragma once

#include <utility>
#include <vector>

#include "partseg/geom.hpp"
#include "partseg/mask.hpp"

namespace partseg {

/// Outer boundary of the single 8-connected foreground component,
/// counterclockwise, each boundary pixel visited once (Moore-neighbor
/// tracing, first visit kept). Holes are ignored. A single-pixel mask yields
/// the 4-corner unit square around the pixel center.
/// Throws EmptyMask / MultiComponent.
Contour trace_contour(const BinaryMask& mask);

/// True iff every pixel on the rasterized segment (Bresenham) is foreground.
/// Throws OutOfBounds when an endpoint lies outside the mask.
bool segment_inside_mask(const Point2& p, const Point2& q,
                         const BinaryMask& mask);

/// Integer Bresenham rasterization from (x0, y0) to (x1, y1), inclusive.
std::vector<std::pair<int, int>> bresenham(int x0, int y0, int x1, int y1);

}  // namespace partseg
