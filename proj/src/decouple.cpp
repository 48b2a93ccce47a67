#include "partseg/decouple.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace partseg {

namespace {

struct PointLess {
  bool operator()(const Point2& a, const Point2& b) const {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

}  // namespace

ConcavityProfile concavity_profile(const Contour& contour) {
  ConcavityProfile prof;
  prof.contour = contour;
  const int n = static_cast<int>(contour.size());
  prof.concavity.assign(n, 0.0);
  prof.bridge.assign(n, std::nullopt);
  if (n == 0) raise(ErrorCode::EmptyInput, "concavity_profile: empty contour");

  const Contour hull = convex_hull(contour);
  const int k = static_cast<int>(hull.size());
  if (k <= 1) return prof;  // all points coincide

  std::map<Point2, int, PointLess> hull_index;
  for (int i = 0; i < k; ++i) hull_index[hull[i]] = i;

  // Contour indices where a hull vertex occurs; for a simple CCW contour
  // these appear in hull order.
  std::vector<std::pair<int, int>> occ;  // (contour idx, hull idx)
  for (int i = 0; i < n; ++i) {
    auto it = hull_index.find(contour[i]);
    if (it != hull_index.end()) occ.emplace_back(i, it->second);
  }

  const int m = static_cast<int>(occ.size());
  for (int t = 0; t < m; ++t) {
    const auto [ci, hi] = occ[t];
    const auto [cj, hj] = occ[(t + 1) % m];
    const Point2& a = contour[ci];
    const Point2& b = contour[cj];
    if (a == b) continue;
    // Pocket between consecutive hull occurrences; for a simple CCW contour
    // (a, b) is the hull edge hi -> hi+1, degenerate contours fall back to
    // the chord through a, b.
    (void)hj;
    const int arc_len = (cj - ci + n) % n;
    for (int s = 1; s < arc_len; ++s) {
      const int idx = (ci + s) % n;
      prof.concavity[idx] = point_line_distance(contour[idx], a, b);
      prof.bridge[idx] = hi;
    }
  }

  for (int i = 0; i < n; ++i) {
    if (prof.concavity[i] > prof.max_concavity) {
      prof.max_concavity = prof.concavity[i];
      prof.argmax = i;
    }
  }
  return prof;
}

double mask_concavity(const BinaryMask& mask) {
  return concavity_profile(trace_contour(mask)).max_concavity;
}

double decouple_tau(const BinaryMask& mask, const DecoupleConfig& cfg) {
  const RotatedBox box = min_area_rotated_box(mask.row_extremal_points());
  return cfg.tau_ratio * box.d_short();
}

namespace {

struct SplitParts {
  BinaryMask first;
  BinaryMask second;
};

// Removes the rasterized chord, requires exactly two remaining components,
// and hands the chord pixels to the component on the left of the directed
// ps -> pe line (mean signed cross; first-pixel order breaks exact ties).
std::optional<SplitParts> try_split(const BinaryMask& mask, const Point2& ps,
                                    const Point2& pe, int min_part_pixels) {
  const auto line = bresenham(static_cast<int>(std::llround(ps.x)),
                              static_cast<int>(std::llround(ps.y)),
                              static_cast<int>(std::llround(pe.x)),
                              static_cast<int>(std::llround(pe.y)));
  BinaryMask rem = mask;
  for (const auto& [x, y] : line) {
    if (!rem.in_bounds(x, y) || !mask.at(x, y)) return std::nullopt;
    rem.set(x, y, false);
  }

  std::vector<BinaryMask> comps = connected_components(rem);
  if (comps.size() != 2) return std::nullopt;

  const Point2 d = pe - ps;
  double side[2] = {0.0, 0.0};
  for (int c = 0; c < 2; ++c) {
    double sum = 0.0;
    std::int64_t cnt = 0;
    for (int y = 0; y < comps[c].height(); ++y)
      for (int x = 0; x < comps[c].width(); ++x)
        if (comps[c].at(x, y)) {
          sum += cross(d, Point2(x, y) - ps);
          ++cnt;
        }
    side[c] = sum / static_cast<double>(cnt);
  }
  const int left = side[0] > side[1] ? 0 : (side[1] > side[0] ? 1 : 0);
  for (const auto& [x, y] : line) comps[left].set(x, y, true);

  if (comps[0].area() < min_part_pixels || comps[1].area() < min_part_pixels)
    return std::nullopt;

  // Order by first row-major pixel.
  if (comps[1].first_pixel() < comps[0].first_pixel())
    std::swap(comps[0], comps[1]);
  return SplitParts{std::move(comps[0]), std::move(comps[1])};
}

}  // namespace

CutLine choose_cut(const BinaryMask& mask, const ConcavityProfile& profile,
                   const DecoupleConfig& cfg) {
  const Contour& contour = profile.contour;
  const int n = static_cast<int>(contour.size());
  const int ps_idx = profile.argmax;
  const Point2 ps = contour[ps_idx];

  std::vector<int> candidates;
  candidates.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int diff = std::abs(i - ps_idx);
    const int cyc = std::min(diff, n - diff);
    if (cyc > 2) candidates.push_back(i);
  }

  std::vector<double> score(n, 0.0);
  for (int i : candidates)
    score[i] = profile.concavity[i] - cfg.lambda_cut * distance(ps, contour[i]);
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return score[a] != score[b] ? score[a] > score[b] : a < b;
  });

  for (int i : candidates) {
    const Point2 pe = contour[i];
    if (!segment_inside_mask(ps, pe, mask)) continue;
    if (try_split(mask, ps, pe, cfg.min_part_pixels))
      return CutLine{ps, pe};
  }
  raise(ErrorCode::NoValidCut, "choose_cut: no endpoint satisfies the cut "
                               "constraints");
}

std::pair<BinaryMask, BinaryMask> split_once(const BinaryMask& mask,
                                             const CutLine& cut) {
  auto parts = try_split(mask, cut.start, cut.end, 1);
  if (!parts)
    raise(ErrorCode::SplitFailed,
          "split_once: cut does not yield exactly two parts");
  return {std::move(parts->first), std::move(parts->second)};
}

namespace {

void decouple_rec(const BinaryMask& mask, const DecoupleConfig& cfg, int depth,
                  std::vector<DecoupledPart>& out) {
  if (depth > 16)
    raise(ErrorCode::DepthExceeded, "decouple: recursion depth beyond 16");

  const Contour contour = trace_contour(mask);
  const ConcavityProfile prof = concavity_profile(contour);
  const RotatedBox box = min_area_rotated_box(contour);
  const double tau = cfg.tau_ratio * box.d_short();
  if (prof.max_concavity < tau || prof.max_concavity <= 0.0) {
    out.push_back({mask, false});
    return;
  }

  CutLine cut;
  try {
    cut = choose_cut(mask, prof, cfg);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoValidCut) throw;
    out.push_back({mask, true});
    return;
  }
  auto [a, b] = split_once(mask, cut);
  decouple_rec(a, cfg, depth + 1, out);
  decouple_rec(b, cfg, depth + 1, out);
}

}  // namespace

std::vector<DecoupledPart> decouple(const BinaryMask& mask,
                                    const DecoupleConfig& cfg) {
  if (mask.empty()) raise(ErrorCode::EmptyMask, "decouple: empty mask");
  std::vector<DecoupledPart> out;
  decouple_rec(mask, cfg, 0, out);
  std::sort(out.begin(), out.end(),
            [](const DecoupledPart& a, const DecoupledPart& b) {
              return a.mask.first_pixel() < b.mask.first_pixel();
            });
  return out;
}

namespace {

// Label centers live on a 2^-26 pixel grid: sums and differences of snapped
// coordinates are exact in double for any canvas below 2^13 pixels, so
// center_visible + u == center_full and the v antisymmetry hold bit-exactly.
Point2 snap_center(const Point2& p) {
  constexpr double kGrid = 67108864.0;  // 2^26
  return {std::round(p.x * kGrid) / kGrid, std::round(p.y * kGrid) / kGrid};
}

}  // namespace

PartSet label_parts(const std::vector<BinaryMask>& full_parts,
                    const BinaryMask& visible_instance) {
  const int n = static_cast<int>(full_parts.size());
  std::vector<Point2> centers(n);
  for (int i = 0; i < n; ++i) centers[i] = snap_center(centroid(full_parts[i]));

  PartSet set;
  set.n_parts = n;
  set.parts.reserve(n);
  for (int i = 0; i < n; ++i) {
    PartLabel label;
    label.full_mask = full_parts[i];
    label.visible_mask = intersect(full_parts[i], visible_instance);
    label.center_full = centers[i];
    label.occluded = label.visible_mask.empty();
    if (!label.occluded) {
      label.center_visible = snap_center(centroid(label.visible_mask));
      label.u = label.center_full - *label.center_visible;
    }
    label.v.reserve(n - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) label.v.push_back(centers[j] - centers[i]);
    set.parts.push_back(std::move(label));
  }
  return set;
}

PartSet make_part_labels(const BinaryMask& full_instance,
                         const BinaryMask& visible_instance,
                         const DecoupleConfig& cfg) {
  if (!is_subset(visible_instance, full_instance))
    raise(ErrorCode::VisibilityViolation,
          "make_part_labels: visible mask is not contained in the full mask");
  const auto parts = decouple(full_instance, cfg);
  std::vector<BinaryMask> masks;
  masks.reserve(parts.size());
  for (const auto& p : parts) masks.push_back(p.mask);
  return label_parts(masks, visible_instance);
}

}  // namespace partseg
