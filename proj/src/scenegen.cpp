#include "partseg/scenegen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "partseg/rng.hpp"

namespace partseg {

namespace {

constexpr double kTwoPi = 2.0 * 3.141592653589793;

}  // namespace

Template make_template(const std::string& name, const BinaryMask& mask,
                       const DecoupleConfig& cfg) {
  Template tmpl;
  tmpl.name = name;
  tmpl.full_mask = mask;
  tmpl.parts = make_part_labels(mask, mask, cfg);
  tmpl.solidity = solidity(mask);
  return tmpl;
}

namespace {

struct RotatedPatch {
  int width = 0;
  int height = 0;
  BinaryMask full;
  std::vector<BinaryMask> parts;
};

// Nearest-neighbor rotation of the template part-label map, then
// largest-component cleanup of the full mask. Parts stay an exact partition
// of the cleaned full mask. Returns false when a part vanishes entirely.
bool rotate_template(const Template& tmpl, double theta, RotatedPatch& out) {
  const int tw = tmpl.full_mask.width();
  const int th = tmpl.full_mask.height();
  const int n_parts = tmpl.parts.n_parts;

  std::vector<std::int16_t> label(static_cast<std::size_t>(tw) * th, -1);
  for (int p = 0; p < n_parts; ++p) {
    const BinaryMask& pm = tmpl.parts.parts[p].full_mask;
    for (int y = 0; y < th; ++y)
      for (int x = 0; x < tw; ++x)
        if (pm.at(x, y)) label[static_cast<std::size_t>(y) * tw + x] =
            static_cast<std::int16_t>(p);
  }

  const double c = std::cos(theta), s = std::sin(theta);
  const double cx = 0.5 * (tw - 1), cy = 0.5 * (th - 1);
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  const double corners[4][2] = {{-0.5, -0.5},
                                {tw - 0.5, -0.5},
                                {tw - 0.5, th - 0.5},
                                {-0.5, th - 0.5}};
  for (const auto& q : corners) {
    const double rx = c * (q[0] - cx) - s * (q[1] - cy);
    const double ry = s * (q[0] - cx) + c * (q[1] - cy);
    xmin = std::min(xmin, rx);
    xmax = std::max(xmax, rx);
    ymin = std::min(ymin, ry);
    ymax = std::max(ymax, ry);
  }
  const int ow = static_cast<int>(std::ceil(xmax - xmin));
  const int oh = static_cast<int>(std::ceil(ymax - ymin));

  out.width = ow;
  out.height = oh;
  out.full = BinaryMask(ow, oh);
  out.parts.assign(n_parts, BinaryMask(ow, oh));
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      const double rx = x + xmin;
      const double ry = y + ymin;
      // inverse rotation back into template coordinates
      const double sx = c * rx + s * ry + cx;
      const double sy = -s * rx + c * ry + cy;
      const int ix = static_cast<int>(std::lround(sx));
      const int iy = static_cast<int>(std::lround(sy));
      if (ix < 0 || ix >= tw || iy < 0 || iy >= th) continue;
      const std::int16_t l = label[static_cast<std::size_t>(iy) * tw + ix];
      if (l < 0) continue;
      out.full.set(x, y, true);
      out.parts[l].set(x, y, true);
    }
  }

  if (out.full.empty()) return false;
  auto comps = connected_components(out.full);
  if (comps.size() > 1) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
      if (comps[i].area() > comps[best].area()) best = i;
    out.full = comps[best];
    for (auto& part : out.parts) part = intersect(part, out.full);
  }
  for (const auto& part : out.parts)
    if (part.empty()) return false;
  return true;
}

BinaryMask paste(const BinaryMask& patch, int tx, int ty, int W, int H) {
  BinaryMask out(W, H);
  for (int y = 0; y < patch.height(); ++y)
    for (int x = 0; x < patch.width(); ++x)
      if (patch.at(x, y)) out.set(tx + x, ty + y, true);
  return out;
}

}  // namespace

Scene compose_scene(const Template& tmpl, int lo, int hi, int width,
                    int height, std::uint64_t seed) {
  Scene scene;
  scene.width = width;
  scene.height = height;

  const Rng base(seed);
  Rng master = base.substream(0);
  const int k = static_cast<int>(master.uniform_int(lo, hi));

  struct Placed {
    Pose pose;
    RotatedPatch patch;
  };
  std::vector<Placed> placed;
  for (int i = 0; i < k; ++i) {
    Rng rng = base.substream(static_cast<std::uint64_t>(i) + 1);
    bool ok = false;
    Placed inst;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      const double theta = rng.uniform(0.0, kTwoPi);
      RotatedPatch patch;
      if (!rotate_template(tmpl, theta, patch)) continue;
      if (patch.width > width || patch.height > height) continue;
      const int tx = static_cast<int>(rng.uniform_int(0, width - patch.width));
      const int ty =
          static_cast<int>(rng.uniform_int(0, height - patch.height));
      inst.pose = Pose{tx, ty, theta};
      inst.patch = std::move(patch);
      ok = true;
    }
    if (!ok) {
      scene.skipped.push_back(i);
      continue;
    }
    placed.push_back(std::move(inst));
  }

  const int m = static_cast<int>(placed.size());
  std::vector<BinaryMask> fulls(m);
  for (int i = 0; i < m; ++i)
    fulls[i] = paste(placed[i].patch.full, placed[i].pose.tx,
                     placed[i].pose.ty, width, height);

  // Later placements sit on top; visible = full minus everything in front.
  BinaryMask occluders(width, height);
  std::vector<BinaryMask> visibles(m);
  for (int i = m - 1; i >= 0; --i) {
    visibles[i] = subtract(fulls[i], occluders);
    occluders = unite(occluders, fulls[i]);
  }

  scene.instances.reserve(m);
  for (int i = 0; i < m; ++i) {
    SceneInstance inst;
    inst.pose = placed[i].pose;
    inst.full_mask = std::move(fulls[i]);
    inst.visible_mask = std::move(visibles[i]);
    std::vector<BinaryMask> part_masks;
    part_masks.reserve(placed[i].patch.parts.size());
    for (const auto& p : placed[i].patch.parts)
      part_masks.push_back(
          paste(p, placed[i].pose.tx, placed[i].pose.ty, width, height));
    inst.parts = label_parts(part_masks, inst.visible_mask);
    scene.instances.push_back(std::move(inst));
  }
  for (int i = m - 1; i >= 0; --i) scene.z_order.push_back(i);
  return scene;
}

std::vector<PartPrediction> ground_truth_predictions(const Scene& scene,
                                                     double min_visible_frac) {
  std::vector<PartPrediction> preds;
  for (const SceneInstance& inst : scene.instances) {
    for (const PartLabel& part : inst.parts.parts) {
      const double full_area = static_cast<double>(part.full_mask.area());
      const double vis_area = static_cast<double>(part.visible_mask.area());
      const double frac = full_area > 0.0 ? vis_area / full_area : 0.0;
      if (frac < min_visible_frac || vis_area == 0.0) continue;
      PartPrediction p;
      p.mask = part.visible_mask;
      p.score = frac;
      p.u = part.u.value_or(Point2{0.0, 0.0});
      p.v = part.v;
      preds.push_back(std::move(p));
    }
  }
  return preds;
}

std::vector<PartPrediction> perturb(const std::vector<PartPrediction>& preds,
                                    const PerturbationConfig& cfg) {
  std::vector<PartPrediction> out;
  if (preds.empty()) return out;
  const int W = preds[0].mask.width();
  const int H = preds[0].mask.height();
  const Rng base(cfg.seed);
  const int n = static_cast<int>(preds.size());

  for (int i = 0; i < n; ++i) {
    Rng rng = base.substream(static_cast<std::uint64_t>(i) * 2 + 1);
    if (rng.uniform() < cfg.p_drop) continue;
    PartPrediction p = preds[i];
    const int dx = static_cast<int>(std::lround(rng.gaussian(cfg.sigma_center)));
    const int dy = static_cast<int>(std::lround(rng.gaussian(cfg.sigma_center)));
    if (dx != 0 || dy != 0) p.mask = translate(p.mask, dx, dy);
    if (cfg.mask_jitter > 0) {
      const int j = static_cast<int>(
          rng.uniform_int(-cfg.mask_jitter, cfg.mask_jitter));
      if (j > 0) p.mask = dilate(p.mask, j);
      if (j < 0) p.mask = erode(p.mask, -j);
    }
    if (p.mask.empty()) continue;  // clipped or eroded away entirely
    p.u = p.u + Point2{rng.gaussian(cfg.sigma_offset),
                       rng.gaussian(cfg.sigma_offset)};
    for (Point2& v : p.v)
      v = v + Point2{rng.gaussian(cfg.sigma_offset),
                     rng.gaussian(cfg.sigma_offset)};
    out.push_back(std::move(p));
  }

  // Spurious detections: copies of random parts at uniform positions with
  // random offsets, appended after the surviving predictions.
  for (int i = 0; i < n; ++i) {
    Rng rng = base.substream(static_cast<std::uint64_t>(i) * 2 + 2);
    if (rng.uniform() >= cfg.p_spurious) continue;
    const int src = static_cast<int>(rng.uniform_int(0, n - 1));
    const auto box = preds[src].mask.bbox();
    if (!box) continue;
    const int bw = box->width(), bh = box->height();
    if (bw > W || bh > H) continue;
    const int tx = static_cast<int>(rng.uniform_int(0, W - bw));
    const int ty = static_cast<int>(rng.uniform_int(0, H - bh));
    PartPrediction p;
    p.mask = translate(preds[src].mask, tx - box->x0, ty - box->y0);
    p.score = rng.uniform(0.05, 0.5);
    const double span = 0.25 * std::max(W, H);
    p.u = Point2{rng.uniform(-span, span), rng.uniform(-span, span)};
    p.v.reserve(preds[src].v.size());
    for (std::size_t j = 0; j < preds[src].v.size(); ++j)
      p.v.push_back(Point2{rng.uniform(-span, span), rng.uniform(-span, span)});
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace partseg
