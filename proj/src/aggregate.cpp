#include "partseg/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "partseg/rng.hpp"

namespace partseg {

namespace {

constexpr float kForbidden = 1e12f;

std::uint64_t cell_key(std::int64_t ix, std::int64_t iy) {
  return (static_cast<std::uint64_t>(ix) << 32) ^
         (static_cast<std::uint64_t>(iy) & 0xffffffffULL);
}

}  // namespace

PartFeature part_feature(const PartPrediction& pred) {
  if (pred.mask.empty())
    raise(ErrorCode::EmptyMask, "part_feature: empty prediction mask");
  PartFeature f;
  f.center = centroid(pred.mask);
  f.u = pred.u;
  f.corrected = f.center + pred.u;
  f.v = pred.v;
  f.score = pred.score;
  f.area = static_cast<double>(pred.mask.area());
  f.box = min_area_rotated_box(pred.mask.row_extremal_points());
  return f;
}

Point2 corrected_center(const PartPrediction& pred) {
  if (pred.mask.empty())
    raise(ErrorCode::EmptyMask, "corrected_center: empty prediction mask");
  return centroid(pred.mask) + pred.u;
}

double matching_epsilon(const PartFeature& feat, const AggregateConfig& cfg) {
  return cfg.epsilon_ratio * std::max(feat.box.d_short(), 1.0);
}

CenterGrid::CenterGrid(std::vector<Point2> points, double cell)
    : cell_(std::max(cell, 1e-9)), points_(std::move(points)) {
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
    const auto ix = static_cast<std::int64_t>(std::floor(points_[i].x / cell_));
    const auto iy = static_cast<std::int64_t>(std::floor(points_[i].y / cell_));
    cells_[cell_key(ix, iy)].push_back(i);
  }
}

std::vector<int> CenterGrid::query(const Point2& center, double radius) const {
  std::vector<int> out;
  const auto x0 = static_cast<std::int64_t>(std::floor((center.x - radius) / cell_));
  const auto x1 = static_cast<std::int64_t>(std::floor((center.x + radius) / cell_));
  const auto y0 = static_cast<std::int64_t>(std::floor((center.y - radius) / cell_));
  const auto y1 = static_cast<std::int64_t>(std::floor((center.y + radius) / cell_));
  for (std::int64_t iy = y0; iy <= y1; ++iy) {
    for (std::int64_t ix = x0; ix <= x1; ++ix) {
      const auto it = cells_.find(cell_key(ix, iy));
      if (it == cells_.end()) continue;
      for (int idx : it->second)
        if (distance(points_[idx], center) <= radius) out.push_back(idx);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> candidate_pool(int i, const Point2& v,
                                const std::vector<PartFeature>& parts,
                                const CenterGrid& grid, double eps) {
  const Point2 target = parts[i].corrected + v;
  std::vector<int> pool = grid.query(target, eps);
  pool.erase(std::remove(pool.begin(), pool.end(), i), pool.end());
  return pool;
}

std::optional<int> match_sibling(int i, const Point2& v,
                                 const std::vector<int>& pool,
                                 const std::vector<PartFeature>& parts) {
  (void)v;
  std::optional<int> best;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int j : pool) {
    const PartFeature& cand = parts[j];
    if (cand.v.empty()) continue;
    // Reverse check: how well does one of the candidate's own offsets point
    // back at part i?
    const Point2 back = parts[i].corrected - cand.corrected;
    double residual = std::numeric_limits<double>::infinity();
    for (const Point2& rv : cand.v)
      residual = std::min(residual, (back - rv).norm());
    const bool better =
        residual < best_residual ||
        (residual == best_residual && best &&
         (cand.score > parts[*best].score ||
          (cand.score == parts[*best].score && j < *best)));
    if (better) {
      best = j;
      best_residual = residual;
    }
  }
  return best;
}

GroupingResult aggregate_features(const std::vector<PartFeature>& parts,
                                  const AggregateConfig& cfg) {
  const int n = static_cast<int>(parts.size());
  GroupingResult result;
  if (n == 0) return result;

  double cell = 1.0;
  std::vector<Point2> centers(n);
  for (int i = 0; i < n; ++i) {
    centers[i] = parts[i].corrected;
    cell = std::max(cell, matching_epsilon(parts[i], cfg));
  }
  const CenterGrid grid(centers, cell);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return parts[a].score != parts[b].score ? parts[a].score > parts[b].score
                                            : a < b;
  });

  std::vector<char> claimed(n, 0);
  for (int seed : order) {
    if (claimed[seed]) continue;
    if (parts[seed].v.empty()) {  // single-part objects (N = 1)
      claimed[seed] = 1;
      result.groups.push_back({seed});
      continue;
    }
    const double eps = matching_epsilon(parts[seed], cfg);
    std::vector<int> members{seed};
    for (const Point2& v : parts[seed].v) {
      std::vector<int> pool = candidate_pool(seed, v, parts, grid, eps);
      pool.erase(std::remove_if(pool.begin(), pool.end(),
                                [&](int j) {
                                  return claimed[j] ||
                                         std::find(members.begin(),
                                                   members.end(),
                                                   j) != members.end();
                                }),
                 pool.end());
      const auto sibling = match_sibling(seed, v, pool, parts);
      if (sibling) members.push_back(*sibling);
    }
    if (members.size() > 1) {
      for (int m : members) claimed[m] = 1;
      result.groups.push_back(std::move(members));
    }
    // A seed that paired with nobody stays unclaimed; a later seed may still
    // absorb it, otherwise it is filtered out below.
  }

  for (int i = 0; i < n; ++i)
    if (!claimed[i]) result.discarded.push_back(i);
  return result;
}

AggregationResult aggregate(const std::vector<PartPrediction>& parts,
                            const AggregateConfig& cfg) {
  std::vector<PartFeature> feats;
  feats.reserve(parts.size());
  for (const auto& p : parts) feats.push_back(part_feature(p));
  const GroupingResult grouping = aggregate_features(feats, cfg);

  AggregationResult result;
  result.discarded = grouping.discarded;
  result.instances.reserve(grouping.groups.size());
  for (const auto& group : grouping.groups) {
    AssembledInstance inst;
    inst.part_indices = group;
    inst.merged_mask = parts[group[0]].mask;
    double score_sum = 0.0;
    for (int idx : group) {
      score_sum += parts[idx].score;
      if (idx != group[0])
        inst.merged_mask = unite(inst.merged_mask, parts[idx].mask);
    }
    inst.score = score_sum / static_cast<double>(group.size());
    const std::size_t expected = feats[group[0]].v.size() + 1;
    inst.complete = group.size() == expected;
    result.instances.push_back(std::move(inst));
  }
  return result;
}

BinaryMask refine_mask(const AssembledInstance& instance, int radius) {
  return closing(instance.merged_mask, radius);
}

std::vector<int> solve_assignment(const std::vector<float>& cost, int n) {
  // Shortest augmenting path with potentials; 1-based internals.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = inf;
      const float* row = cost.data() + static_cast<std::size_t>(i0 - 1) * n;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = static_cast<double>(row[j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> result(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) result[p[j] - 1] = j - 1;
  return result;
}

namespace {

struct BoxPatch {
  int x0 = 0, y0 = 0, w = 0, h = 0;
  std::vector<std::uint8_t> bits;
  std::int64_t area = 0;
};

BoxPatch rasterize_box(const RotatedBox& box) {
  BoxPatch patch;
  double xmin = box.x, xmax = box.x, ymin = box.y, ymax = box.y;
  for (const Point2& c : box.corners()) {
    xmin = std::min(xmin, c.x);
    xmax = std::max(xmax, c.x);
    ymin = std::min(ymin, c.y);
    ymax = std::max(ymax, c.y);
  }
  patch.x0 = static_cast<int>(std::floor(xmin));
  patch.y0 = static_cast<int>(std::floor(ymin));
  patch.w = static_cast<int>(std::ceil(xmax)) - patch.x0 + 1;
  patch.h = static_cast<int>(std::ceil(ymax)) - patch.y0 + 1;
  patch.bits.assign(static_cast<std::size_t>(patch.w) * patch.h, 0);
  for (int y = 0; y < patch.h; ++y)
    for (int x = 0; x < patch.w; ++x)
      if (box.contains(Point2(patch.x0 + x, patch.y0 + y))) {
        patch.bits[static_cast<std::size_t>(y) * patch.w + x] = 1;
        ++patch.area;
      }
  if (patch.area == 0) {  // degenerate box still covers its center pixel
    const int cx = static_cast<int>(std::lround(box.x)) - patch.x0;
    const int cy = static_cast<int>(std::lround(box.y)) - patch.y0;
    if (cx >= 0 && cx < patch.w && cy >= 0 && cy < patch.h) {
      patch.bits[static_cast<std::size_t>(cy) * patch.w + cx] = 1;
      patch.area = 1;
    }
  }
  return patch;
}

double patch_iou(const BoxPatch& a, const BoxPatch& b) {
  const int x0 = std::max(a.x0, b.x0);
  const int y0 = std::max(a.y0, b.y0);
  const int x1 = std::min(a.x0 + a.w, b.x0 + b.w) - 1;
  const int y1 = std::min(a.y0 + a.h, b.y0 + b.h) - 1;
  if (x0 > x1 || y0 > y1) return 0.0;
  std::int64_t inter = 0;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      const bool fa =
          a.bits[static_cast<std::size_t>(y - a.y0) * a.w + (x - a.x0)] != 0;
      const bool fb =
          b.bits[static_cast<std::size_t>(y - b.y0) * b.w + (x - b.x0)] != 0;
      if (fa && fb) ++inter;
    }
  if (inter == 0) return 0.0;
  return static_cast<double>(inter) /
         static_cast<double>(a.area + b.area - inter);
}

std::vector<float> pair_costs(const std::vector<PartFeature>& parts,
                              double lambda, bool literal_w) {
  const int n = static_cast<int>(parts.size());
  std::vector<BoxPatch> patches(n);
  for (int i = 0; i < n; ++i) patches[i] = rasterize_box(parts[i].box);

  std::vector<float> cost(static_cast<std::size_t>(n) * n, kForbidden);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = distance(parts[i].center, parts[j].center);
      const double overlap =
          lambda != 0.0 ? patch_iou(patches[i], patches[j]) : 0.0;
      const double w = literal_w ? -(d + lambda * overlap)
                                 : d - lambda * overlap;
      cost[static_cast<std::size_t>(i) * n + j] = static_cast<float>(w);
      cost[static_cast<std::size_t>(j) * n + i] = static_cast<float>(w);
    }
  }
  return cost;
}

// Folds permutation cycles into pairs: 2-cycles are mutual matches; longer
// cycles repeatedly peel off the cheapest adjacent pair; an odd leftover
// becomes a singleton.
std::vector<std::vector<int>> pair_up(const std::vector<int>& assign,
                                      const std::vector<float>& cost, int n) {
  std::vector<std::vector<int>> groups;
  std::vector<char> visited(n, 0);
  for (int i = 0; i < n; ++i) {
    if (visited[i]) continue;
    std::vector<int> cycle;
    int cur = i;
    while (!visited[cur]) {
      visited[cur] = 1;
      cycle.push_back(cur);
      cur = assign[cur];
      if (cur < 0) break;
    }
    while (cycle.size() >= 2) {
      std::size_t best = 0;
      float best_cost = std::numeric_limits<float>::max();
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        const int a = cycle[k];
        const int b = cycle[(k + 1) % cycle.size()];
        const float c = cost[static_cast<std::size_t>(a) * n + b];
        if (c < best_cost) {
          best_cost = c;
          best = k;
        }
      }
      const int a = cycle[best];
      const int b = cycle[(best + 1) % cycle.size()];
      groups.push_back({std::min(a, b), std::max(a, b)});
      std::vector<int> next;
      for (int idx : cycle)
        if (idx != a && idx != b) next.push_back(idx);
      cycle = std::move(next);
    }
    if (cycle.size() == 1) groups.push_back({cycle[0]});
  }
  return groups;
}

}  // namespace

GroupingResult hungarian_features(const std::vector<PartFeature>& parts,
                                  double lambda, int n_parts, bool literal_w) {
  const int n = static_cast<int>(parts.size());
  GroupingResult result;
  if (n == 0) return result;
  if (n_parts <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) result.groups.push_back({i});
    return result;
  }

  if (n_parts == 2) {
    const std::vector<float> cost = pair_costs(parts, lambda, literal_w);
    const std::vector<int> assign = solve_assignment(cost, n);
    result.groups = pair_up(assign, cost, n);
    return result;
  }

  // n_parts > 2: iterative merging of clusters below the target size.
  std::vector<std::vector<int>> clusters(n);
  std::vector<Point2> cluster_center(n);
  for (int i = 0; i < n; ++i) {
    clusters[i] = {i};
    cluster_center[i] = parts[i].center;
  }
  while (true) {
    std::vector<int> small;
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c)
      if (static_cast<int>(clusters[c].size()) < n_parts) small.push_back(c);
    const int m = static_cast<int>(small.size());
    if (m < 2) break;

    std::vector<float> cost(static_cast<std::size_t>(m) * m, kForbidden);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const int ca = small[a], cb = small[b];
        if (static_cast<int>(clusters[ca].size() + clusters[cb].size()) >
            n_parts)
          continue;
        const float d = static_cast<float>(
            distance(cluster_center[ca], cluster_center[cb]));
        cost[static_cast<std::size_t>(a) * m + b] = d;
        cost[static_cast<std::size_t>(b) * m + a] = d;
      }
    const std::vector<int> assign = solve_assignment(cost, m);
    bool merged = false;
    std::vector<char> gone(clusters.size(), 0);
    for (int a = 0; a < m; ++a) {
      const int b = assign[a];
      if (b <= a || assign[b] != a) continue;  // mutual pairs only
      if (cost[static_cast<std::size_t>(a) * m + b] >= kForbidden * 0.5f)
        continue;
      const int ca = small[a], cb = small[b];
      if (gone[ca] || gone[cb]) continue;
      const auto na = static_cast<double>(clusters[ca].size());
      const auto nb = static_cast<double>(clusters[cb].size());
      cluster_center[ca] =
          (cluster_center[ca] * na + cluster_center[cb] * nb) * (1.0 / (na + nb));
      clusters[ca].insert(clusters[ca].end(), clusters[cb].begin(),
                          clusters[cb].end());
      gone[cb] = 1;
      merged = true;
    }
    if (!merged) break;
    std::vector<std::vector<int>> next_clusters;
    std::vector<Point2> next_centers;
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
      if (gone[c]) continue;
      next_clusters.push_back(std::move(clusters[c]));
      next_centers.push_back(cluster_center[c]);
    }
    clusters = std::move(next_clusters);
    cluster_center = std::move(next_centers);
  }
  for (auto& c : clusters) {
    std::sort(c.begin(), c.end());
    result.groups.push_back(std::move(c));
  }
  return result;
}

std::vector<PartFeature> bench_features(int n, std::uint64_t seed) {
  Rng rng(seed);
  const int k = n / 2;
  const int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(
                                    static_cast<double>(k)))));
  const double spacing = 40.0;
  const double sibling = 36.0;
  std::vector<PartFeature> feats;
  feats.reserve(n);
  for (int g = 0; g < k; ++g) {
    const double cx = 40.0 + (g % cols) * spacing + rng.uniform(-8.0, 8.0);
    const double cy = 40.0 + (g / cols) * spacing + rng.uniform(-8.0, 8.0);
    const double theta = rng.uniform(0.0, 3.141592653589793);
    const Point2 dir{std::cos(theta), std::sin(theta)};
    const Point2 a = Point2{cx, cy} - dir * (sibling / 2.0);
    const Point2 b = Point2{cx, cy} + dir * (sibling / 2.0);
    for (int half = 0; half < 2; ++half) {
      const Point2& at = half == 0 ? a : b;
      const Point2& other = half == 0 ? b : a;
      PartFeature f;
      f.center = at;
      f.u = {0.0, 0.0};
      f.corrected = at;
      f.v = {other - at};
      f.score = rng.uniform(0.5, 1.0);
      f.area = 144.0;
      f.box = RotatedBox{at.x, at.y, 12.0, 12.0, 0.0};
      feats.push_back(std::move(f));
    }
  }
  // odd n: one extra singleton part
  if (n % 2 == 1 && !feats.empty()) {
    PartFeature f = feats.back();
    f.center = f.center + Point2{spacing, spacing};
    f.corrected = f.center;
    feats.push_back(std::move(f));
  }
  return feats;
}

std::vector<AssembledInstance> hungarian_baseline(
    const std::vector<PartPrediction>& parts, double lambda, int n_parts,
    bool literal_w) {
  std::vector<PartFeature> feats;
  feats.reserve(parts.size());
  for (const auto& p : parts) feats.push_back(part_feature(p));
  const GroupingResult grouping =
      hungarian_features(feats, lambda, n_parts, literal_w);

  std::vector<AssembledInstance> out;
  out.reserve(grouping.groups.size());
  for (const auto& group : grouping.groups) {
    AssembledInstance inst;
    inst.part_indices = group;
    inst.merged_mask = parts[group[0]].mask;
    double score_sum = 0.0;
    for (int idx : group) {
      score_sum += parts[idx].score;
      if (idx != group[0])
        inst.merged_mask = unite(inst.merged_mask, parts[idx].mask);
    }
    inst.score = score_sum / static_cast<double>(group.size());
    inst.complete = static_cast<int>(group.size()) == n_parts;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace partseg
