#include "partseg/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace partseg {

namespace {

struct MaskInfo {
  std::optional<PixelRect> box;
  std::int64_t area = 0;
};

MaskInfo mask_info(const BinaryMask& m) { return {m.bbox(), m.area()}; }

double fast_iou(const BinaryMask& a, const MaskInfo& ia, const BinaryMask& b,
                const MaskInfo& ib) {
  if (!ia.box || !ib.box) return 0.0;
  const int x0 = std::max(ia.box->x0, ib.box->x0);
  const int x1 = std::min(ia.box->x1, ib.box->x1);
  const int y0 = std::max(ia.box->y0, ib.box->y0);
  const int y1 = std::min(ia.box->y1, ib.box->y1);
  if (x0 > x1 || y0 > y1) return 0.0;
  std::int64_t inter = 0;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (a.at(x, y) && b.at(x, y)) ++inter;
  if (inter == 0) return 0.0;
  return static_cast<double>(inter) /
         static_cast<double>(ia.area + ib.area - inter);
}

}  // namespace

MatchResult match_instances(const std::vector<ScoredMask>& preds,
                            const std::vector<BinaryMask>& gts,
                            double iou_thresh) {
  for (const auto& p : preds)
    if (!gts.empty() && !p.mask.same_size(gts[0]))
      raise(ErrorCode::DimensionMismatch, "match_instances: size mismatch");
  for (const auto& g : gts)
    if (!preds.empty() && !g.same_size(preds[0].mask))
      raise(ErrorCode::DimensionMismatch, "match_instances: size mismatch");

  const int np = static_cast<int>(preds.size());
  const int ng = static_cast<int>(gts.size());
  std::vector<MaskInfo> pinfo(np), ginfo(ng);
  for (int i = 0; i < np; ++i) pinfo[i] = mask_info(preds[i].mask);
  for (int g = 0; g < ng; ++g) ginfo[g] = mask_info(gts[g]);

  std::vector<int> order(np);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return preds[a].score != preds[b].score ? preds[a].score > preds[b].score
                                            : a < b;
  });

  MatchResult result;
  std::vector<char> claimed(ng, 0);
  for (int i : order) {
    int best_gt = -1;
    double best_iou = 0.0;
    for (int g = 0; g < ng; ++g) {
      if (claimed[g]) continue;
      const double v = fast_iou(preds[i].mask, pinfo[i], gts[g], ginfo[g]);
      if (v > best_iou) {
        best_iou = v;
        best_gt = g;
      }
    }
    if (best_gt >= 0 && best_iou > iou_thresh) {
      claimed[best_gt] = 1;
      result.tp.push_back({i, best_gt, best_iou});
    } else {
      result.fp.push_back(i);
    }
  }
  for (int g = 0; g < ng; ++g)
    if (!claimed[g]) result.fn.push_back(g);
  return result;
}

double average_precision(std::vector<Detection> detections, int total_gt) {
  if (total_gt == 0)
    raise(ErrorCode::NoGroundTruth, "average_precision: no ground truth");
  std::sort(detections.begin(), detections.end(),
            [](const Detection& a, const Detection& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.scene != b.scene) return a.scene < b.scene;
              return a.pred < b.pred;
            });

  std::vector<double> precision, recall;
  int tp = 0, fp = 0;
  for (const Detection& d : detections) {
    d.tp ? ++tp : ++fp;
    precision.push_back(static_cast<double>(tp) / (tp + fp));
    recall.push_back(static_cast<double>(tp) / total_gt);
  }

  // Interpolated precision: max precision at recall >= r, swept from the
  // high-recall end.
  const int n = static_cast<int>(precision.size());
  std::vector<double> pmax(n);
  double running = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    running = std::max(running, precision[i]);
    pmax[i] = running;
  }

  double sum = 0.0;
  int cursor = 0;
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    while (cursor < n && recall[cursor] < r) ++cursor;
    if (cursor < n) sum += pmax[cursor];
  }
  return sum / 101.0;
}

double mean_iou(const MatchResult& matches) {
  if (matches.tp.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : matches.tp) sum += t.iou;
  return sum / static_cast<double>(matches.tp.size());
}

double mean_iou(const std::vector<MatchResult>& matches) {
  double sum = 0.0;
  std::int64_t n = 0;
  for (const auto& m : matches)
    for (const auto& t : m.tp) {
      sum += t.iou;
      ++n;
    }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

double smooth_l1(const std::vector<double>& o,
                 const std::vector<double>& o_hat) {
  if (o.size() != o_hat.size())
    raise(ErrorCode::DimensionMismatch, "smooth_l1: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i) {
    const double d = std::abs(o[i] - o_hat[i]);
    sum += d < 1.0 ? 0.5 * d * d : d - 0.5;
  }
  return sum;
}

double smooth_l1(const Point2& o, const Point2& o_hat) {
  return smooth_l1(std::vector<double>{o.x, o.y},
                   std::vector<double>{o_hat.x, o_hat.y});
}

Metrics evaluate_dataset(const std::vector<EvalScene>& scenes,
                         double count_iou) {
  Metrics metrics;
  int total_gt = 0;
  for (const auto& s : scenes) total_gt += static_cast<int>(s.gts.size());

  std::vector<MatchResult> at50;
  for (const double thresh : {0.5, 0.75}) {
    std::vector<Detection> dets;
    std::vector<MatchResult> results;
    for (int si = 0; si < static_cast<int>(scenes.size()); ++si) {
      MatchResult m = match_instances(scenes[si].preds, scenes[si].gts, thresh);
      std::vector<char> is_tp(scenes[si].preds.size(), 0);
      for (const auto& t : m.tp) is_tp[t.pred] = 1;
      for (int p = 0; p < static_cast<int>(scenes[si].preds.size()); ++p)
        dets.push_back({scenes[si].preds[p].score, is_tp[p] != 0, si, p});
      results.push_back(std::move(m));
    }
    const double ap = average_precision(dets, total_gt);
    if (thresh == 0.5) {
      metrics.ap50 = ap;
      at50 = std::move(results);
    } else {
      metrics.ap75 = ap;
    }
  }
  metrics.miou = mean_iou(at50);

  for (int si = 0; si < static_cast<int>(scenes.size()); ++si) {
    const MatchResult m =
        count_iou == 0.5 && !at50.empty()
            ? at50[si]
            : match_instances(scenes[si].preds, scenes[si].gts, count_iou);
    metrics.n_tp += static_cast<int>(m.tp.size());
    metrics.n_fp += static_cast<int>(m.fp.size());
    metrics.n_fn += static_cast<int>(m.fn.size());
  }
  return metrics;
}

}  // namespace partseg
