#pragma once

#include <vector>

#include "partseg/geom.hpp"
#include "partseg/mask.hpp"

namespace partseg {

struct ScoredMask {
  BinaryMask mask;
  double score = 0.0;
};

struct TpRecord {
  int pred = -1;
  int gt = -1;
  double iou = 0.0;
};

struct MatchResult {
  std::vector<TpRecord> tp;
  std::vector<int> fp;  // prediction indices
  std::vector<int> fn;  // ground-truth indices
};

/// Greedy matching in descending score order: each prediction claims the
/// unclaimed ground truth of highest IoU when that IoU exceeds iou_thresh
/// (ties to the lower gt index). Throws DimensionMismatch.
MatchResult match_instances(const std::vector<ScoredMask>& preds,
                            const std::vector<BinaryMask>& gts,
                            double iou_thresh);

/// One scored detection flagged tp/fp; scene and pred break score ties
/// deterministically when merging scenes.
struct Detection {
  double score = 0.0;
  bool tp = false;
  int scene = 0;
  int pred = 0;
};

/// 101-point interpolated area under the precision-recall curve
/// (COCO convention). Throws NoGroundTruth when total_gt == 0.
double average_precision(std::vector<Detection> detections, int total_gt);

/// Mean IoU over true positives; 0 when there are none.
double mean_iou(const MatchResult& matches);
double mean_iou(const std::vector<MatchResult>& matches);

/// Per-component smooth-L1: 0.5 d^2 for |d| < 1, |d| - 0.5 otherwise,
/// summed over components. Throws DimensionMismatch.
double smooth_l1(const std::vector<double>& o, const std::vector<double>& o_hat);
double smooth_l1(const Point2& o, const Point2& o_hat);

struct EvalScene {
  std::vector<ScoredMask> preds;
  std::vector<BinaryMask> gts;
};

struct Metrics {
  double ap50 = 0.0;
  double ap75 = 0.0;
  double miou = 0.0;  // over true positives at IoU 0.5
  int n_tp = 0;
  int n_fp = 0;
  int n_fn = 0;
};

/// Dataset-level AP50/AP75 plus mIoU; tp/fp/fn counts are taken at
/// count_iou. Throws NoGroundTruth when no scene has ground truth.
Metrics evaluate_dataset(const std::vector<EvalScene>& scenes,
                         double count_iou = 0.5);

}  // namespace partseg
