#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partseg/decouple.hpp"
#include "partseg/mask.hpp"

namespace partseg {

/// Object template in canonical pose with its fixed part decomposition.
/// Every pasted instance of the object shares this decomposition.
struct Template {
  std::string name;
  BinaryMask full_mask;
  PartSet parts;  // unoccluded: visible == full, u == (0, 0)
  double solidity = 1.0;
};

Template make_template(const std::string& name, const BinaryMask& mask,
                       const DecoupleConfig& cfg = {});

struct Pose {
  int tx = 0;  // placement of the rotated patch origin on the canvas
  int ty = 0;
  double theta = 0.0;  // rotation in radians
};

struct SceneInstance {
  Pose pose;
  BinaryMask full_mask;
  BinaryMask visible_mask;
  PartSet parts;
};

struct Scene {
  int width = 0;
  int height = 0;
  std::vector<SceneInstance> instances;  // in placement order, later on top
  std::vector<int> z_order;              // instance indices, front to back
  std::vector<int> skipped;              // draw slots with no fitting pose
};

/// Pastes k ~ Uniform[lo, hi] rotated copies of the template at uniform
/// positions that keep the full mask on canvas; visible masks come from
/// back-to-front occlusion. Deterministic given the seed; per-instance
/// substreams keep placements independent of earlier skips. An instance that
/// cannot be placed within 1000 attempts is skipped and recorded.
Scene compose_scene(const Template& tmpl, int lo, int hi, int width,
                    int height, std::uint64_t seed);

/// Simulated network output for one part.
struct PartPrediction {
  BinaryMask mask;
  double score = 0.0;
  Point2 u;
  std::vector<Point2> v;
};

/// Ideal predictor: one prediction per part whose visible fraction reaches
/// min_visible_frac, carrying the exact visible mask, ground-truth offsets,
/// and the visible fraction as score. Emitted in instance-major, part-minor
/// order.
std::vector<PartPrediction> ground_truth_predictions(
    const Scene& scene, double min_visible_frac = 0.1);

struct PerturbationConfig {
  double sigma_center = 0.0;  // px, Gaussian mask translation
  double sigma_offset = 0.0;  // px, Gaussian noise on u and v components
  double p_drop = 0.0;
  double p_spurious = 0.0;
  int mask_jitter = 0;  // dilate/erode radius drawn from {-j..j}
  double min_visible_frac = 0.1;
  std::uint64_t seed = 0;
};

/// Noise model over predictions: drops, center translation by a rounded
/// Gaussian, offset noise, morphological jitter, and spurious copies of
/// random parts at uniform positions with random offsets. Deterministic
/// given cfg.seed; each prediction owns a substream.
std::vector<PartPrediction> perturb(const std::vector<PartPrediction>& preds,
                                    const PerturbationConfig& cfg);

}  // namespace partseg
