#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "partseg/geom.hpp"
#include "partseg/mask.hpp"
#include "partseg/scenegen.hpp"

namespace partseg {

struct AggregateConfig {
  /// Matching tolerance as a fraction of the seed part's box short side
  /// (floored at one pixel for degenerate boxes).
  double epsilon_ratio = 0.5;
  int refine_radius = 2;
};

/// Everything the matching core needs to know about one part; masks stay
/// behind this boundary so large benchmarks never materialize them.
struct PartFeature {
  Point2 center;     // raw mask centroid
  Point2 corrected;  // center + u
  Point2 u;
  std::vector<Point2> v;
  double score = 0.0;
  double area = 0.0;
  RotatedBox box;  // minimum-area rotated box of the mask
};

PartFeature part_feature(const PartPrediction& pred);

/// Corrected center: mask centroid shifted by the predicted u.
Point2 corrected_center(const PartPrediction& pred);

double matching_epsilon(const PartFeature& feat, const AggregateConfig& cfg);

/// Uniform spatial hash over points; query returns sorted indices of all
/// points within the given radius (exact check after the cell scan).
class CenterGrid {
 public:
  CenterGrid(std::vector<Point2> points, double cell);
  std::vector<int> query(const Point2& center, double radius) const;

 private:
  double cell_ = 1.0;
  std::vector<Point2> points_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

/// All parts j != i whose corrected center lies within eps of
/// corrected(i) + v. Sorted by index.
std::vector<int> candidate_pool(int i, const Point2& v,
                                const std::vector<PartFeature>& parts,
                                const CenterGrid& grid, double eps);

/// Picks from the pool the candidate whose own reverse offsets best explain
/// the displacement back to part i; ties go to the higher score, then the
/// lower index. Empty pool (or candidates without offsets) yields nullopt.
std::optional<int> match_sibling(int i, const Point2& v,
                                 const std::vector<int>& pool,
                                 const std::vector<PartFeature>& parts);

struct GroupingResult {
  std::vector<std::vector<int>> groups;  // part indices; seed first
  std::vector<int> discarded;            // ascending
};

/// Bidirectional aggregation over part features: seeds in descending score
/// order resolve their offsets against unclaimed parts; a seed that pairs
/// with nobody stays claimable by later seeds and is discarded only if no
/// one ever absorbs it. Parts without offsets form singleton instances.
GroupingResult aggregate_features(const std::vector<PartFeature>& parts,
                                  const AggregateConfig& cfg);

struct AssembledInstance {
  std::vector<int> part_indices;
  BinaryMask merged_mask;
  bool complete = false;  // all N template parts present
  double score = 0.0;     // mean member score
};

struct AggregationResult {
  std::vector<AssembledInstance> instances;
  std::vector<int> discarded;
};

AggregationResult aggregate(const std::vector<PartPrediction>& parts,
                            const AggregateConfig& cfg);

/// Morphological closing of the merged mask; radius 0 is the identity.
BinaryMask refine_mask(const AssembledInstance& instance, int radius);

/// Distance-based Hungarian baseline. Pair cost is
/// dist(center_i, center_j) - lambda * IoU(box_i, box_j) over rasterized
/// minimum-area boxes, solved as a minimum-cost assignment (O(n^3)); the
/// resulting permutation cycles are folded into pairs. literal_w flips the
/// objective to the highest dist + lambda * IoU. n_parts > 2 merges clusters
/// iteratively (approximation).
GroupingResult hungarian_features(const std::vector<PartFeature>& parts,
                                  double lambda, int n_parts,
                                  bool literal_w = false);

std::vector<AssembledInstance> hungarian_baseline(
    const std::vector<PartPrediction>& parts, double lambda, int n_parts,
    bool literal_w = false);

/// Minimum-cost assignment over an n x n row-major matrix (potentials
/// method). Returns the column assigned to each row.
std::vector<int> solve_assignment(const std::vector<float>& cost, int n);

/// Synthetic benchmark input: n parts from n/2 two-part instances packed on
/// a jittered grid whose neighbor spacing rivals the sibling spacing, the
/// regime where distance-only matching gets ambiguous. Deterministic.
std::vector<PartFeature> bench_features(int n, std::uint64_t seed);

}  // namespace partseg
