#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "partseg/contour.hpp"
#include "partseg/geom.hpp"
#include "partseg/mask.hpp"

namespace partseg {

struct DecoupleConfig {
  double tau_ratio = 0.2;     // concavity tolerance as a fraction of d_short
  double lambda_cut = 1.0;    // endpoint score = concavity - lambda * dist
  int min_part_pixels = 16;
};

/// Per-contour-point concavity: distance to the convex-hull edge bridging the
/// pocket the point lies in. Hull vertices have concavity 0 and no bridge.
struct ConcavityProfile {
  Contour contour;
  std::vector<double> concavity;
  std::vector<std::optional<int>> bridge;  // hull edge index
  double max_concavity = 0.0;
  int argmax = 0;  // lowest index among maxima
};

ConcavityProfile concavity_profile(const Contour& contour);

/// Max concavity over the outer contour. Throws EmptyMask / MultiComponent.
double mask_concavity(const BinaryMask& mask);

/// Concavity threshold for a mask: tau_ratio times the short side of its
/// minimum-area rotated box.
double decouple_tau(const BinaryMask& mask, const DecoupleConfig& cfg);

struct CutLine {
  Point2 start;  // contour point of maximum concavity
  Point2 end;
};

/// Start point: argmax concavity (lowest contour index on ties). End point:
/// maximizes concavity(pe) - lambda_cut * dist(ps, pe) among contour points
/// that are more than 2 contour steps from ps, whose chord stays inside the
/// mask, and whose cut yields exactly two parts of at least min_part_pixels.
/// Throws NoValidCut when no candidate qualifies.
CutLine choose_cut(const BinaryMask& mask, const ConcavityProfile& profile,
                   const DecoupleConfig& cfg);

/// Splits along the rasterized cut segment. Cut pixels join the part on the
/// left of the directed start-to-end line. Throws SplitFailed unless removal
/// of the segment leaves exactly two components.
std::pair<BinaryMask, BinaryMask> split_once(const BinaryMask& mask,
                                             const CutLine& cut);

struct DecoupledPart {
  BinaryMask mask;
  bool no_valid_cut = false;  // left unsplit because no cut qualified
};

/// Recursively splits until every part's concavity is below
/// tau_ratio * d_short of that part. Parts are ordered by their first
/// row-major pixel. Depth is capped at 16 (DepthExceeded beyond).
std::vector<DecoupledPart> decouple(const BinaryMask& mask,
                                    const DecoupleConfig& cfg);

/// One decomposed part with its occlusion-aware ground truth. center_full is
/// the centroid of the full part mask (phi); center_visible the centroid of
/// the visible part mask (phi-hat); u = center_full - center_visible; v holds
/// the offsets from this part's full center to every sibling's full center in
/// part-index order.
struct PartLabel {
  BinaryMask visible_mask;
  BinaryMask full_mask;
  Point2 center_full;
  std::optional<Point2> center_visible;
  std::optional<Point2> u;
  std::vector<Point2> v;
  bool occluded = false;
};

struct PartSet {
  std::vector<PartLabel> parts;
  int n_parts = 0;
};

/// Labels a given partition of an instance against its visible mask.
/// Fully occluded parts are kept with no centers and the occluded flag set.
PartSet label_parts(const std::vector<BinaryMask>& full_parts,
                    const BinaryMask& visible_instance);

/// Decouples the full instance and labels the resulting parts.
/// Throws VisibilityViolation when visible is not a subset of full.
PartSet make_part_labels(const BinaryMask& full_instance,
                         const BinaryMask& visible_instance,
                         const DecoupleConfig& cfg);

}  // namespace partseg
