"""Part-aware instance segmentation pipeline for low-solidity objects."""

from ._partseg import (
    Prediction,
    Scene,
    Template,
    aggregate,
    compose_scene,
    convex_hull,
    decouple,
    evaluate,
    ground_truth_predictions,
    hungarian_baseline,
    iou,
    make_template,
    mask_concavity,
    min_area_rotated_box,
    perturb,
    rle_decode,
    rle_encode,
    smooth_l1,
    solidity,
    trace_contour,
)
from ._partseg import __version__

__all__ = [
    "Prediction",
    "Scene",
    "Template",
    "aggregate",
    "compose_scene",
    "convex_hull",
    "decouple",
    "evaluate",
    "ground_truth_predictions",
    "hungarian_baseline",
    "iou",
    "make_template",
    "mask_concavity",
    "min_area_rotated_box",
    "perturb",
    "rle_decode",
    "rle_encode",
    "smooth_l1",
    "solidity",
    "trace_contour",
    "__version__",
]
