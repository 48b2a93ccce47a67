"""End-to-end smoke tests for the python bindings."""

import numpy as np
import pytest

import partseg


def l_mask(scale=1):
    side = 31 * scale
    t = 11 * scale
    m = np.zeros((side + 4, side + 4), dtype=bool)
    m[2 : 2 + t, 2 : 2 + side] = True
    m[2 : 2 + side, 2 : 2 + t] = True
    return m


def test_solidity_and_concavity():
    m = l_mask()
    assert 0.0 < partseg.solidity(m) < 0.5
    assert partseg.mask_concavity(m) > 10.0

    square = np.zeros((40, 40), dtype=bool)
    square[4:36, 4:36] = True
    assert partseg.mask_concavity(square) == pytest.approx(0.0)


def test_decouple_partitions_the_mask():
    m = l_mask()
    parts = partseg.decouple(m, tau_ratio=0.2)
    assert len(parts) == 2
    union = np.zeros_like(m)
    for part in parts:
        assert not (union & part).any()
        union |= part
    assert (union == m).all()


def test_rle_round_trip():
    rng = np.random.default_rng(7)
    m = rng.random((13, 17)) < 0.4
    counts = partseg.rle_encode(m)
    back = partseg.rle_decode(17, 13, counts)
    assert (back == m).all()


def test_geometry_helpers():
    pts = np.array([[0, 0], [4, 0], [4, 2], [0, 2], [2, 1]], dtype=float)
    hull = partseg.convex_hull(pts)
    assert hull.shape == (4, 2)
    x, y, h, w, a = partseg.min_area_rotated_box(pts)
    assert (h, w) == pytest.approx((2.0, 4.0))
    assert a == pytest.approx(0.0)
    assert (x, y) == pytest.approx((2.0, 1.0))


def test_pipeline_oracle_round_trip():
    tmpl = partseg.make_template("l-connector", l_mask())
    assert tmpl.n_parts == 2
    assert tmpl.solidity < 0.5

    scene = partseg.compose_scene(tmpl, 3, 6, 300, 300, seed=11)
    assert 3 <= scene.n_instances + len(scene.skipped) <= 6

    preds = partseg.ground_truth_predictions(scene, min_visible_frac=1e-9)
    result = partseg.aggregate(preds, epsilon_ratio=0.5, refine_radius=2)
    assert result["discarded"] == []

    gts = [m for m in scene.visible_masks() if m.any()]
    metrics = partseg.evaluate(result["masks"], result["scores"], gts)
    assert metrics["ap50"] == pytest.approx(1.0)
    assert metrics["miou"] >= 0.99


def test_hungarian_baseline_runs():
    tmpl = partseg.make_template("l-connector", l_mask())
    scene = partseg.compose_scene(tmpl, 2, 2, 260, 260, seed=5)
    preds = partseg.ground_truth_predictions(scene, min_visible_frac=1e-9)
    result = partseg.hungarian_baseline(preds, lambda_=1.0, n_parts=2)
    total = sum(len(g) for g in result["groups"])
    assert total == len(preds)


def test_smooth_l1_branches():
    assert partseg.smooth_l1([0.5, 0.0], [0.0, 0.0]) == pytest.approx(0.125)
    assert partseg.smooth_l1([2.0, 0.0], [0.0, 0.0]) == pytest.approx(1.5)
    assert partseg.smooth_l1([1.0], [0.0]) == pytest.approx(0.5)


def test_scene_json_round_trip():
    tmpl = partseg.make_template("l-connector", l_mask())
    scene = partseg.compose_scene(tmpl, 2, 3, 200, 200, seed=3)
    text = scene.to_json()
    again = partseg.Scene.from_json(text)
    assert again.to_json() == text


def test_errors_surface_as_value_errors():
    with pytest.raises(ValueError, match="EmptyMask"):
        partseg.mask_concavity(np.zeros((5, 5), dtype=bool))
