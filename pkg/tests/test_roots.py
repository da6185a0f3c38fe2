# path: tests/test_roots.py
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunkl.errors import InvalidArgumentError, NotAFiniteGroupError, ResolutionError
from dunkl.roots import (
    OrbitRegion,
    WeightContext,
    ball_measure,
    catalog_root_system,
    generate_group,
    orbit,
    orbit_distance,
    orbit_spread,
    reflect,
    region_mask,
    region_membership,
    separation_check,
    validate_root_system,
)

coords = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)
plane_points = st.tuples(coords, coords).map(np.array)


@pytest.mark.parametrize(
    "preset,k,order",
    [("rank1", 1.0, 2), ("z2_product", [1.0, 0.5], 4), ("b2", [1.0, 0.5], 8), ("a2", 1.0, 6)],
)
def test_catalog_groups(preset, k, order):
    spec = catalog_root_system(preset, k)
    assert validate_root_system(spec).ok
    assert generate_group(spec).order == order


def test_a2_roots_are_unit_vectors():
    spec = catalog_root_system("a2", 0.5)
    assert spec.roots.shape == (6, 2)
    np.testing.assert_allclose(np.linalg.norm(spec.roots, axis=1), 1.0)


def test_validation_reports_each_kind():
    missing_negative = catalog_root_system("custom", 1.0, roots=[[1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    assert "closure" in validate_root_system(missing_negative).kinds()

    zero = catalog_root_system("custom", 1.0, roots=[[0.0], [1.0], [-1.0]])
    assert "zero_root" in validate_root_system(zero).kinds()

    # sigma_(1,0) maps (1,-1), k = 2, to (-1,-1), k = 0.5
    rs = catalog_root_system("b2", [1.0, 0.5]).roots
    bad = catalog_root_system("custom", [1, 1, 1, 1, 0.5, 2.0, 0.5, 0.5], roots=rs)
    assert "multiplicity_invariance" in validate_root_system(bad).kinds()


def test_unknown_preset():
    with pytest.raises(InvalidArgumentError):
        catalog_root_system("g2", 1.0)


def test_irrational_angle_is_not_finite():
    theta = 1.0
    roots = [[1.0, 0.0], [-1.0, 0.0], [np.cos(theta), np.sin(theta)], [-np.cos(theta), -np.sin(theta)]]
    with pytest.raises(NotAFiniteGroupError):
        generate_group(catalog_root_system("custom", 0.0, roots=roots), max_order=64)


def test_orbit_sizes():
    b2 = generate_group(catalog_root_system("b2", 1.0))
    assert orbit(b2, [1.0, 2.0]).shape == (8, 2)
    assert orbit(b2, [1.0, 1.0]).shape == (4, 2)
    assert orbit(b2, [0.0, 0.0]).shape == (1, 2)


@given(plane_points, st.sampled_from(["b2", "a2"]))
@settings(max_examples=50, deadline=None)
def test_reflections_are_involutions(x, preset):
    for alpha in catalog_root_system(preset, 1.0).roots:
        np.testing.assert_allclose(reflect(alpha, reflect(alpha, x)), x, atol=1e-12)


@given(plane_points, plane_points)
@settings(max_examples=50, deadline=None)
def test_orbit_distance_symmetric_and_below_euclidean(x, y):
    g = generate_group(catalog_root_system("b2", 1.0))
    dxy = float(orbit_distance(g, x, y))
    assert dxy == pytest.approx(float(orbit_distance(g, y, x)), abs=1e-9)
    assert dxy <= np.linalg.norm(x - y) + 1e-12
    assert float(orbit_spread(g, x, y)) >= np.linalg.norm(x - y) - 1e-12


@given(plane_points)
@settings(max_examples=30, deadline=None)
def test_weight_is_group_invariant(x):
    ctx = WeightContext.from_preset("b2", [1.0, 0.5])
    for g in ctx.group.elements:
        assert ctx.weight(g @ x) == pytest.approx(ctx.weight(x), rel=1e-10, abs=1e-12)


def test_ball_measure_values():
    assert ball_measure(WeightContext.from_preset("rank1", 0.0), [0.0], 1.5) == pytest.approx(3.0, rel=1e-12)
    # int_{-r}^{r} x^2 dx = 2 r^3 / 3
    assert ball_measure(WeightContext.from_preset("rank1", 1.0), [0.0], 1.0) == pytest.approx(2.0 / 3.0, rel=1e-4)


@pytest.mark.parametrize("lam", [0.5, 2.0, 3.0])
def test_ball_measure_scales_with_homogeneous_dimension(lam):
    ctx = WeightContext.from_preset("b2", [1.0, 0.5])
    base = ball_measure(ctx, [0.0, 0.0], 1.0, resolution=64)
    scaled = ball_measure(ctx, [0.0, 0.0], lam, resolution=64)
    assert scaled == pytest.approx(lam**ctx.homogeneous_dimension * base, rel=1e-10)


def test_ball_measure_rejects_bad_input():
    ctx = WeightContext.from_preset("rank1", 1.0)
    with pytest.raises(InvalidArgumentError):
        ball_measure(ctx, [0.0], 0.0)
    with pytest.raises(ResolutionError):
        ball_measure(ctx, [0.0], 1.0, resolution=4)


def test_orbit_regions():
    g = generate_group(catalog_root_system("rank1", 1.0))
    union = OrbitRegion([2.0], 0.5, "orbit_union", g)
    assert region_membership(union, [-2.5])
    assert region_membership(union, [2.9])
    assert not region_membership(union, [0.0])
    inter = OrbitRegion([0.5], 1.0, "orbit_intersection", g)
    mask = region_mask(inter, np.array([[0.0], [0.5], [0.6]]))
    assert mask.tolist() == [True, True, False]


@pytest.mark.parametrize("preset,k", [("rank1", 1.0), ("b2", [1.0, 1.0]), ("a2", 1.0)])
def test_separation_holds(preset, k):
    ctx = WeightContext.from_preset(preset, k)
    x = np.full(ctx.dimension, 1.3)
    report = separation_check(ctx.group, x, 0.7, samples=200, seed=3)
    assert report.passed
    assert report.values["violations"] == 0


def test_separation_takes_every_pair():
    ctx = WeightContext.from_preset("rank1", 1.0)
    report = separation_check(ctx.group, [1.0], 0.3, samples=40, seed=5)
    assert report.values["pairs"] == 40 * 40
    worst = report.values["min_orbit_distance"] - 2.0 * report.values["max_offset"]
    assert report.get("min_slack").value == pytest.approx(worst)
    assert report.passed
