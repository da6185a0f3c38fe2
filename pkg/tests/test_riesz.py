# path: tests/test_riesz.py
import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import dawsn

from conftest import gaussian, make_context
from dunkl import riesz
from dunkl.errors import InadmissibleTestFunctionError, InvalidArgumentError
from dunkl.grid import GridSpec, lp_norm, measure_weights, sample, zeros
from dunkl.riesz import (
    RieszConfig,
    heat_symbol,
    hormander_probe,
    kernel_samples,
    kernel_values,
    lemma41_check,
    lp_operator_norm_estimate,
    riesz_heat,
    riesz_kernel,
    riesz_multiplier,
    riesz_property_suite,
    riesz_symbol,
    riesz_truncated,
    route_comparison,
    sample_pairs,
    weak_pairing,
)
from dunkl.utils import RIESZ_EPS


def rel_l2(a, b, ctx):
    return lp_norm(a - b, ctx, 2) / lp_norm(b, ctx, 2)


# ----- constants and symbols -----
@pytest.mark.parametrize("preset,k,dim", [("rank1", 0.0, 1), ("rank1", 1.0, 1), ("z2_product", [1.0, 0.5], 2)])
def test_c_j_constant(preset, k, dim):
    ctx, _ = make_context(preset, k, **({"dimension": dim} if dim > 1 else {}))
    cfg = RieszConfig.for_context(ctx, 1)
    g, n = ctx.gamma_k, ctx.dimension
    expected = mpmath.power(2, g + n / 2.0) * mpmath.gamma(g + (n + 1) / 2.0) / mpmath.sqrt(mpmath.pi)
    assert cfg.c_j == pytest.approx(float(expected), rel=1e-12)
    assert cfg.exponent == 2 * g + n + 1


def test_classical_c_j():
    ctx, _ = make_context("rank1", 0.0)
    assert RieszConfig.for_context(ctx, 1).c_j == pytest.approx(np.sqrt(2 / np.pi))


def test_config_validation():
    ctx, _ = make_context("rank1", 1.0)
    for j, eps, M in [(0, 0.1, 1.0), (2, 0.1, 1.0), (1, 0.0, 1.0), (1, 2.0, 1.0)]:
        with pytest.raises(InvalidArgumentError):
            RieszConfig.for_context(ctx, j, eps, M)
    assert RieszConfig.for_context(ctx, 1, grid=GridSpec(1, 8.0, 64)).M == pytest.approx(16.0)
    assert RieszConfig.for_context(ctx, 1, grid=GridSpec(2, 8.0, 64)).M == pytest.approx(16.0 * np.sqrt(2.0))


def test_symbols():
    np.testing.assert_allclose(riesz_symbol(GridSpec(1, 2.0, 4), 1), [1j, 1j, -1j, -1j])
    assert np.all(np.abs(riesz_symbol(GridSpec(2, 2.0, 8), 2)) <= 1.0)
    with pytest.raises(InvalidArgumentError):
        heat_symbol(GridSpec(1, 2.0, 4), 1, 1.0, 0.5)


# ----- multiplier route -----
def test_classical_hilbert_transform(classical, line_grid):
    ctx, ev = classical
    f = sample(line_grid, lambda x: np.exp(-x[..., 0] ** 2))
    out = riesz_multiplier(f, 1, ctx, ev).samples.real
    x = line_grid.axis
    near = np.abs(x) <= 3.0
    np.testing.assert_allclose(out[near], 2 / np.sqrt(np.pi) * dawsn(x[near]), atol=2e-3)


def test_riesz_identities_rank1(rank1, line_grid):
    ctx, ev = rank1
    f = sample(line_grid, gaussian())
    g = sample(line_grid, gaussian(0.8, 0.5))
    report = riesz_property_suite(f, g, 1, ctx, ev)
    assert report.passed, [a.to_dict() for a in report.assertions]
    assert report.get("parity_residual").passed


def test_riesz_identities_product(z2, plane_grid):
    ctx, ev = z2
    f = sample(plane_grid, gaussian())
    g = sample(plane_grid, gaussian(0.8, np.array([0.5, -0.3])))
    for j in (1, 2):
        assert riesz_property_suite(f, g, j, ctx, ev).passed


def test_l2_operator_norm(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    family = {"gaussian": sample(line_grid, gaussian()), "zero": zeros(line_grid)}
    report = lp_operator_norm_estimate(1, 2, family, ctx, ev)
    assert report.passed
    assert report.values["max_ratio"] == pytest.approx(1.0, abs=1e-6)
    assert any("zero" in n for n in report.notes)
    assert np.isfinite(lp_operator_norm_estimate(1, 4, family, ctx, ev).values["max_ratio"])
    with pytest.raises(InvalidArgumentError):
        lp_operator_norm_estimate(1, 1, family, ctx, ev)


# ----- truncated and heat routes -----
def test_truncated_route_approaches_the_multiplier(rank1_k1):
    ctx, ev = rank1_k1
    grid = GridSpec(1, 20.0, 1024)
    f = sample(grid, gaussian())
    trunc = riesz_truncated(f, 1, ctx, ev, eps=1e-2, M=19.0)
    assert rel_l2(trunc, riesz_multiplier(f, 1, ctx, ev), ctx) < 5e-2


def test_truncation_refinement_converges(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    f = sample(line_grid, gaussian())
    t = [riesz_truncated(f, 1, ctx, ev, eps=e) for e in (0.4, 0.2, 0.1)]
    d1 = lp_norm(t[0] - t[1], ctx, 2)
    d2 = lp_norm(t[1] - t[2], ctx, 2)
    assert d1 > d2 > 0


def test_heat_route(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    f = sample(line_grid, gaussian())
    ref = riesz_multiplier(f, 1, ctx, ev)
    errors = [rel_l2(riesz_heat(f, 1, ctx, ev, eps_t=e), ref, ctx) for e in (1e-2, 1e-3, 1e-4)]
    assert errors[-1] < 5e-2
    assert errors[0] > errors[1] > errors[2]
    # erf cutoffs alone cost about sqrt(eps_t) |xi| near 0 and erfc(|xi| sqrt(M_t)) near 0
    assert rel_l2(riesz_heat(f, 1, ctx, ev, eps_t=1e-7, M_t=1e6), ref, ctx) < 1e-3


def test_route_comparison_rows(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    rows = route_comparison(sample(line_grid, gaussian()), 1, [0.2, 0.1], ctx, ev)
    assert [r["eps"] for r in rows] == [0.2, 0.1]
    assert set(rows[0]) == {
        "eps",
        "M",
        "l2_rel_dist_multiplier_truncated",
        "l2_rel_dist_multiplier_heat",
        "l2_rel_dist_truncated_heat",
    }
    assert rows[1]["l2_rel_dist_multiplier_heat"] < rows[0]["l2_rel_dist_multiplier_heat"]


ROUTE_FAMILY = {
    "gaussian": gaussian(),
    "narrow": gaussian(0.5, 1.5),
    "wide": gaussian(2.0, -1.0),
    "offset": gaussian(0.7, 3.0),
    "odd": lambda x: x[..., 0] * gaussian()(x),
    "modulated": lambda x: np.cos(2.0 * x[..., 0]) * gaussian()(x),
}
ROUTE_KEYS = ("l2_rel_dist_multiplier_truncated", "l2_rel_dist_multiplier_heat", "l2_rel_dist_truncated_heat")


@pytest.mark.parametrize("k", [0.5, 1.0])
def test_route_triangle_at_default_truncations(k):
    ctx, ev = make_context("rank1", k)
    grid = GridSpec.default(1)
    for name, func in ROUTE_FAMILY.items():
        rows = route_comparison(sample(grid, func), 1, [RIESZ_EPS, RIESZ_EPS / 2, RIESZ_EPS / 4], ctx, ev)
        for key in ROUTE_KEYS:
            assert rows[0][key] < 5e-2, (name, key, rows[0])
        for key in ROUTE_KEYS[:2]:
            d = [r[key] for r in rows]
            assert d[0] > d[1] > d[2], (name, key, d)


# ----- kernel -----
@pytest.mark.parametrize("x,y", [(0.3, -1.1), (2.0, 1.5), (-4.0, 3.0)])
def test_classical_kernel_is_the_hilbert_kernel(classical, x, y):
    ctx, ev = classical
    assert riesz_kernel([x], [y], 1, ctx, ev) == pytest.approx(1.0 / (np.pi * (x - y)), rel=1e-10)


@given(st.floats(min_value=-5.0, max_value=5.0), st.floats(min_value=-5.0, max_value=5.0))
@settings(max_examples=30, deadline=None)
def test_kernel_is_antisymmetric(x, y):
    assume(abs(x - y) > 0.05)
    ctx, ev = make_context("rank1", 1.0)
    kxy = riesz_kernel([x], [y], 1, ctx, ev)
    assert riesz_kernel([y], [x], 1, ctx, ev) == pytest.approx(-kxy, rel=1e-12, abs=1e-15)


def test_product_kernel_is_antisymmetric(z2):
    ctx, ev = z2
    x, y = [0.4, -1.2], [1.5, 0.7]
    for j in (1, 2):
        assert riesz_kernel(y, x, j, ctx, ev) == pytest.approx(-riesz_kernel(x, y, j, ctx, ev), rel=1e-12)


def test_kernel_samples_record_the_route(rank1_k1):
    ctx, ev = rank1_k1
    out = kernel_samples([([0.5], [1.5]), ([-1.0], [2.0])], 1, ctx, ev)
    assert [s.route for s in out] == ["roesler", "roesler"]
    assert out[0].value == riesz_kernel([0.5], [1.5], 1, ctx, ev)


def test_kernel_integral_reproduces_the_truncated_route(rank1_k1):
    ctx, ev = rank1_k1
    grid = GridSpec(1, 12.0, 2048)
    f = sample(grid, gaussian(0.7, 2.0))
    cfg = RieszConfig.for_context(ctx, 1, grid=grid)
    trunc = riesz_truncated(f, 1, ctx, ev).samples.real
    fw = (f.samples * measure_weights(grid, ctx)).real
    idx = np.nonzero(np.abs(grid.axis - 2.0) <= 0.5)[0]
    direct = np.array([np.sum(kernel_values([grid.axis[i]], grid.points(), cfg, grid, ctx, ev) * fw) for i in idx])
    np.testing.assert_allclose(direct, trunc[idx], atol=2e-2 * np.max(np.abs(trunc)))


def test_hormander_probe(rank1_k1):
    ctx, ev = rank1_k1
    grid = GridSpec(1, 8.0, 256)
    pairs = [(np.array([0.3]), np.array([0.9])), (np.array([-1.0]), np.array([-0.6])), (np.array([0.5]), np.array([0.5]))]
    report = hormander_probe(1, pairs, grid, ctx, ev)
    assert report.passed, [a.to_dict() for a in report.assertions]
    assert report.values["per_pair"][-1] == 0.0
    assert 0 < report.values["sup"] < np.inf


@pytest.mark.parametrize("k", [0.0, 0.5, 1.0, 2.0])
def test_hormander_sup_is_grid_stable(k, line_grid):
    ctx, ev = make_context("rank1", k)
    report = hormander_probe(1, sample_pairs(line_grid, 50, seed=1), line_grid, ctx, ev)
    assert report.passed, report.values.get("grid_doubling_change")
    assert len(report.values["per_pair"]) == 50
    assert 0 < report.values["sup"] < np.inf


# ----- test class and weak pairing -----
def test_certificate(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    good = riesz.test_class_certificate(sample(line_grid, gaussian()), ctx, ev)
    assert good.certified
    assert good.orders == list(range(9))

    box = sample(line_grid, lambda x: (np.abs(x[..., 0]) <= 1.0).astype(float))
    bad = riesz.test_class_certificate(box, ctx, ev)
    assert not bad.certified
    assert "frequency ceiling" in bad.notes[0]
    with pytest.raises(InadmissibleTestFunctionError):
        weak_pairing(box, bad, 1, ctx, ev)

    zero = riesz.test_class_certificate(zeros(line_grid), ctx, ev)
    assert zero.certified
    assert zero.notes == ["zero test function"]


@pytest.mark.parametrize("k", [0.0, 1.0])
def test_weak_pairing_matches_kernel_double_integral(k):
    ctx, ev = make_context("rank1", k)
    grid = GridSpec(1, 10.0, 512)
    f = sample(grid, lambda x: (np.abs(x[..., 0] - 6.0) <= 1.0).astype(float))
    phi = riesz.test_class_certificate(sample(grid, gaussian()), ctx, ev)
    assert phi.certified
    report = lemma41_check(f, phi, 1, ctx, ev)
    assert report.passed, report.get("relative_residual").to_dict()
    assert abs(report.values["weak_pairing"]) > 0


@pytest.mark.parametrize("x", [0.5, 1.3, -2.0])
def test_classical_truncated_route_matches_quadrature(classical, x):
    ctx, ev = classical
    grid = GridSpec(1, 20.0, 2048)
    f = sample(grid, gaussian())
    eps, M = 1e-2, 15.0
    out = riesz_truncated(f, 1, ctx, ev, eps=eps, M=M).samples.real
    i = int(np.argmin(np.abs(grid.axis - x)))
    x0 = grid.axis[i]
    g = lambda y: (np.exp(-((x0 - y) ** 2) / 2) - np.exp(-((x0 + y) ** 2) / 2)) / y  # noqa: E731
    expected = quad(g, eps, M, limit=400)[0] / np.pi
    assert out[i] == pytest.approx(expected, abs=5e-3)
