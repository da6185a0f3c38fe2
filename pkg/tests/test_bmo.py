# path: tests/test_bmo.py
import numpy as np
import pytest

from conftest import gaussian, make_context
from dunkl.bmo import (
    BmoSampling,
    bmo_norm,
    local_average,
    oscillation_rows,
    proof_split_diagnostics,
    proof_split_sweep,
    sampled_hormander_sup,
    split_constant,
    theorem43_probe,
    uniform_linf_bound,
)
from dunkl.errors import GeometryError, InvalidArgumentError
from dunkl.grid import GridSpec, sample
from dunkl.probes import bounded_family

SMALL = BmoSampling([[0.0], [1.0], [-2.5]], [0.5, 1.0, 2.0])
GRIDDED = BmoSampling([[-2.0], [0.0], [2.0]], [0.5, 1.0, 2.0])


def sgn(x):
    return np.sign(x[..., 0])


def test_sampling_validation():
    with pytest.raises(InvalidArgumentError):
        BmoSampling([[0.0]], [0.0])
    with pytest.raises(InvalidArgumentError):
        BmoSampling(np.zeros((0, 1)), [1.0])
    with pytest.raises(GeometryError):
        BmoSampling.default(GridSpec(1, 1.0, 8))
    with pytest.raises(GeometryError):
        BmoSampling([[7.0]], [1.0]).check_margin(GridSpec(1, 12.0, 512))


def test_default_sampling_fits_the_plateau(line_grid):
    s = BmoSampling.default(line_grid)
    s.check_margin(line_grid)
    assert s.centers.shape == (9, 1)
    assert np.all(np.diff(s.radii) > 0)
    dense = s.densified()
    assert dense.centers.shape == (17, 1)
    assert set(s.radii.tolist()) <= set(dense.radii.tolist())


def test_constants_have_zero_oscillation(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    one = sample(line_grid, lambda x: np.ones(x.shape[:-1]))
    c0, rest = split_constant(one, ctx)
    assert c0 == pytest.approx(1.0)
    assert rest.max_abs() < 1e-14
    assert bmo_norm(one, SMALL, ctx, ev).bmo_estimate < 1e-14
    assert local_average(one, [1.0], 0.5, ctx, ev) == pytest.approx(1.0)
    with pytest.raises(GeometryError):
        local_average(one, [7.0], 0.5, ctx, ev)


def test_bmo_is_seminorm_like(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    f = sample(line_grid, lambda x: np.cos(2.0 * x[..., 0]))
    base = bmo_norm(f, SMALL, ctx, ev).bmo_estimate
    shifted = bmo_norm(f.with_samples(2.0 * f.samples + 3.0), SMALL, ctx, ev).bmo_estimate
    assert base > 0
    assert shifted == pytest.approx(2.0 * base, rel=1e-10)


def test_classical_sign_oscillation(classical, line_grid):
    ctx, ev = classical
    report = bmo_norm(sample(line_grid, sgn), SMALL, ctx, ev, "sgn")
    assert report.errors == []
    rows = oscillation_rows(report)
    assert len(rows) == 9
    assert rows[0][:2] == [0.0, 0.5]


def test_classical_sign_scores_one_on_the_default_grid(classical):
    ctx, ev = classical
    grid = GridSpec.default(1)
    report = bmo_norm(sample(grid, sgn), BmoSampling.default(grid), ctx, ev, "sgn")
    # balls centered at the jump split it evenly
    assert abs(report.bmo_estimate - 1.0) <= 0.05


def test_oscillation_bounded_by_translation_sup(rank1, line_grid):
    ctx, ev = rank1
    f = sample(line_grid, lambda x: np.cos(2.0 * x[..., 0]) + 0.5 * np.sign(x[..., 0]))
    c_tau = uniform_linf_bound(f, SMALL, ctx, ev)
    report = bmo_norm(f, SMALL, ctx, ev)
    assert 0 < report.bmo_estimate <= 2.0 * c_tau * report.linf_norm + 1e-12


def test_densified_sampling_never_decreases(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    f = sample(line_grid, lambda x: np.cos(2.0 * x[..., 0]))
    coarse = BmoSampling([[-2.0], [0.0], [2.0]], [0.5, 1.0])
    base = bmo_norm(f, coarse, ctx, ev).bmo_estimate
    dense = bmo_norm(f, coarse.densified(), ctx, ev).bmo_estimate
    assert dense >= base - 1e-12


def test_riesz_bmo_probe(classical, line_grid):
    ctx, ev = classical
    report = theorem43_probe(sgn, 1, line_grid, ctx, ev, sampling=SMALL, function_id="sgn", stability=False)
    assert report.status == "ok"
    assert 0 < report.ratio < np.inf
    assert report.uniform_l1_probe["probe"] == "uniform_bound"
    assert "oscillations" in report.to_dict()


def test_riesz_bmo_probe_is_grid_stable(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    report = theorem43_probe(lambda x: np.cos(2.0 * x[..., 0]), 1, line_grid, ctx, ev, sampling=SMALL)
    assert report.status == "ok", report.stability
    assert report.stability["grid_doubling_ratio"] < 0.15


def test_riesz_bmo_density_check(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    f = lambda x: np.cos(2.0 * x[..., 0])  # noqa: E731
    report = theorem43_probe(f, 1, line_grid, ctx, ev, sampling=GRIDDED, stability=False, density_check=True)
    assert report.stability["dense_ratio"] >= report.ratio - 1e-12


def test_proof_split(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    f = sample(line_grid, lambda x: np.cos(2.0 * x[..., 0]) + gaussian(0.5, 1.0)(x))
    out = proof_split_diagnostics(f, 1, [1.0], 0.5, ctx, ev, max_nodes=16)
    assert out["status"] == "ok", out
    assert out["a_value"] <= out["hormander_sup"] * 1.1
    assert not out["g2_zero"]
    assert out["ball_nodes"] <= 16
    with pytest.raises(InvalidArgumentError):
        proof_split_diagnostics(f, 1, [1.0], 0.0, ctx, ev)


def test_resolved_sampling_drops_unresolved_radii():
    s = BmoSampling([[0.0]], [0.05, 0.2, 0.8])
    assert s.resolved_on(GridSpec(1, 12.0, 512)).radii.tolist() == [0.8]
    assert s.resolved_on(GridSpec(1, 1.0, 512), cells=4).radii.tolist() == [0.05, 0.2, 0.8]


def test_proof_split_uses_a_measured_hormander_sup(rank1_k1, line_grid):
    ctx, ev = rank1_k1
    f = sample(line_grid, sgn)
    measured = proof_split_diagnostics(f, 1, [1.0], 0.5, ctx, ev, max_nodes=8)
    assert measured["hormander_source"] == "sampled_pairs"
    assert measured["hormander_sup"] == pytest.approx(sampled_hormander_sup(1, line_grid, ctx, ev))
    assert measured["status"] == "ok", measured

    given = proof_split_diagnostics(f, 1, [1.0], 0.5, ctx, ev, hormander_sup=0.0, max_nodes=8)
    assert given["hormander_source"] == "given"
    assert given["a_value"] > 0
    assert given["status"] == "fail"


@pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
def test_proof_split_holds_on_every_sampled_ball(k, line_grid):
    ctx, ev = make_context("rank1", k)
    sweep = proof_split_sweep(sample(line_grid, sgn), 1, SMALL, ctx, ev)
    assert sweep["pairs"] == 9
    assert sweep["status"] == "ok", sweep["failures"]
    assert 0 < sweep["a_max"] <= 1.1 * sweep["hormander_sup"]


@pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
def test_riesz_bmo_ratio_is_grid_stable_on_the_default_grid(k):
    ctx, ev = make_context("rank1", k)
    grid = GridSpec.default(1)
    for name in ("sgn", "square", "cosine"):
        report = theorem43_probe(bounded_family(name, grid), 1, grid, ctx, ev, function_id=name)
        assert report.status == "ok", (name, report.stability)
        assert report.stability["grid_doubling_ratio"] <= 0.15
        assert np.isfinite(report.ratio)
