# path: dunkl/bmo.py
"""
Sampled Dunkl-type BMO norms and the L^inf -> BMO measurements for R_j.

A bounded input f is split as f = c0 + (f - c0), c0 the weighted box mean.
The constant translates to itself; only the centered part is tapered and
translated spectrally, and R_j annihilates c0.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .errors import GeometryError, InvalidArgumentError
from .grid import GridFunction, GridSpec, lp_norm, measure_weights, sample, tail_mass, taper
from .kernel import KernelEvaluator
from .riesz import RieszConfig, hormander_probe, kernel_column, kernel_row, riesz_multiplier, sample_pairs
from .roots import OrbitRegion, WeightContext, region_mask
from .translation import translate_spectral, uniform_bound_probe
from .utils import BMO_CENTERS_PER_AXIS, BMO_RESOLVED_CELLS, RIESZ_EPS, SPLIT_TOL, STABILITY_TOL, log

# taper window as fractions of the box half-width
TAPER_INNER = 0.6
TAPER_OUTER = 0.9


@dataclass
class BmoSampling:
    """Sampled centers x and radii r replacing the sup over all balls."""

    centers: np.ndarray
    radii: np.ndarray

    def __post_init__(self) -> None:
        self.centers = np.atleast_2d(np.asarray(self.centers, dtype=float))
        self.radii = np.asarray(self.radii, dtype=float).reshape(-1)
        if self.radii.size == 0 or np.any(self.radii <= 0):
            raise InvalidArgumentError("BMO radii must be positive")
        if self.centers.shape[0] == 0:
            raise InvalidArgumentError("BMO sampling needs at least one center")

    @classmethod
    def default(cls, grid: GridSpec, per_axis: int = BMO_CENTERS_PER_AXIS) -> "BmoSampling":
        radii = []
        r = 4.0 * grid.spacing
        while r <= grid.half_width / 4.0:
            radii.append(r)
            r *= 2.0
        if not radii:
            raise GeometryError("grid too coarse for a dyadic radius ladder")
        extent = 0.999 * (TAPER_INNER * grid.half_width - radii[-1]) / np.sqrt(grid.dimension)
        ax = np.linspace(-extent, extent, per_axis)
        mesh = np.stack(np.meshgrid(*([ax] * grid.dimension), indexing="ij"), axis=-1)
        return cls(mesh.reshape(-1, grid.dimension), np.array(radii))

    def densified(self) -> "BmoSampling":
        """Twice the center density per axis and sqrt(2)-steps between radii; contains self."""
        n = self.centers.shape[1]
        lo, hi = float(np.min(self.centers)), float(np.max(self.centers))
        per_axis = int(round(self.centers.shape[0] ** (1.0 / n)))
        ax = np.linspace(lo, hi, 2 * per_axis - 1)
        mesh = np.stack(np.meshgrid(*([ax] * n), indexing="ij"), axis=-1).reshape(-1, n)
        mids = np.sqrt(self.radii[:-1] * self.radii[1:])
        return BmoSampling(mesh, np.sort(np.concatenate([self.radii, mids])))

    def resolved_on(self, grid: GridSpec, cells: int = BMO_RESOLVED_CELLS) -> "BmoSampling":
        """Radii spanning at least `cells` nodes of grid; the largest radius is always kept."""
        keep = self.radii >= cells * grid.spacing
        keep[np.argmax(self.radii)] = True
        return BmoSampling(self.centers, self.radii[keep])

    def check_margin(self, grid: GridSpec) -> None:
        reach = float(np.max(np.linalg.norm(self.centers, axis=1))) + float(np.max(self.radii))
        if reach > TAPER_INNER * grid.half_width + 1e-12:
            raise GeometryError(f"|x| + r reaches {reach:.3g}, beyond the taper plateau")

    def to_dict(self) -> Dict[str, Any]:
        return {"centers": self.centers.tolist(), "radii": self.radii.tolist()}


@dataclass
class BmoReport:
    function_id: str
    group: Dict[str, Any]
    centers: np.ndarray
    radii: np.ndarray
    oscillations: List[List[Any]] = field(default_factory=list)
    bmo_estimate: float = 0.0
    linf_norm: float = 0.0
    j: Optional[int] = None
    ratio: Optional[float] = None
    uniform_l1_probe: Optional[Dict[str, Any]] = None
    stability: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)
    status: str = "ok"

    def to_dict(self) -> Dict[str, Any]:
        from .report import _plain

        return _plain(
            {
                "function_id": self.function_id,
                "group": self.group,
                "k": self.group.get("k"),
                "j": self.j,
                "centers": self.centers,
                "radii": self.radii,
                "oscillations": self.oscillations,
                "bmo_estimate": self.bmo_estimate,
                "linf_norm": self.linf_norm,
                "ratio": self.ratio,
                "uniform_l1_probe": self.uniform_l1_probe,
                "stability": self.stability,
                "diagnostics": self.diagnostics,
                "errors": self.errors,
                "status": self.status,
            }
        )


# ----- preparation -----
def split_constant(f: GridFunction, ctx: WeightContext) -> Tuple[complex, GridFunction]:
    """(c0, tapered f - c0) with c0 the weighted mean over the box."""
    w = measure_weights(f.grid, ctx)
    c0 = complex(np.sum(f.samples * w) / np.sum(w))
    centered = f.with_samples(f.samples - c0)
    L = f.grid.half_width
    return c0, taper(centered, TAPER_INNER * L, TAPER_OUTER * L)


def _ball(grid: GridSpec, r: float) -> np.ndarray:
    mask = np.linalg.norm(grid.mesh(), axis=-1) <= r
    if not np.any(mask):
        raise GeometryError(f"ball of radius {r} holds no grid node")
    return mask


def local_average(f: GridFunction, x: np.ndarray, r: float, ctx: WeightContext, ev: KernelEvaluator) -> complex:
    """(1/m_k(B_r)) int_{B_r} tau_x f dm_k."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if float(np.linalg.norm(x)) + r > TAPER_INNER * f.grid.half_width:
        raise GeometryError(f"|x| + r = {np.linalg.norm(x) + r:.3g} exceeds the taper plateau")
    ball = _ball(f.grid, r)
    w = measure_weights(f.grid, ctx)
    c0, g = split_constant(f, ctx)
    t = translate_spectral(g, x, ctx, ev).values.samples
    return c0 + complex(np.sum(t[ball] * w[ball]) / np.sum(w[ball]))


def bmo_norm(
    f: GridFunction,
    sampling: BmoSampling,
    ctx: WeightContext,
    ev: KernelEvaluator,
    function_id: str = "f",
) -> BmoReport:
    """max over the sampled (x, r) of the mean oscillation of tau_x f on B_r."""
    grid = f.grid
    c0, g = split_constant(f, ctx)
    w = measure_weights(grid, ctx)
    report = BmoReport(function_id, ctx.describe(), sampling.centers, sampling.radii)
    balls = {}
    for r in sampling.radii:
        try:
            balls[float(r)] = _ball(grid, float(r))
        except GeometryError as e:
            report.errors.append(str(e))
    tails = [tail_mass(g, ctx)]
    plateau = TAPER_INNER * grid.half_width
    best = 0.0
    for x in sampling.centers:
        t = translate_spectral(g, x, ctx, ev).values
        tails.append(tail_mass(t, ctx))
        for r, ball in balls.items():
            if float(np.linalg.norm(x)) + r > plateau + 1e-12:
                report.errors.append(f"x={x.tolist()} r={r}: outside the taper plateau")
                continue
            vals = t.samples[ball]
            wb = w[ball]
            avg = np.sum(vals * wb) / np.sum(wb)
            osc = float(np.sum(np.abs(vals - avg) * wb) / np.sum(wb))
            report.oscillations.append([x.tolist(), r, osc])
            best = max(best, osc)
    report.bmo_estimate = best
    report.linf_norm = lp_norm(f, ctx, np.inf)
    report.diagnostics.update({"constant_part": c0, "tail_mass": max(tails)})
    log(f"[BMO] {function_id}: |f|_* ~ {best:.6g} over {len(report.oscillations)} balls")
    return report


def uniform_linf_bound(f: GridFunction, sampling: BmoSampling, ctx: WeightContext, ev: KernelEvaluator) -> float:
    """C_tau = max over the sampled centers of sup_{B_rmax} |tau_x f| / |f|_inf."""
    nf = lp_norm(f, ctx, np.inf)
    if nf == 0.0:
        return 0.0
    c0, g = split_constant(f, ctx)
    ball = _ball(f.grid, float(np.max(sampling.radii)))
    best = 0.0
    for x in sampling.centers:
        t = translate_spectral(g, x, ctx, ev).values.samples
        best = max(best, float(np.max(np.abs(c0 + t[ball]))))
    return best / nf


def oscillation_rows(report: BmoReport) -> List[List[float]]:
    """Flat rows x_1..x_N, r, oscillation."""
    return [list(x) + [r, v] for x, r, v in report.oscillations]


# ----- Riesz transforms of bounded functions -----
BoundedInput = Union[GridFunction, Callable[[np.ndarray], np.ndarray]]


def _on_grid(f: BoundedInput, grid: GridSpec) -> GridFunction:
    if not isinstance(f, GridFunction):
        return sample(grid, f)
    if f.grid == grid:
        return f
    axes = (f.grid.axis,) * f.grid.dimension
    pts = grid.mesh()
    re = RegularGridInterpolator(axes, f.samples.real, bounds_error=False, fill_value=None)(pts)
    im = RegularGridInterpolator(axes, f.samples.imag, bounds_error=False, fill_value=None)(pts)
    return GridFunction(grid, re + 1j * im)


def riesz_of_bounded(f: GridFunction, j: int, ctx: WeightContext, ev: KernelEvaluator) -> GridFunction:
    """R_j on the tapered centered part; the constant is annihilated."""
    _, g = split_constant(f, ctx)
    return riesz_multiplier(g, j, ctx, ev)


def _ratio_on(f: GridFunction, j: int, sampling: BmoSampling, ctx: WeightContext, ev: KernelEvaluator, fid: str):
    rep = bmo_norm(riesz_of_bounded(f, j, ctx, ev), sampling, ctx, ev, fid)
    nf = lp_norm(f, ctx, np.inf)
    return rep, (rep.bmo_estimate / nf if nf > 0 else 0.0)


def theorem43_probe(
    f: BoundedInput,
    j: int,
    grid: GridSpec,
    ctx: WeightContext,
    ev: KernelEvaluator,
    sampling: Optional[BmoSampling] = None,
    function_id: str = "f",
    stability: bool = True,
    density_check: bool = False,
) -> BmoReport:
    """|R_j f|_* / |f|_inf with the uniform L^1 translation companion and refinement stability."""
    fg = _on_grid(f, grid)
    sampling = sampling or BmoSampling.default(grid)
    sampling.check_margin(grid)
    report, ratio = _ratio_on(fg, j, sampling, ctx, ev, function_id)
    report.j = j
    report.linf_norm = lp_norm(fg, ctx, np.inf)
    report.ratio = ratio

    _, g = split_constant(fg, ctx)
    ys = sampling.centers[:: max(1, sampling.centers.shape[0] // 9)]
    report.uniform_l1_probe = uniform_bound_probe({function_id: g}, ys, 1, ctx, ev).to_dict()
    report.diagnostics["uniform_linf_bound"] = uniform_linf_bound(fg, sampling, ctx, ev)

    if stability and ratio > 0:
        coarse = grid.coarsened()
        # both grids on the same balls, all of them resolved by the coarse one
        shared = sampling.resolved_on(coarse)
        _, fine_ratio = _ratio_on(fg, j, shared, ctx, ev, function_id)
        _, coarse_ratio = _ratio_on(_on_grid(f, coarse), j, shared, ctx, ev, function_id)
        change = abs(coarse_ratio - fine_ratio) / fine_ratio if fine_ratio > 0 else 0.0
        report.stability.update(
            {
                "coarse_grid": coarse.to_dict(),
                "compared_radii": shared.radii.tolist(),
                "fine_ratio": fine_ratio,
                "coarse_ratio": coarse_ratio,
                "grid_doubling_ratio": change,
            }
        )
        if change > STABILITY_TOL:
            report.status = "fail"
    if density_check and ratio > 0:
        _, dense_ratio = _ratio_on(fg, j, sampling.densified(), ctx, ev, function_id)
        report.stability.update({"dense_ratio": dense_ratio, "density_doubling_ratio": abs(dense_ratio - ratio) / ratio})
        if dense_ratio < ratio - 1e-12 or abs(dense_ratio - ratio) / ratio > STABILITY_TOL:
            report.status = "fail"
    if not np.isfinite(ratio):
        report.status = "fail"
    log(f"[BMO] Theorem probe {function_id} j={j}: ratio {ratio:.6g} ({report.status})")
    return report


def proof_split_diagnostics(
    f: GridFunction,
    j: int,
    x: np.ndarray,
    r: float,
    ctx: WeightContext,
    ev: KernelEvaluator,
    eps: float = RIESZ_EPS,
    M: Optional[float] = None,
    hormander_sup: Optional[float] = None,
    max_nodes: int = 64,
) -> Dict[str, Any]:
    """Split F = tau_x f over Q*(x, r) and measure both halves of the BMO estimate.

    (a) sup_{y in B(x,r)} |R g2(y) - R g2(x)| / |F|_inf against the Hormander sup;
    (b) the B(x,r)-average of |R g1| against sqrt(|g1|_2^2 / m_k(B)).
    """
    grid = f.grid
    x = np.asarray(x, dtype=float).reshape(-1)
    if r <= 0:
        raise InvalidArgumentError("radius must be positive")
    cfg = RieszConfig.for_context(ctx, j, eps, M, grid)
    mesh = grid.mesh()
    w = measure_weights(grid, ctx)
    c0, g = split_constant(f, ctx)
    F = translate_spectral(g, x, ctx, ev).values
    F = F.with_samples(F.samples + c0)
    q_star = region_mask(OrbitRegion(x, r, "orbit_union", ctx.group), mesh)
    g1 = F.with_samples(np.where(q_star, F.samples, 0.0))
    g2 = F.with_samples(np.where(q_star, 0.0, F.samples))
    f_sup = lp_norm(f, ctx, np.inf)
    F_sup = F.max_abs()

    ball = np.linalg.norm(mesh - x, axis=-1) <= r
    idx = np.argwhere(ball)
    if idx.shape[0] > max_nodes:
        idx = idx[np.linspace(0, idx.shape[0] - 1, max_nodes).astype(int)]
    g2w = g2.samples * w
    at_x = np.sum(kernel_row(x, cfg, grid, ctx, ev).samples * g2w)
    col_x = kernel_column(x, cfg, grid, ctx, ev).samples
    far = ~q_star
    diff_a, local_h = 0.0, 0.0
    for i in idx:
        y = mesh[tuple(i)]
        row = kernel_row(y, cfg, grid, ctx, ev).samples
        diff_a = max(diff_a, float(abs(np.sum(row * g2w) - at_x)))
        local_h = max(local_h, float(np.sum((np.abs(-row - col_x) * w)[far])))
    a_value = diff_a / F_sup if F_sup > 0 else 0.0
    source = "given"
    if hormander_sup is None:
        hormander_sup, source = sampled_hormander_sup(j, grid, ctx, ev, eps, cfg.M), "sampled_pairs"
    h_sup = float(hormander_sup)

    rg1 = riesz_multiplier(g1, j, ctx, ev).samples
    m_ball = float(np.sum(w[ball]))
    b_value = float(np.sum(np.abs(rg1[ball]) * w[ball]) / m_ball)
    b_bound = float(np.sqrt(np.sum(np.abs(g1.samples) ** 2 * w) / m_ball))

    out = {
        "x": x,
        "r": r,
        "a_value": a_value,
        "a_value_over_f_inf": diff_a / f_sup if f_sup > 0 else 0.0,
        "hormander_sup": h_sup,
        "hormander_source": source,
        "local_hormander": local_h,
        "a_within_hormander": bool(a_value <= h_sup * (1.0 + SPLIT_TOL) + 1e-15),
        "b_value": b_value / f_sup if f_sup > 0 else 0.0,
        "b_bound": b_bound / f_sup if f_sup > 0 else 0.0,
        "b_within_bound": bool(b_value <= b_bound * (1.0 + SPLIT_TOL) + 1e-15),
        "g2_zero": bool(not np.any(g2.samples)),
        "ball_nodes": int(idx.shape[0]),
    }
    out["status"] = "ok" if out["a_within_hormander"] and out["b_within_bound"] else "fail"
    return out


def sampled_hormander_sup(
    j: int,
    grid: GridSpec,
    ctx: WeightContext,
    ev: KernelEvaluator,
    eps: float = RIESZ_EPS,
    M: Optional[float] = None,
    pairs: int = 50,
    seed: int = 0,
) -> float:
    """Hormander integral sup over sample_pairs(grid), without the doubling check."""
    report = hormander_probe(j, sample_pairs(grid, pairs, seed), grid, ctx, ev, eps, M, stability=False)
    return float(report.values["sup"])


def proof_split_sweep(
    f: GridFunction,
    j: int,
    sampling: BmoSampling,
    ctx: WeightContext,
    ev: KernelEvaluator,
    eps: float = RIESZ_EPS,
    M: Optional[float] = None,
    hormander_sup: Optional[float] = None,
    max_nodes: int = 8,
    seed: int = 0,
) -> Dict[str, Any]:
    """proof_split_diagnostics on every sampled (x, r) against one measured Hormander sup."""
    if hormander_sup is None:
        hormander_sup = sampled_hormander_sup(j, f.grid, ctx, ev, eps, M, seed=seed)
    rows: List[List[Any]] = []
    failures = []
    for x in sampling.centers:
        for r in sampling.radii:
            d = proof_split_diagnostics(f, j, x, float(r), ctx, ev, eps, M, hormander_sup, max_nodes)
            xs = np.asarray(x, dtype=float).tolist()
            rows.append(xs + [float(r), d["a_value"], d["b_value"], d["b_bound"], d["status"]])
            if d["status"] != "ok":
                failures.append({"x": xs, "r": float(r), "a_value": d["a_value"], "b_value": d["b_value"]})
    a_max = max((row[-4] for row in rows), default=0.0)
    out = {
        "pairs": len(rows),
        "hormander_sup": float(hormander_sup),
        "a_max": a_max,
        "a_max_over_hormander": a_max / hormander_sup if hormander_sup > 0 else 0.0,
        "failures": failures,
        "rows": rows,
        "status": "ok" if not failures else "fail",
    }
    log(f"[BMO] proof split over {len(rows)} balls: a_max={a_max:.6g} sup={hormander_sup:.6g} failures={len(failures)}")
    return out
