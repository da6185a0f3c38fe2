# path: dunkl/translation.py
"""
Dunkl translations by two routes:

- spectral: tau_x f = F^{-1}(E(ix, .) Ff), any supported group;
- Roesler: tau_x f(-y) = int f~(A(x, y, eta)) dmu_x(eta) for radial f, with
  mu_x the rank-one representing measure (a tensor product of rank-one
  measures for Z_2^N, a point mass on axes with k = 0).

Also convolution and the diagnostic checks built on translations.
"""
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Union

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.special import gammaln, roots_jacobi

from .errors import GeometryError, InvalidArgumentError, UnsupportedGroupError
from .grid import (
    GridFunction,
    GridSpec,
    RadialProfile,
    integrate_weighted,
    lp_norm,
    measure_weights,
    radialize,
    reflect_samples,
    tail_mass,
)
from .kernel import (
    DunklOperatorSpec,
    KernelEvaluator,
    Spectrum,
    _contract,
    apply_dunkl_operator,
    c_k_constant,
    forward_transform,
    inverse_transform,
)
from .report import ProbeReport
from .roots import WeightContext, orbit, orbit_distance, orbit_spread
from .utils import FLOOR_SUPPORT, ROESLER_NODES, TOL_SUPPORT, log


# ----- representing measure -----
@dataclass
class RepresentingMeasure:
    """Discrete realization of mu_x: quadrature nodes eta and their masses."""

    base_point: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    multiplicity: np.ndarray

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    @property
    def support(self) -> np.ndarray:
        """Per-axis interval [-|x_i|, |x_i|] containing co(G.x)."""
        a = np.abs(self.base_point)
        return np.stack([-a, a], axis=1)

    def density(self, eta: np.ndarray) -> np.ndarray:
        """Rank-one Roesler density on (-|x|, |x|)."""
        if self.base_point.size != 1:
            raise UnsupportedGroupError("an explicit density is only available in rank one")
        return roesler_density_value(float(self.base_point[0]), float(self.multiplicity[0]), eta)

    def integrate(self, func: Callable[[np.ndarray], np.ndarray]) -> complex:
        """V_k func(x) = int func(eta) dmu_x(eta)."""
        return complex(np.sum(self.weights * func(self.nodes)))


def roesler_constant(k: float) -> float:
    """Gamma(k+1/2) / (sqrt(pi) Gamma(k))."""
    return float(np.exp(gammaln(k + 0.5) - 0.5 * np.log(np.pi) - gammaln(k)))


def roesler_density_value(x: float, k: float, eta: np.ndarray) -> np.ndarray:
    eta = np.asarray(eta, dtype=float)
    t = eta / x
    inside = np.abs(t) < 1
    out = np.zeros_like(t)
    out[inside] = roesler_constant(k) * (1 + t[inside]) * (1 - t[inside] ** 2) ** (k - 1) / abs(x)
    return out


def _axis_measure(x: float, k: float, nodes: int):
    if k == 0 or x == 0:
        return np.array([x]), np.array([1.0])
    # weight (1 - t)^(k-1) (1 + t)^k on (-1, 1), eta = x t
    t, w = roots_jacobi(nodes, k - 1.0, k)
    return x * t, roesler_constant(k) * w


def roesler_density(x: float, k: float, nodes: int = ROESLER_NODES) -> RepresentingMeasure:
    """Rank-one mu_x as a Gauss-Jacobi rule; x = 0 gives the point mass at 0."""
    if k <= 0:
        raise InvalidArgumentError("the representing measure is a point mass at k = 0; use the shift")
    eta, w = _axis_measure(float(x), float(k), nodes)
    return RepresentingMeasure(np.array([float(x)]), eta.reshape(-1, 1), w, np.array([float(k)]))


def representing_measure(ev: KernelEvaluator, x: Sequence[float], nodes: Optional[int] = None) -> RepresentingMeasure:
    """Tensor product of the per-axis measures."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if nodes is None:
        nodes = ROESLER_NODES if x.size == 1 else 48
    etas, ws = [], []
    for i in range(x.size):
        e, w = _axis_measure(float(x[i]), float(ev.multiplicity[i]), nodes)
        etas.append(e)
        ws.append(w)
    grids = np.meshgrid(*etas, indexing="ij")
    wgrid = np.ones(grids[0].shape)
    for i, w in enumerate(ws):
        shape = [1] * x.size
        shape[i] = w.size
        wgrid = wgrid * w.reshape(shape)
    pts = np.stack([g.reshape(-1) for g in grids], axis=1)
    return RepresentingMeasure(x, pts, wgrid.reshape(-1), ev.multiplicity.copy())


def amplitude(x: Sequence[float], y: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """A(x, y, eta) = sqrt(|x|^2 + |y|^2 - 2<y, eta>), broadcast over stacks."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    eta = np.asarray(eta, dtype=float)
    a2 = x @ x + np.sum(y * y, axis=-1) - 2.0 * np.sum(y * eta, axis=-1)
    return np.sqrt(np.maximum(a2, 0.0))


# ----- translations -----
@dataclass
class TranslationResult:
    """y -> tau_x f(y) and its companion y -> tau_x f(-y)."""

    base_point: np.ndarray
    values: GridFunction
    reflected: GridFunction
    route: str


def translate_spectral(
    f: GridFunction,
    x: Sequence[float],
    ctx: WeightContext,
    ev: KernelEvaluator,
    spectrum: Optional[Spectrum] = None,
) -> TranslationResult:
    x = np.asarray(x, dtype=float).reshape(-1)
    spec = spectrum or forward_transform(f, ctx, ev)
    shift = ev.evaluate(spec.grid.mesh(), 1j * x)
    out = inverse_transform(spec.with_samples(spec.samples * shift), ctx, ev, f.grid)
    return TranslationResult(x, out, reflect_samples(out), "spectral")


def translate_at(
    f: GridFunction,
    x: Sequence[float],
    ys: np.ndarray,
    ctx: WeightContext,
    ev: KernelEvaluator,
    spectrum: Optional[Spectrum] = None,
) -> np.ndarray:
    """tau_x f at arbitrary points ys of shape (M, N)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    ys = np.atleast_2d(np.asarray(ys, dtype=float))
    spec = spectrum or forward_transform(f, ctx, ev)
    fg = spec.grid
    g = spec.samples * ev.evaluate(fg.mesh(), 1j * x) * measure_weights(fg, ctx) / spec.c_k
    ax = fg.axis
    if fg.dimension == 1:
        return ev.axis_kernel(0, 1j * np.outer(ys[:, 0], ax)) @ g
    out = np.empty(ys.shape[0], dtype=complex)
    for m, y in enumerate(ys):
        mats = [ev.axis_kernel(i, 1j * y[i] * ax)[None, :] for i in range(fg.dimension)]
        out[m] = _contract(g, mats).reshape(-1)[0]
    return out


def _radial_values(profile: RadialProfile, x: np.ndarray, ys: np.ndarray, mu: RepresentingMeasure) -> np.ndarray:
    out = np.empty(ys.shape[0], dtype=complex)
    chunk = max(1, 2_000_000 // max(1, mu.weights.size))
    for s in range(0, ys.shape[0], chunk):
        y = ys[s : s + chunk]
        a = amplitude(x, y[:, None, :], mu.nodes[None, :, :])
        out[s : s + chunk] = profile(a) @ mu.weights
    return out


def _check_profile_reach(profile: RadialProfile, x: np.ndarray, ys: np.ndarray) -> None:
    reach = float(np.linalg.norm(x) + np.max(np.linalg.norm(ys, axis=-1)))
    if reach > profile.max_radius and profile.samples[-1] != 0:
        raise GeometryError(
            f"profile stops at R={profile.max_radius} with a nonzero value but A reaches {reach:.3g}"
        )


def translate_radial(
    profile: RadialProfile,
    x: Sequence[float],
    y: np.ndarray,
    ctx: WeightContext,
    ev: Optional[KernelEvaluator] = None,
    nodes: Optional[int] = None,
) -> Union[complex, np.ndarray]:
    """tau_x f(-y) for radial f; y is one point or a stack (M, N)."""
    ev = ev or KernelEvaluator.for_context(ctx)
    x = np.asarray(x, dtype=float).reshape(-1)
    y_arr = np.asarray(y, dtype=float)
    single = y_arr.ndim == 1
    ys = np.atleast_2d(y_arr).reshape(-1, x.size)
    _check_profile_reach(profile, x, ys)
    mu = representing_measure(ev, x, nodes)
    vals = _radial_values(profile, x, ys, mu)
    return complex(vals[0]) if single else vals


def translate_radial_grid(
    profile: RadialProfile,
    x: Sequence[float],
    grid: GridSpec,
    ctx: WeightContext,
    ev: Optional[KernelEvaluator] = None,
    nodes: Optional[int] = None,
) -> TranslationResult:
    x = np.asarray(x, dtype=float).reshape(-1)
    vals = translate_radial(profile, x, grid.points(), ctx, ev, nodes)
    reflected = GridFunction(grid, vals)
    return TranslationResult(x, reflect_samples(reflected), reflected, "roesler")


def intertwining_residual(ev: KernelEvaluator, x: Sequence[float], ys: np.ndarray, nodes: Optional[int] = None) -> float:
    """max_y |int exp(<eta, y>) dmu_x(eta) - E(x, y)| / |E(x, y)|."""
    mu = representing_measure(ev, x, nodes)
    ys = np.atleast_2d(np.asarray(ys, dtype=float))
    lhs = np.exp(ys @ mu.nodes.T) @ mu.weights
    rhs = ev.evaluate(np.asarray(x, dtype=float)[None, :], ys)
    return float(np.max(np.abs(lhs - rhs) / np.abs(rhs)))


# ----- convolution -----
def convolve(f: GridFunction, g: GridFunction, ctx: WeightContext, ev: KernelEvaluator) -> GridFunction:
    """f * g = F^{-1}(Ff . Fg)."""
    ff = forward_transform(f, ctx, ev)
    fg = forward_transform(g, ctx, ev)
    return inverse_transform(ff.with_samples(ff.samples * fg.samples), ctx, ev, f.grid)


def convolution_property_suite(
    f: GridFunction,
    g: GridFunction,
    h: GridFunction,
    ctx: WeightContext,
    ev: KernelEvaluator,
    threshold: float = 1e-6,
) -> ProbeReport:
    """F(f*g) = Ff Fg, commutativity and associativity."""
    report = ProbeReport("convolution", params={"grid": f.grid.to_dict()})
    fg = convolve(f, g, ctx, ev)
    gf = convolve(g, f, ctx, ev)
    scale = max(fg.max_abs(), 1e-300)
    spec = forward_transform(fg, ctx, ev).samples
    prod = forward_transform(f, ctx, ev).samples * forward_transform(g, ctx, ev).samples
    report.check("transform_of_product", np.max(np.abs(spec - prod)) / max(np.max(np.abs(prod)), 1e-300), threshold)
    report.check("commutativity", np.max(np.abs(fg.samples - gf.samples)) / scale, threshold)
    left = convolve(fg, h, ctx, ev)
    right = convolve(f, convolve(g, h, ctx, ev), ctx, ev)
    report.check("associativity", np.max(np.abs(left.samples - right.samples)) / max(left.max_abs(), 1e-300), threshold)
    return report


# ----- property checks -----
def _interior_points(grid: GridSpec, count: int, rng: np.random.Generator, fraction: float = 0.25) -> np.ndarray:
    return rng.uniform(-fraction * grid.half_width, fraction * grid.half_width, size=(count, grid.dimension))


def _dilate(f: GridFunction, lam: float) -> GridFunction:
    """f_lambda(u) = f(u / lambda) by cubic interpolation, 0 outside the box."""
    axes = (f.grid.axis,) * f.grid.dimension
    pts = f.grid.mesh() / lam
    method = "cubic" if f.grid.nodes >= 4 else "linear"
    re = RegularGridInterpolator(axes, f.samples.real, method=method, bounds_error=False, fill_value=0.0)(pts)
    im = RegularGridInterpolator(axes, f.samples.imag, method=method, bounds_error=False, fill_value=0.0)(pts)
    return f.with_samples(re + 1j * im)


DEFAULT_PROPERTY_TOLERANCES = {
    "symmetry": 1e-5,
    "scaling": 1e-4,
    "skew_symmetry": 1e-6,
    "mass": 1e-6,
    "l2_contraction": 1e-8,
    "commutativity": 1e-3,
}


def translation_property_suite(
    f: GridFunction,
    x: Sequence[float],
    lam: float,
    ctx: WeightContext,
    ev: KernelEvaluator,
    g: Optional[GridFunction] = None,
    samples: int = 5,
    seed: int = 0,
    tolerances: Optional[Dict[str, float]] = None,
) -> ProbeReport:
    """Identity-type properties of tau_x, each reported with its residual."""
    tol = dict(DEFAULT_PROPERTY_TOLERANCES)
    tol.update(tolerances or {})
    x = np.asarray(x, dtype=float).reshape(-1)
    rng = np.random.default_rng(seed)
    report = ProbeReport("translation_properties", params={"x": x, "lambda": lam, "grid": f.grid.to_dict()})
    spec = forward_transform(f, ctx, ev)
    sup = max(f.max_abs(), 1e-300)

    # symmetry tau_a f(b) = tau_b f(a)
    pa = _interior_points(f.grid, samples, rng)
    pb = _interior_points(f.grid, samples, rng)
    sym = 0.0
    for a, b in zip(pa, pb):
        lhs = translate_at(f, a, b[None, :], ctx, ev, spec)[0]
        rhs = translate_at(f, b, a[None, :], ctx, ev, spec)[0]
        sym = max(sym, abs(lhs - rhs) / sup)
    report.check("symmetry", sym, tol["symmetry"])

    # scaling tau_x(f_lambda) = (tau_{x/lambda} f)_lambda with f_lambda(u) = f(u/lambda)
    f_lam = _dilate(f, lam)
    ys = _interior_points(f.grid, samples, rng, 0.2)
    lhs = translate_at(f_lam, x, ys, ctx, ev)
    rhs = translate_at(f, x / lam, ys / lam, ctx, ev, spec)
    report.check("scaling", float(np.max(np.abs(lhs - rhs))) / sup, tol["scaling"])

    # skew-symmetry int tau_x f g = int f tau_{-x} g
    if g is None:
        g = f.with_samples(np.exp(-np.sum(f.grid.mesh() ** 2, axis=-1)))
    tx_f = translate_spectral(f, x, ctx, ev, spec).values
    tmx_g = translate_spectral(g, -x, ctx, ev).values
    left = integrate_weighted(tx_f * g, ctx)
    right = integrate_weighted(f * tmx_g, ctx)
    report.check("skew_symmetry", abs(left - right) / max(abs(left), abs(right), 1e-300), tol["skew_symmetry"])

    # mass preservation
    m_f = integrate_weighted(f, ctx)
    m_t = integrate_weighted(tx_f, ctx)
    report.check("mass", abs(m_t - m_f) / max(abs(m_f), 1e-300), tol["mass"])

    # L2 contraction
    ratio = lp_norm(tx_f, ctx, 2) / max(lp_norm(f, ctx, 2), 1e-300)
    report.values["l2_ratio"] = ratio
    report.check("l2_contraction", ratio - 1.0, tol["l2_contraction"], "<=")

    # T_j commutes with tau_x (interior half of the box)
    inner = np.all(np.abs(f.grid.mesh()) <= 0.5 * f.grid.half_width, axis=-1)
    comm = 0.0
    for j in range(f.grid.dimension):
        op = DunklOperatorSpec.coordinate(j, f.grid.dimension)
        a = apply_dunkl_operator(op, tx_f, ctx).samples
        b = translate_spectral(apply_dunkl_operator(op, f, ctx), x, ctx, ev).values.samples
        comm = max(comm, float(np.max(np.abs(a - b)[inner])) / max(float(np.max(np.abs(a))), 1e-300))
    report.check("commutativity", comm, tol["commutativity"])
    report.values["tail_mass"] = tail_mass(tx_f, ctx)
    return report


def young_check(f: GridFunction, g: GridFunction, ctx: WeightContext, ev: KernelEvaluator) -> ProbeReport:
    """|f*g|_2 <= |f|_1 |g|_2 / c_k (convolution normalized by c_k)."""
    lhs = lp_norm(convolve(f, g, ctx, ev), ctx, 2)
    rhs = lp_norm(f, ctx, 1) * lp_norm(g, ctx, 2) / c_k_constant(ctx, f.grid)
    report = ProbeReport("young", params={"grid": f.grid.to_dict()})
    report.values.update({"lhs": lhs, "rhs": rhs})
    if rhs == 0.0:
        report.values["ratio"] = None
        report.check("lhs", lhs, 1e-300, "<=")
        return report
    report.values["ratio"] = lhs / rhs
    report.check("ratio", lhs / rhs, 1.0 + 1e-9, "<=")
    return report


def uniform_bound_probe(
    family: Dict[str, GridFunction],
    ys: np.ndarray,
    p: float,
    ctx: WeightContext,
    ev: KernelEvaluator,
) -> ProbeReport:
    """sup over the family and the sampled y of |tau_y f|_p / |f|_p."""
    ys = np.atleast_2d(np.asarray(ys, dtype=float))
    report = ProbeReport("uniform_bound", params={"p": p, "ys": ys, "family": sorted(family)})
    per: Dict[str, float] = {}
    tails: Dict[str, float] = {}
    for name in sorted(family):
        f = family[name]
        nf = lp_norm(f, ctx, p)
        if nf == 0.0:
            continue
        spec = forward_transform(f, ctx, ev)
        best, tail = 0.0, 0.0
        for y in ys:
            t = translate_spectral(f, y, ctx, ev, spec).values
            best = max(best, lp_norm(t, ctx, p) / nf)
            tail = max(tail, tail_mass(t, ctx))
        per[name] = best
        tails[name] = tail
    sup = max(per.values()) if per else 0.0
    report.values.update({"sup_ratio": sup, "per_function": per, "tail_mass": tails})
    report.check("finite", sup, np.inf)
    if p == 2:
        report.check("l2_contraction", sup - 1.0, 1e-8, "<=")
    log(f"[Translation] uniform L^{p} bound: {sup:.6g}")
    return report


# ----- support theorems -----
def bump_profile(r: float, count: int = 4097) -> RadialProfile:
    """exp(1 - 1/(1 - (s/r)^2)) on [0, r): peak 1, support exactly B(0, r)."""
    def bump(s):
        t = np.clip(s / r, 0.0, 1.0)
        out = np.zeros_like(t)
        inside = t < 1
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
        return out
    return RadialProfile.from_function(bump, r, count)


def annular_profile(r_inner: float, r_outer: float, count: int = 4097) -> RadialProfile:
    """Smooth bump on the annulus r_inner < s < r_outer, zero on [0, r_inner]."""
    mid, half = 0.5 * (r_inner + r_outer), 0.5 * (r_outer - r_inner)
    def ring(s):
        t = np.abs(s - mid) / half
        out = np.zeros_like(t)
        inside = t < 1
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
        return out
    return RadialProfile.from_function(ring, r_outer, count)


def _union_of_balls(group, x: np.ndarray, pts: np.ndarray, r: float) -> np.ndarray:
    return orbit_distance(group, x, pts) <= r


def support_sharpness_check(
    r: float,
    x: Sequence[float],
    ctx: WeightContext,
    ev: KernelEvaluator,
    grid: Optional[GridSpec] = None,
    tol_support: float = TOL_SUPPORT,
    floor_support: float = FLOOR_SUPPORT,
    nodes: Optional[int] = None,
) -> ProbeReport:
    """supp tau_x f(-.) is the union of the balls B(gx, r) for a bump on B(0, r)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    grid = grid or GridSpec.default(x.size)
    profile = bump_profile(r)
    res = translate_radial_grid(profile, x, grid, ctx, ev, nodes)
    vals = np.abs(res.reflected.samples)
    w = measure_weights(grid, ctx)
    mesh = grid.mesh()
    group = ctx.active_group
    margin = grid.spacing
    union = _union_of_balls(group, x, mesh, r + margin)

    report = ProbeReport("thm31", params={"x": x, "r": r, "grid": grid.to_dict()})
    total = float(np.sum(vals * w))
    outside = float(np.sum(vals[~union] * w[~union]))
    report.check("outside_mass_ratio", outside / total if total > 0 else 0.0, tol_support)
    peak = float(np.max(vals))
    peaks = []
    for p in orbit(group, x):
        ball = np.linalg.norm(mesh - p, axis=-1) <= r
        local = float(np.max(vals[ball])) if np.any(ball) else 0.0
        peaks.append({"center": p.tolist(), "relative_peak": local / peak if peak > 0 else 0.0})
        report.check(f"sharpness[{','.join(f'{c:g}' for c in p)}]", local / peak if peak > 0 else 0.0, floor_support, ">=")
    report.values.update({"peaks": peaks, "route": res.route, "tail_mass": tail_mass(res.reflected, ctx)})
    return report


def _as_grid_function(f: Union[RadialProfile, GridFunction], grid: GridSpec) -> GridFunction:
    return radialize(f, grid) if isinstance(f, RadialProfile) else f


def vanishing_check_cor31(
    f: Union[RadialProfile, GridFunction],
    x: Sequence[float],
    r: float,
    ctx: WeightContext,
    ev: KernelEvaluator,
    grid: Optional[GridSpec] = None,
    tol_support: float = TOL_SUPPORT,
) -> ProbeReport:
    """f vanishing on the orbit balls B(gx, r) forces tau_x f = 0 on B(0, r)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    grid = grid if grid is not None else (f.grid if isinstance(f, GridFunction) else GridSpec.default(x.size))
    fg = _as_grid_function(f, grid)
    mesh = grid.mesh()
    report = ProbeReport("cor31", params={"x": x, "r": r, "grid": grid.to_dict()})
    near = _union_of_balls(ctx.group, x, mesh, r)
    offending = float(np.max(np.abs(fg.samples[near]))) if np.any(near) else 0.0
    if not report.check("precondition_mass_in_orbit_balls", offending, 0.0, "<="):
        report.values["invalid_input"] = True
        report.notes.append("f has mass in the union of the balls B(gx, r)")
        return report

    ball = np.linalg.norm(mesh, axis=-1) <= r
    ys = mesh[ball]
    if isinstance(f, RadialProfile):
        vals = translate_radial(f, x, -ys, ctx, ev)
        route = "roesler"
    else:
        vals = translate_spectral(fg, x, ctx, ev).values.samples[ball]
        route = "spectral"
    norm = lp_norm(fg, ctx, 2)
    report.values.update({"route": route, "f_l2": norm})
    report.check("max_on_ball", float(np.max(np.abs(vals))) / norm if norm > 0 else 0.0, tol_support)
    return report


def _vanishing_radius(profile: RadialProfile) -> float:
    nz = np.flatnonzero(profile.samples != 0)
    if nz.size == 0:
        return profile.max_radius
    return float(profile.radii[max(nz[0] - 1, 0)])


def intersection_check_thm32(
    profile: RadialProfile,
    x: Sequence[float],
    ctx: WeightContext,
    ev: KernelEvaluator,
    r: Optional[float] = None,
    grid: Optional[GridSpec] = None,
    p: float = 2,
    samples: int = 10_000,
    seed: int = 0,
    tol_support: float = TOL_SUPPORT,
) -> ProbeReport:
    """tau_x f(-.) vanishes on the intersection of the balls B(gx, r)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    r = r if r is not None else _vanishing_radius(profile)
    if not profile.vanishes_below(r):
        raise InvalidArgumentError(f"profile does not vanish on [0, {r}]")
    grid = grid or GridSpec.default(x.size)
    mesh = grid.mesh()
    group = ctx.group
    report = ProbeReport("thm32", params={"x": x, "r": r, "grid": grid.to_dict(), "p": p})

    inter = orbit_spread(group, x, mesh) <= r
    norm = lp_norm(radialize(profile, grid), ctx, p)
    if np.any(inter):
        vals = translate_radial(profile, x, mesh[inter], ctx, ev)
        worst = float(np.max(np.abs(vals))) / norm if norm > 0 else 0.0
    else:
        worst = 0.0
        report.notes.append("intersection of the orbit balls is empty on the grid: vacuous pass")
    report.values["intersection_nodes"] = int(np.sum(inter))
    report.check("max_on_intersection", worst, tol_support)

    # max_g |g.x - y| >= A(x, y, eta) >= d_G(x, y) for eta in co(G.x)
    rng = np.random.default_rng(seed)
    reach = float(np.linalg.norm(x)) + 2.0 * r
    ys = rng.uniform(-reach, reach, size=(samples, x.size))
    a = np.abs(x)
    etas = rng.uniform(-a, a, size=(samples, x.size))
    corners = rng.random(samples) < 0.1
    etas[corners] = np.sign(etas[corners]) * a
    dots = np.sum(ys * etas, axis=-1)
    gx = group.act(x)
    orbit_dots = np.stack([np.sum(ys * p_, axis=-1) for p_ in gx])
    upper = int(np.sum(dots < np.min(orbit_dots, axis=0)))
    lower = int(np.sum(dots > np.max(orbit_dots, axis=0)))
    report.values["chain_samples"] = samples
    report.check("chain_violations_upper", upper, 0, "<=")
    report.check("chain_violations_lower", lower, 0, "<=")
    return report


def corollary32_check(
    profile: RadialProfile,
    x: Sequence[float],
    y: Sequence[float],
    ctx: WeightContext,
    ev: KernelEvaluator,
    grid: Optional[GridSpec] = None,
    p: float = 2,
    tol_support: float = TOL_SUPPORT,
) -> ProbeReport:
    """|g.x - y| < 1 for all g and f = 0 on B(0, 1) force tau_x f(y) = 0."""
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    report = ProbeReport("cor32", params={"x": x, "y": y})
    if not profile.vanishes_below(1.0):
        raise InvalidArgumentError("profile must vanish on B(0, 1)")
    spread = float(orbit_spread(ctx.group, x, y))
    report.values["orbit_spread"] = spread
    if not report.check("precondition_orbit_spread", spread, 1.0):
        report.values["invalid_input"] = True
        report.notes.append("some g.x lies at distance >= 1 from y")
        return report
    grid = grid or GridSpec.default(x.size)
    norm = lp_norm(radialize(profile, grid), ctx, p)
    value = translate_radial(profile, x, -y, ctx, ev)
    report.values["value"] = value
    report.check("abs_value", abs(value) / norm if norm > 0 else 0.0, tol_support)
    return report
