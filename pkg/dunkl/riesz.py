# path: dunkl/riesz.py
"""
Dunkl Riesz transforms.

Three routes realize R_j on a grid:

- multiplier: F^{-1}(-i xi_j/|xi| Ff);
- truncated:  (c_j/c_k) int_{eps<=|y|<=M} tau_{-y} f(x) kappa(y) dm_k(y),
  kappa(y) = y_j / |y|^(2 gamma + N + 1), applied as the multiplier c_j F(kappa_eps);
- heat:       -(1/sqrt(pi)) int_{eps_t}^{M_t} (i xi_j e^{-t|xi|^2}) dt/sqrt(t),
  integrated in closed form with erf.

The truncated kernel is K(x, y) = -(c_j/c_k) (tau_{-x} kappa_eps)(y), so that
R_j f(x) = int K(x, y) f(y) dm_k(y) and K(y, x) = -K(x, y). It is evaluated
pointwise from the representing measures, independently of the grid transforms.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import erf, gammaln

from .errors import InadmissibleTestFunctionError, InvalidArgumentError
from .grid import GridFunction, GridSpec, integrate_weighted, lp_norm, measure_weights, reflect_samples
from .kernel import (
    KernelEvaluator,
    _contract,
    apply_multiplier,
    c_k_constant,
    forward_transform,
)
from .report import ProbeReport
from .roots import WeightContext, orbit_distance
from .translation import _axis_measure
from .utils import (
    CERT_MAX_ORDER,
    CERT_SHELL_FRACTION,
    CERT_TOL,
    HEAT_EPS,
    HEAT_MAX,
    INNER_REFINE_CELLS,
    INNER_REFINE_FACTOR,
    RIESZ_EPS,
    RIESZ_OUTER_REACH,
    ROESLER_NODES,
    SPECTRUM_CHUNK,
    log,
)


@dataclass
class RieszConfig:
    """Component j (1-based), truncations eps < M, and the constants of R_j."""

    j: int
    eps: float
    M: float
    gamma_k: float
    dimension: int

    def __post_init__(self) -> None:
        if not 1 <= self.j <= self.dimension:
            raise InvalidArgumentError(f"component j={self.j} outside 1..{self.dimension}")
        if self.eps <= 0:
            raise InvalidArgumentError("eps must be positive")
        if self.eps >= self.M:
            raise InvalidArgumentError(f"eps={self.eps} must be smaller than M={self.M}")

    @classmethod
    def for_context(
        cls,
        ctx: WeightContext,
        j: int,
        eps: float = RIESZ_EPS,
        M: Optional[float] = None,
        grid: Optional[GridSpec] = None,
    ) -> "RieszConfig":
        if M is None:
            grid = grid or GridSpec.default(ctx.dimension)
            # reaches every pair of nodes, so nothing inside the box is cut
            M = RIESZ_OUTER_REACH * np.sqrt(grid.dimension) * grid.half_width
        return cls(int(j), float(eps), float(M), ctx.gamma_k, ctx.dimension)

    @property
    def axis(self) -> int:
        return self.j - 1

    @property
    def c_j(self) -> float:
        """2^(gamma + N/2) Gamma(gamma + (N+1)/2) / sqrt(pi)."""
        g, n = self.gamma_k, self.dimension
        return float(np.exp((g + n / 2.0) * np.log(2.0) + gammaln(g + (n + 1) / 2.0) - 0.5 * np.log(np.pi)))

    @property
    def exponent(self) -> float:
        return 2.0 * self.gamma_k + self.dimension + 1.0

    def kappa(self, y: np.ndarray) -> np.ndarray:
        """y_j / |y|^exponent on eps <= |y| <= M, zero elsewhere."""
        r = np.linalg.norm(y, axis=-1)
        keep = (r >= self.eps) & (r <= self.M)
        out = np.zeros(r.shape)
        out[keep] = y[..., self.axis][keep] / r[keep] ** self.exponent
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {"j": self.j, "eps": self.eps, "M": self.M, "c_j": self.c_j, "exponent": self.exponent}


@dataclass
class TestFunction:
    """phi with its spectral decay certificate."""

    __test__ = False

    phi: GridFunction
    orders: List[int]
    norms: List[float]
    shell_fractions: List[float]
    certified: bool
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "orders": self.orders,
            "norms": self.norms,
            "shell_fractions": self.shell_fractions,
            "certified": self.certified,
            "notes": self.notes,
        }


@dataclass
class RieszKernelSample:
    x: np.ndarray
    y: np.ndarray
    value: complex
    route: str = "roesler"


# ----- multiplier route -----
def riesz_symbol(grid: GridSpec, j: int) -> np.ndarray:
    """-i xi_j / |xi| on the frequency nodes; 0 at xi = 0."""
    xi = grid.mesh()
    r = np.linalg.norm(xi, axis=-1)
    out = np.zeros(r.shape, dtype=complex)
    nz = r > 0
    out[nz] = -1j * xi[..., j - 1][nz] / r[nz]
    return out


def riesz_multiplier(f: GridFunction, j: int, ctx: WeightContext, ev: KernelEvaluator) -> GridFunction:
    return apply_multiplier(f, riesz_symbol(f.grid, j), ctx, ev)


def riesz_squared_sum(f: GridFunction, ctx: WeightContext, ev: KernelEvaluator) -> GridFunction:
    """sum_j R_j^2 f, composed on the spectrum."""
    symbol = sum(riesz_symbol(f.grid, j) ** 2 for j in range(1, f.grid.dimension + 1))
    return apply_multiplier(f, symbol, ctx, ev)


# ----- truncated route -----
def _inner_axis(grid: GridSpec) -> np.ndarray:
    half = INNER_REFINE_CELLS * grid.spacing
    count = 2 * INNER_REFINE_CELLS * INNER_REFINE_FACTOR
    h = 2.0 * half / count
    return -half + h * (np.arange(count) + 0.5)


def _outer_axis(grid: GridSpec, M: float) -> np.ndarray:
    """The grid lattice, extended past the box until it covers [-M, M]."""
    extra = max(0, int(np.ceil((M - grid.half_width) / grid.spacing)))
    return -grid.half_width + grid.spacing * (np.arange(-extra, grid.nodes + extra) + 0.5)


def kernel_spectrum(cfg: RieszConfig, grid: GridSpec, ctx: WeightContext, ev: KernelEvaluator) -> np.ndarray:
    """c_j F(kappa_eps) on the frequency grid.

    kappa_eps is integrated on the grid lattice out to radius M, which may lie
    outside the box. The cube of INNER_REFINE_CELLS cells around the origin is
    integrated on a sub-grid INNER_REFINE_FACTOR times finer.
    """
    key = ("riesz_kernel", cfg.j, cfg.eps, cfg.M, grid)
    cached = ev._cache.get(key)
    if cached is not None:
        return cached
    n = grid.dimension
    c = c_k_constant(ctx, grid)
    ax = _outer_axis(grid, cfg.M)
    mesh = np.stack(np.meshgrid(*([ax] * n), indexing="ij"), axis=-1)
    inner_half = INNER_REFINE_CELLS * grid.spacing
    outer = ~np.all(np.abs(mesh) < inner_half, axis=-1)
    a = np.where(outer, cfg.kappa(mesh) * ctx.weight_squared(mesh) * grid.cell_volume, 0.0).astype(complex)
    rest = [ev.axis_kernel(i, -1j * np.outer(grid.axis, ax)) for i in range(1, n)]
    total = np.zeros(grid.shape, dtype=complex)
    for s in range(0, ax.size, SPECTRUM_CHUNK):
        block = a[s:s + SPECTRUM_CHUNK]
        if not np.any(block):
            continue
        first = ev.axis_kernel(0, -1j * np.outer(grid.axis, ax[s:s + SPECTRUM_CHUNK]))
        total = total + _contract(block, [first] + rest)

    sub = _inner_axis(grid)
    sub_mesh = np.stack(np.meshgrid(*([sub] * n), indexing="ij"), axis=-1)
    w = ctx.weight_squared(sub_mesh) * (sub[1] - sub[0]) ** n
    b = (cfg.kappa(sub_mesh) * w).astype(complex)
    sub_mats = [ev.axis_kernel(i, -1j * np.outer(grid.axis, sub)) for i in range(n)]
    total = total + _contract(b, sub_mats)

    out = cfg.c_j * total / c
    ev._cache[key] = out
    log(f"[Riesz] kernel spectrum j={cfg.j} eps={cfg.eps:g} M={cfg.M:g} on {ax.size} nodes per axis", level=10)
    return out


def riesz_truncated(
    f: GridFunction,
    j: int,
    ctx: WeightContext,
    ev: KernelEvaluator,
    eps: float = RIESZ_EPS,
    M: Optional[float] = None,
) -> GridFunction:
    cfg = RieszConfig.for_context(ctx, j, eps, M, f.grid)
    # int tau_{-y} f(x) kappa_eps(y) dm_k(y) has Dunkl transform c_j F(kappa_eps) Ff,
    # so the y-integral of spectral translations collapses to one multiplier
    return apply_multiplier(f, kernel_spectrum(cfg, f.grid, ctx, ev), ctx, ev)


# ----- heat route -----
def heat_symbol(grid: GridSpec, j: int, eps_t: float, M_t: float) -> np.ndarray:
    if not 0 < eps_t < M_t:
        raise InvalidArgumentError(f"heat time window needs 0 < eps_t < M_t, got ({eps_t}, {M_t})")
    r = np.linalg.norm(grid.mesh(), axis=-1)
    return riesz_symbol(grid, j) * (erf(r * np.sqrt(M_t)) - erf(r * np.sqrt(eps_t)))


def riesz_heat(
    f: GridFunction,
    j: int,
    ctx: WeightContext,
    ev: KernelEvaluator,
    eps_t: float = HEAT_EPS,
    M_t: float = HEAT_MAX,
) -> GridFunction:
    return apply_multiplier(f, heat_symbol(f.grid, j, eps_t, M_t), ctx, ev)


# ----- kernel -----
# The kernel is evaluated pointwise through the product formula for the
# translation of an odd-in-y_j function: per axis, tau_{-x} acts through
# A_i = sqrt(x_i^2 + y_i^2 - 2 x_i y_i t_i) with t_i ~ mu_{k_i} on [-1, 1], and
#   (tau_{-x} kappa_eps)(y) = (y_j - x_j) int |A|^(-exponent) 1{eps <= |A| <= M} dmu(t).
KERNEL_CHUNK = 4096


def _kernel_nodes(dimension: int, nodes: Optional[int]) -> int:
    if nodes is not None:
        return nodes
    return ROESLER_NODES if dimension == 1 else 24


def translated_kappa(
    cfg: RieszConfig,
    x: Sequence[float],
    ys: np.ndarray,
    ev: KernelEvaluator,
    nodes: Optional[int] = None,
) -> np.ndarray:
    """(tau_{-x} kappa_eps)(y) for each row y of ys."""
    x = np.asarray(x, dtype=float).reshape(-1)
    ys = np.asarray(ys, dtype=float).reshape(-1, x.size)
    n = x.size
    nodes = _kernel_nodes(n, nodes)
    rules = [_axis_measure(1.0, float(ev.multiplicity[i]), nodes) for i in range(n)]
    weights = np.ones(())
    for t, w in rules:
        weights = np.multiply.outer(weights, w)

    out = np.empty(ys.shape[0])
    for s in range(0, ys.shape[0], KERNEL_CHUNK):
        y = ys[s:s + KERNEL_CHUNK]
        a2 = np.zeros((y.shape[0],) + weights.shape)
        for i, (t, _) in enumerate(rules):
            shape = (1,) + tuple(t.size if d == i else 1 for d in range(n))
            yi = y[:, i].reshape((-1,) + (1,) * n)
            a2 = a2 + x[i] ** 2 + yi**2 - 2.0 * x[i] * yi * t.reshape(shape)
        r = np.sqrt(np.maximum(a2, 0.0))
        keep = (r >= cfg.eps) & (r <= cfg.M)
        power = np.where(keep, np.where(keep, r, 1.0) ** (-cfg.exponent), 0.0)
        integral = np.sum(power * weights, axis=tuple(range(1, n + 1)))
        out[s:s + y.shape[0]] = (y[:, cfg.axis] - x[cfg.axis]) * integral
    return out


def _kernel_scale(cfg: RieszConfig, ctx: WeightContext, grid: GridSpec) -> float:
    return cfg.c_j / c_k_constant(ctx, grid)


def kernel_values(
    x: Sequence[float],
    zs: np.ndarray,
    cfg: RieszConfig,
    grid: GridSpec,
    ctx: WeightContext,
    ev: KernelEvaluator,
    nodes: Optional[int] = None,
) -> np.ndarray:
    """K(x, z) for each row z of zs."""
    return -_kernel_scale(cfg, ctx, grid) * translated_kappa(cfg, x, zs, ev, nodes)


def riesz_kernel(
    x: Sequence[float],
    y: Sequence[float],
    j: int,
    ctx: WeightContext,
    ev: KernelEvaluator,
    eps: float = RIESZ_EPS,
    M: Optional[float] = None,
    grid: Optional[GridSpec] = None,
    nodes: Optional[int] = None,
) -> float:
    """K_{j,eps}(x, y) = -(c_j/c_k) (tau_{-x} kappa_eps)(y)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    grid = grid or GridSpec.default(x.size)
    cfg = RieszConfig.for_context(ctx, j, eps, M, grid)
    return float(kernel_values(x, np.asarray(y, dtype=float).reshape(1, -1), cfg, grid, ctx, ev, nodes)[0])


def kernel_samples(
    pairs: Sequence[Tuple[Sequence[float], Sequence[float]]],
    j: int,
    ctx: WeightContext,
    ev: KernelEvaluator,
    eps: float = RIESZ_EPS,
    M: Optional[float] = None,
    grid: Optional[GridSpec] = None,
) -> List[RieszKernelSample]:
    out = []
    for x, y in pairs:
        v = riesz_kernel(x, y, j, ctx, ev, eps, M, grid)
        out.append(RieszKernelSample(np.asarray(x, dtype=float), np.asarray(y, dtype=float), v))
    return out


def kernel_row(
    x: Sequence[float],
    cfg: RieszConfig,
    grid: GridSpec,
    ctx: WeightContext,
    ev: KernelEvaluator,
    nodes: Optional[int] = None,
) -> GridFunction:
    """y -> K(x, y) on the grid."""
    values = kernel_values(x, grid.points(), cfg, grid, ctx, ev, nodes)
    return GridFunction(grid, values.reshape(grid.shape).astype(complex))


def kernel_column(
    x: Sequence[float],
    cfg: RieszConfig,
    grid: GridSpec,
    ctx: WeightContext,
    ev: KernelEvaluator,
    nodes: Optional[int] = None,
) -> GridFunction:
    """z -> K(z, x) = -K(x, z)."""
    return kernel_row(x, cfg, grid, ctx, ev, nodes) * -1.0


def sample_pairs(grid: GridSpec, count: int = 50, seed: int = 0) -> List[Tuple[np.ndarray, np.ndarray]]:
    """x in the inner quarter of the box, y at distance between 2h and L/16 from x."""
    rng = np.random.default_rng(seed)
    n = grid.dimension
    pairs = []
    for _ in range(count):
        x = rng.uniform(-grid.half_width / 4, grid.half_width / 4, size=n)
        d = rng.normal(size=n)
        d /= np.linalg.norm(d)
        y = x + d * rng.uniform(2 * grid.spacing, grid.half_width / 16)
        pairs.append((x, y))
    return pairs


def _hormander_values(pairs, cfg: RieszConfig, grid: GridSpec, ctx: WeightContext, ev: KernelEvaluator) -> List[float]:
    mesh = grid.mesh()
    w = measure_weights(grid, ctx)
    out = []
    for x, y in pairs:
        sep = 2.0 * float(np.linalg.norm(np.asarray(y) - np.asarray(x)))
        if sep == 0.0:
            out.append(0.0)
            continue
        far = orbit_distance(ctx.group, x, mesh) >= sep
        diff = np.abs(kernel_column(x, cfg, grid, ctx, ev).samples - kernel_column(y, cfg, grid, ctx, ev).samples)
        out.append(float(np.sum((diff * w)[far])))
    return out


def hormander_probe(
    j: int,
    pairs: Sequence[Tuple[Sequence[float], Sequence[float]]],
    grid: GridSpec,
    ctx: WeightContext,
    ev: KernelEvaluator,
    eps: float = RIESZ_EPS,
    M: Optional[float] = None,
    stability: bool = True,
) -> ProbeReport:
    """int_{d_G(x,z) >= 2|y-x|} |K(z,x) - K(z,y)| dm_k(z) per sampled pair."""
    cfg = RieszConfig.for_context(ctx, j, eps, M, grid)
    report = ProbeReport("hormander", params={"riesz": cfg.to_dict(), "grid": grid.to_dict(), "pairs": len(pairs)})
    values = _hormander_values(pairs, cfg, grid, ctx, ev)
    sup = max(values) if values else 0.0
    report.values.update({"per_pair": values, "sup": sup})
    report.check("nonnegative", min(values) if values else 0.0, 0.0, ">=")
    report.check("finite", sup, np.inf)
    if stability and sup > 0:
        fine = grid.refined()
        fine_cfg = RieszConfig(cfg.j, cfg.eps, cfg.M, cfg.gamma_k, cfg.dimension)
        fine_sup = max(_hormander_values(pairs, fine_cfg, fine, ctx, ev))
        change = abs(fine_sup - sup) / sup
        report.values.update({"sup_refined": fine_sup, "grid_doubling_change": change})
        report.check("grid_doubling_change", change, 0.2, "<=")
    log(f"[Riesz] Hormander sup over {len(values)} pairs: {sup:.6g}")
    return report


# ----- test class and weak pairing -----
def test_class_certificate(
    phi: GridFunction,
    ctx: WeightContext,
    ev: KernelEvaluator,
    n_max: int = CERT_MAX_ORDER,
    tol: float = CERT_TOL,
) -> TestFunction:
    """Measure |Ff (1+|xi|)^n|_2 for n <= n_max; certify when the outer shell carries no mass."""
    spec = forward_transform(phi, ctx, ev)
    fg = spec.grid
    mass = np.abs(spec.samples) ** 2 * measure_weights(fg, ctx)
    r = np.linalg.norm(fg.mesh(), axis=-1)
    shell = np.any(np.abs(fg.mesh()) > (1.0 - CERT_SHELL_FRACTION) * fg.half_width, axis=-1)
    orders = list(range(n_max + 1))
    norms, fractions = [], []
    for n in orders:
        weighted = mass * (1.0 + r) ** (2 * n)
        total = float(np.sum(weighted))
        norms.append(float(np.sqrt(total)))
        fractions.append(float(np.sum(weighted[shell]) / total) if total > 0 else 0.0)
    certified = all(np.isfinite(norms)) and all(fr < tol for fr in fractions)
    notes = []
    if norms[0] == 0.0:
        notes.append("zero test function")
    elif not certified:
        worst = next(n for n, fr in zip(orders, fractions) if fr >= tol)
        notes.append(f"spectral mass reaches the frequency ceiling at order {worst}")
    return TestFunction(phi, orders, norms, fractions, bool(certified), notes)


def weak_pairing(f: GridFunction, phi: TestFunction, j: int, ctx: WeightContext, ev: KernelEvaluator) -> complex:
    """<R_j f, phi> := -int f R_j(phi) dm_k."""
    if not phi.certified:
        raise InadmissibleTestFunctionError("test function failed its decay certificate")
    return -integrate_weighted(f * riesz_multiplier(phi.phi, j, ctx, ev), ctx)


def lemma41_check(
    f: GridFunction,
    phi: TestFunction,
    j: int,
    ctx: WeightContext,
    ev: KernelEvaluator,
    eps: float = RIESZ_EPS,
    M: Optional[float] = None,
    threshold: float = 1e-3,
) -> ProbeReport:
    """Weak pairing against the kernel double integral int phi(y) int K(y, x) f(x) dm_k(x) dm_k(y)."""
    grid = f.grid
    cfg = RieszConfig.for_context(ctx, j, eps, M, grid)
    report = ProbeReport("lemma41", params={"riesz": cfg.to_dict(), "grid": grid.to_dict()})
    weak = weak_pairing(f, phi, j, ctx, ev)
    w = measure_weights(grid, ctx)
    mesh = grid.mesh()
    support = np.abs(phi.phi.samples) > 1e-14 * max(phi.phi.max_abs(), 1e-300)
    f_nodes = np.abs(f.samples) > 0
    zs = mesh[f_nodes]
    fw = (f.samples * w)[f_nodes]
    double = 0.0 + 0.0j
    for idx in zip(*np.nonzero(support)):
        row = kernel_values(mesh[idx], zs, cfg, grid, ctx, ev)
        double += phi.phi.samples[idx] * w[idx] * np.sum(row * fw)
    scale = max(abs(weak), abs(double), lp_norm(f, ctx, np.inf) * lp_norm(phi.phi, ctx, 1))
    residual = abs(weak - double) / scale if scale > 0 else 0.0
    report.values.update({"weak_pairing": weak, "double_integral": double, "support_nodes": int(np.sum(support))})
    report.check("relative_residual", residual, threshold)
    return report


# ----- norms and route comparison -----
def lp_operator_norm_estimate(
    j: int,
    p: float,
    family: Dict[str, GridFunction],
    ctx: WeightContext,
    ev: KernelEvaluator,
    threshold: float = 1e-6,
) -> ProbeReport:
    if not 1 < p < np.inf:
        raise InvalidArgumentError(f"L^p operator norms need 1 < p < inf, got {p}")
    report = ProbeReport("lp_norm", params={"j": j, "p": p, "family": sorted(family)})
    ratios: Dict[str, float] = {}
    for name in sorted(family):
        f = family[name]
        nf = lp_norm(f, ctx, p)
        if nf == 0.0:
            report.notes.append(f"{name}: zero function skipped")
            continue
        ratios[name] = lp_norm(riesz_multiplier(f, j, ctx, ev), ctx, p) / nf
    best = max(ratios.values()) if ratios else 0.0
    report.values.update({"per_function": ratios, "max_ratio": best})
    report.check("finite", best, np.inf)
    if p == 2:
        report.check("l2_ratio_excess", best - 1.0, threshold, "<=")
    return report


def _rel_l2(a: GridFunction, b: GridFunction, ctx: WeightContext) -> float:
    nb = lp_norm(b, ctx, 2)
    return lp_norm(a - b, ctx, 2) / nb if nb > 0 else 0.0


def route_comparison(
    f: GridFunction,
    j: int,
    eps_list: Sequence[float],
    ctx: WeightContext,
    ev: KernelEvaluator,
    M: Optional[float] = None,
    M_t: float = HEAT_MAX,
) -> List[Dict[str, float]]:
    """One row per eps: pairwise distances of the multiplier, truncated (eps, M) and heat (eps^2, M_t) routes."""
    ref = riesz_multiplier(f, j, ctx, ev)
    rows = []
    for eps in eps_list:
        cfg = RieszConfig.for_context(ctx, j, eps, M, f.grid)
        trunc = riesz_truncated(f, j, ctx, ev, eps, cfg.M)
        heat = riesz_heat(f, j, ctx, ev, eps * eps, M_t)
        rows.append(
            {
                "eps": float(eps),
                "M": cfg.M,
                "l2_rel_dist_multiplier_truncated": _rel_l2(trunc, ref, ctx),
                "l2_rel_dist_multiplier_heat": _rel_l2(heat, ref, ctx),
                "l2_rel_dist_truncated_heat": _rel_l2(heat, trunc, ctx),
            }
        )
    return rows


def riesz_property_suite(
    f: GridFunction,
    g: GridFunction,
    j: int,
    ctx: WeightContext,
    ev: KernelEvaluator,
    threshold: float = 1e-5,
) -> ProbeReport:
    """sum_j R_j^2 = -I, adjoint antisymmetry, and rank-one parity."""
    report = ProbeReport("riesz_properties", params={"j": j, "grid": f.grid.to_dict()})
    sq = riesz_squared_sum(f, ctx, ev)
    report.check("squares_sum_residual", _rel_l2(sq, f * -1.0, ctx), threshold)

    left = integrate_weighted(riesz_multiplier(f, j, ctx, ev) * g, ctx)
    right = integrate_weighted(f * riesz_multiplier(g, j, ctx, ev), ctx)
    scale = lp_norm(f, ctx, 2) * lp_norm(g, ctx, 2)
    report.check("adjoint_antisymmetry", abs(left + right) / scale if scale > 0 else 0.0, threshold)

    if f.grid.dimension == 1:
        even = f.with_samples(0.5 * (f.samples + reflect_samples(f).samples).real)
        rf = riesz_multiplier(even, 1, ctx, ev)
        odd_part = rf + reflect_samples(rf)
        ref = max(rf.max_abs(), 1e-300)
        report.check("parity_residual", odd_part.max_abs() / ref, 1e-6)
    return report
