# path: dunkl/kernel.py
"""
Dunkl operators, the Dunkl kernel for the trivial, rank-one and Z_2^N
groups, and the Dunkl transform realized as separable weighted quadrature.

The rank-one kernel is the power series sum c_n z^n with
c_n = c_{n-1} / (n + 2k [n odd]).  For purely imaginary arguments beyond
SERIES_RADIUS the alternating series loses all digits to cancellation, so
there the kernel is taken from its Bessel form

    E(iw) = j_{k-1/2}(w) + i w/(2k+1) j_{k+1/2}(w),
    j_nu(w) = Gamma(nu+1) (2/w)^nu J_nu(w),

which the tests cross-check against the series where both are accurate.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.special import gamma, gammaincc, jv

from .errors import (
    DomainTagError,
    DomainTooSmallError,
    InvalidArgumentError,
    SeriesTruncationError,
    UnsupportedGroupError,
)
from .grid import GridFunction, GridSpec, lp_norm, measure_weights
from .report import ProbeReport
from .roots import WeightContext
from .utils import (
    GAUSSIAN_TAIL_GUARD,
    MAX_SERIES_TERMS,
    SERIES_RADIUS,
    TOL_ROOT,
    TOL_SERIES,
    log,
)

GROUP_KINDS = ("trivial", "rank1", "z2_product")


# ----- Dunkl operators -----
@dataclass
class DunklOperatorSpec:
    """T_xi; delta defaults to half a grid cell."""

    direction: np.ndarray
    delta: Optional[float] = None

    def __post_init__(self) -> None:
        self.direction = np.asarray(self.direction, dtype=float).reshape(-1)
        if np.linalg.norm(self.direction) == 0:
            raise InvalidArgumentError("Dunkl operator direction must be nonzero")

    @classmethod
    def coordinate(cls, j: int, dimension: int, delta: Optional[float] = None) -> "DunklOperatorSpec":
        e = np.zeros(dimension)
        e[j] = 1.0
        return cls(e, delta)


def _gradient(f: GridFunction) -> List[np.ndarray]:
    g = np.gradient(f.samples, f.grid.spacing, edge_order=2)
    return [g] if f.grid.dimension == 1 else list(g)


def _reflected_samples(f: GridFunction, matrix: np.ndarray) -> np.ndarray:
    """Samples of x -> f(S x); exact reindexing when S maps nodes to nodes."""
    grid = f.grid
    mesh = grid.mesh()
    image = mesh @ matrix.T
    pos = (image + grid.half_width) / grid.spacing - 0.5
    idx = np.rint(pos)
    if np.all(np.abs(pos - idx) < 1e-8) and np.all((idx >= 0) & (idx < grid.nodes)):
        ii = tuple(idx[..., i].astype(int) for i in range(grid.dimension))
        return f.samples[ii]
    axes = (grid.axis,) * grid.dimension
    re = RegularGridInterpolator(axes, f.samples.real, bounds_error=False, fill_value=0.0)(image)
    im = RegularGridInterpolator(axes, f.samples.imag, bounds_error=False, fill_value=0.0)(image)
    return re + 1j * im


def apply_dunkl_operator(op: DunklOperatorSpec, f: GridFunction, ctx: WeightContext) -> GridFunction:
    """Central differences plus the reflection difference quotients."""
    if op.direction.size != f.grid.dimension:
        raise InvalidArgumentError("direction and grid dimension differ")
    delta = op.delta if op.delta is not None else f.grid.spacing / 2.0
    grads = _gradient(f)
    out = sum(xi * g for xi, g in zip(op.direction, grads))
    mesh = f.grid.mesh()
    rs = ctx.root_system
    for alpha, k in zip(rs.positive_roots, rs.positive_multiplicity):
        a_xi = float(alpha @ op.direction)
        if k == 0 or a_xi == 0:
            continue
        a_x = mesh @ alpha
        nn = float(alpha @ alpha)
        reflected = _reflected_samples(f, np.eye(alpha.size) - 2.0 * np.outer(alpha, alpha) / nn)
        # removable singularity: (f(x) - f(sigma x)) / <alpha,x> -> 2 d_alpha f / |alpha|^2
        limit = 2.0 * sum(a * g for a, g in zip(alpha, grads)) / nn
        near = np.abs(a_x) < delta
        quotient = np.where(near, limit, (f.samples - reflected) / np.where(near, 1.0, a_x))
        out = out + k * a_xi * quotient
    return f.with_samples(out)


def dunkl_gradient(f: GridFunction, ctx: WeightContext) -> List[GridFunction]:
    """(T_1 f, ..., T_N f)."""
    n = f.grid.dimension
    return [apply_dunkl_operator(DunklOperatorSpec.coordinate(j, n), f, ctx) for j in range(n)]


# ----- rank-one kernel -----
def series_coefficients(k: float, count: int) -> np.ndarray:
    c = np.ones(count)
    for n in range(1, count):
        c[n] = c[n - 1] / (n + 2.0 * k * (n % 2))
    return c


def rank1_kernel_series(
    k: float,
    z: np.ndarray,
    tol: float = TOL_SERIES,
    max_terms: int = MAX_SERIES_TERMS,
) -> np.ndarray:
    """sum c_n z^n, stopped once the geometric remainder bound drops below tol."""
    z = np.asarray(z, dtype=complex)
    total = np.ones_like(z)
    term = np.ones_like(z)
    scale = np.ones(z.shape)
    az = np.abs(z)
    for n in range(1, max_terms):
        term = term * z / (n + 2.0 * k * (n % 2))
        total = total + term
        scale = scale + np.abs(term)
        q = az / (n + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = np.where(q < 1, np.abs(term) * q / (1.0 - q), np.inf)
        if np.all(bound <= tol * scale):
            return total
    raise SeriesTruncationError(
        f"kernel series did not reach tol={tol} within {max_terms} terms (max |z| = {float(np.max(az)):.3g})"
    )


def _normalized_bessel(nu: float, a: np.ndarray) -> np.ndarray:
    return gamma(nu + 1.0) * (2.0 / a) ** nu * jv(nu, a)


def rank1_kernel_imaginary(k: float, w: np.ndarray) -> np.ndarray:
    """E_k(i w) for real w != 0 from the Bessel form."""
    w = np.asarray(w, dtype=float)
    a = np.abs(w)
    return _normalized_bessel(k - 0.5, a) + 1j * w / (2.0 * k + 1.0) * _normalized_bessel(k + 0.5, a)


def rank1_kernel(
    k: float,
    z: np.ndarray,
    tol: float = TOL_SERIES,
    max_terms: int = MAX_SERIES_TERMS,
    series_radius: float = SERIES_RADIUS,
) -> np.ndarray:
    """E_k(z) for the rank-one group, z = x*y (complex allowed)."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape, dtype=complex)
    far = (z.real == 0) & (np.abs(z.imag) > series_radius)
    if np.any(far):
        out[far] = rank1_kernel_imaginary(k, z.imag[far])
    near = ~far
    if np.any(near):
        out[near] = rank1_kernel_series(k, z[near], tol, max_terms)
    return out


# ----- evaluator -----
def axis_multiplicities(ctx: WeightContext) -> Tuple[str, np.ndarray]:
    """Classify the active roots; only coordinate roots admit kernel evaluation."""
    n = ctx.dimension
    ks = np.zeros(n)
    rs = ctx.root_system
    for alpha, k in zip(rs.positive_roots, rs.positive_multiplicity):
        if k == 0:
            continue
        nz = np.flatnonzero(np.abs(alpha) > TOL_ROOT)
        if nz.size != 1:
            raise UnsupportedGroupError(
                f"kernel evaluation needs coordinate roots; {alpha.tolist()} with k={k} is not one"
            )
        ks[nz[0]] += k
    if not np.any(ks > 0):
        return "trivial", ks
    return ("rank1" if n == 1 else "z2_product"), ks


@dataclass
class KernelEvaluator:
    kind: str
    multiplicity: np.ndarray
    tol_series: float = TOL_SERIES
    max_terms: int = MAX_SERIES_TERMS
    series_radius: float = SERIES_RADIUS
    _cache: Dict[Any, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in GROUP_KINDS:
            raise UnsupportedGroupError(f"no kernel evaluation for group kind {self.kind!r}")
        self.multiplicity = np.asarray(self.multiplicity, dtype=float).reshape(-1)

    @classmethod
    def for_context(cls, ctx: WeightContext, **kwargs: Any) -> "KernelEvaluator":
        kind, ks = axis_multiplicities(ctx)
        return cls(kind, ks, **kwargs)

    @property
    def dimension(self) -> int:
        return int(self.multiplicity.size)

    def axis_kernel(self, axis: int, z: np.ndarray) -> np.ndarray:
        k = float(self.multiplicity[axis])
        z = np.asarray(z, dtype=complex)
        if k == 0:
            return np.exp(z)
        return rank1_kernel(k, z, self.tol_series, self.max_terms, self.series_radius)

    def evaluate(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """E(x, y); y may be complex (E(x, i eta) for y = 1j*eta); x may be a stack."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y)
        if self.kind == "trivial":
            return np.exp(np.sum(x * y, axis=-1))
        out = np.ones(np.broadcast_shapes(x.shape, y.shape)[:-1], dtype=complex)
        for i in range(self.dimension):
            out = out * self.axis_kernel(i, x[..., i] * y[..., i])
        return out

    def axis_matrix(self, axis: int, rows: GridSpec, cols: GridSpec, sign: int) -> np.ndarray:
        """E_i(i*sign*rows_a*cols_b) for the one-axis nodes, cached per grid pair."""
        key = (axis, rows, cols, sign)
        m = self._cache.get(key)
        if m is None:
            z = 1j * sign * np.outer(rows.axis, cols.axis)
            m = self.axis_kernel(axis, z)
            self._cache[key] = m
            log(f"[Kernel] built {m.shape[0]}x{m.shape[1]} matrix for axis {axis}", level=10)
        return m


def dunkl_kernel(ev: KernelEvaluator, x: Sequence[float], y: Sequence[complex]) -> complex:
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y).reshape(-1)
    return complex(ev.evaluate(x, y))


def verify_kernel_system(
    ev: KernelEvaluator,
    ctx: WeightContext,
    y: Sequence[float],
    grid: GridSpec,
    threshold: float = 1e-4,
) -> ProbeReport:
    """Residual of T_xi E(., y) = <xi, y> E(., y) for every coordinate direction."""
    y = np.asarray(y, dtype=float).reshape(-1)
    e = GridFunction(grid, ev.evaluate(grid.mesh(), y))
    scale = e.max_abs()
    worst = 0.0
    for j in range(grid.dimension):
        te = apply_dunkl_operator(DunklOperatorSpec.coordinate(j, grid.dimension), e, ctx)
        worst = max(worst, float(np.max(np.abs(te.samples - y[j] * e.samples))) / scale)
    report = ProbeReport("kernel_system", params={"y": y, "grid": grid.to_dict(), "kind": ev.kind})
    report.check("residual", worst, threshold)
    report.check("normalization", abs(dunkl_kernel(ev, np.zeros_like(y), y) - 1.0), 1e-15, "<=")
    return report


# ----- transform -----
def c_k_constant(ctx: WeightContext, grid: GridSpec) -> float:
    """c_k = int exp(-|x|^2/2) dm_k on the grid, cached per grid."""
    cached = ctx._c_k_cache.get(grid)
    if cached is not None:
        return cached
    tail = float(gammaincc(ctx.homogeneous_dimension / 2.0, grid.half_width**2 / 2.0))
    if tail >= GAUSSIAN_TAIL_GUARD:
        raise DomainTooSmallError(
            f"Gaussian tail mass {tail:.2e} outside the box exceeds {GAUSSIAN_TAIL_GUARD:.0e}; widen grid.L"
        )
    r2 = np.sum(grid.mesh() ** 2, axis=-1)
    value = float(np.sum(np.exp(-r2 / 2.0) * measure_weights(grid, ctx)))
    ctx._c_k_cache[grid] = value
    return value


@dataclass
class Spectrum:
    """Frequency-tagged samples plus the c_k that produced them."""

    function: GridFunction
    c_k: float

    def __post_init__(self) -> None:
        if self.function.domain != "frequency":
            raise DomainTagError("a spectrum holds frequency-domain samples")

    @property
    def grid(self) -> GridSpec:
        return self.function.grid

    @property
    def samples(self) -> np.ndarray:
        return self.function.samples

    def with_samples(self, samples: np.ndarray) -> "Spectrum":
        return Spectrum(self.function.with_samples(samples), self.c_k)

    def metadata(self) -> Dict[str, Any]:
        return {"domain": "frequency", "c_k": self.c_k, "grid": self.grid.to_dict()}


def _contract(a: np.ndarray, mats: List[np.ndarray]) -> np.ndarray:
    for i, m in enumerate(mats):
        a = np.moveaxis(np.tensordot(m, a, axes=([1], [i])), 0, i)
    return a


def forward_transform(
    f: GridFunction,
    ctx: WeightContext,
    ev: KernelEvaluator,
    freq_grid: Optional[GridSpec] = None,
) -> Spectrum:
    """Ff(xi) = (1/c_k) int f(x) E(-i xi, x) dm_k(x)."""
    if f.domain != "space":
        raise DomainTagError("forward_transform expects a space-domain function")
    fg = freq_grid or f.grid
    c = c_k_constant(ctx, f.grid)
    a = f.samples * measure_weights(f.grid, ctx)
    mats = [ev.axis_matrix(i, fg, f.grid, -1) for i in range(f.grid.dimension)]
    return Spectrum(GridFunction(fg, _contract(a, mats) / c, "frequency"), c)


def inverse_transform(
    spec: Spectrum,
    ctx: WeightContext,
    ev: KernelEvaluator,
    space_grid: Optional[GridSpec] = None,
) -> GridFunction:
    """F^{-1} g (x) = (F g)(-x)."""
    sg = space_grid or spec.grid
    c = c_k_constant(ctx, sg)
    if abs(c - spec.c_k) > 1e-12 * c:
        raise InvalidArgumentError(f"spectrum was produced with c_k={spec.c_k}, space grid gives {c}")
    a = spec.samples * measure_weights(spec.grid, ctx)
    mats = [ev.axis_matrix(i, sg, spec.grid, +1) for i in range(sg.dimension)]
    return GridFunction(sg, _contract(a, mats) / c, "space")


def apply_multiplier(
    f: GridFunction,
    symbol: np.ndarray,
    ctx: WeightContext,
    ev: KernelEvaluator,
) -> GridFunction:
    """F^{-1}(symbol * Ff) on the grid of f."""
    spec = forward_transform(f, ctx, ev)
    return inverse_transform(spec.with_samples(spec.samples * symbol), ctx, ev, f.grid)


def plancherel_check(
    f: GridFunction,
    ctx: WeightContext,
    ev: KernelEvaluator,
    threshold: float = 1e-6,
) -> ProbeReport:
    spec = forward_transform(f, ctx, ev)
    nf = lp_norm(f, ctx, 2)
    nF = lp_norm(spec.function, ctx, 2)
    report = ProbeReport("plancherel", params={"grid": f.grid.to_dict(), "kind": ev.kind})
    report.values.update({"norm_f": nf, "norm_Ff": nF})
    if nf == 0.0 and nF == 0.0:
        report.values["ratio"] = None
        report.notes.append("zero function: both norms vanish")
        report.check("norm_Ff", nF, 0.0, "<=")
        return report
    ratio = nF / nf
    report.values["ratio"] = ratio
    report.check("ratio_deviation", abs(ratio - 1.0), threshold)
    return report
