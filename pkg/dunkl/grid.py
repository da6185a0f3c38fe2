# path: dunkl/grid.py
"""
Midpoint tensor grids, sampled functions and the weighted quadrature
that realizes integrals against dm_k.
"""
import csv
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Tuple

import numpy as np

from .errors import DomainTagError, InvalidArgumentError
from .roots import OrbitRegion, WeightContext, region_mask
from .utils import (
    PLANE_HALF_WIDTH,
    PLANE_NODES,
    RANK1_HALF_WIDTH,
    RANK1_NODES,
    TAIL_FRACTION,
)

DOMAINS = ("space", "frequency")


@dataclass(frozen=True)
class GridSpec:
    """n midpoint nodes per axis on [-L, L]^N; no node lies on a coordinate hyperplane."""

    dimension: int
    half_width: float
    nodes: int

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise InvalidArgumentError("grid dimension must be positive")
        if self.half_width <= 0:
            raise InvalidArgumentError("grid half-width must be positive")
        if self.nodes < 2 or self.nodes % 2:
            raise InvalidArgumentError("nodes per axis must be a positive even integer")

    @classmethod
    def default(cls, dimension: int) -> "GridSpec":
        if dimension == 1:
            return cls(1, RANK1_HALF_WIDTH, RANK1_NODES)
        return cls(dimension, PLANE_HALF_WIDTH, PLANE_NODES)

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.nodes

    @property
    def axis(self) -> np.ndarray:
        return -self.half_width + self.spacing * (np.arange(self.nodes) + 0.5)

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.nodes,) * self.dimension

    @property
    def size(self) -> int:
        return self.nodes**self.dimension

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dimension

    def mesh(self) -> np.ndarray:
        """Node coordinates, shape grid.shape + (N,)."""
        ax = self.axis
        return np.stack(np.meshgrid(*([ax] * self.dimension), indexing="ij"), axis=-1)

    def points(self) -> np.ndarray:
        return self.mesh().reshape(-1, self.dimension)

    def radii(self) -> np.ndarray:
        return np.linalg.norm(self.mesh(), axis=-1)

    def refined(self) -> "GridSpec":
        """Same box, half the spacing."""
        return GridSpec(self.dimension, self.half_width, 2 * self.nodes)

    def coarsened(self) -> "GridSpec":
        return GridSpec(self.dimension, self.half_width, max(2, self.nodes // 2 + (self.nodes // 2) % 2))

    def to_dict(self) -> dict:
        return {"N": self.dimension, "L": self.half_width, "n": self.nodes}


@dataclass
class GridFunction:
    """Complex samples on a grid, tagged with the domain they live in."""

    grid: GridSpec
    samples: np.ndarray
    domain: str = "space"

    def __post_init__(self) -> None:
        if self.domain not in DOMAINS:
            raise DomainTagError(f"unknown domain tag: {self.domain}")
        s = np.asarray(self.samples, dtype=complex)
        if s.size != self.grid.size:
            raise InvalidArgumentError(f"{s.size} samples for a grid of {self.grid.size} nodes")
        s = s.reshape(self.grid.shape)
        if not np.all(np.isfinite(s)):
            raise InvalidArgumentError("samples must be finite")
        self.samples = s

    def with_samples(self, samples: np.ndarray) -> "GridFunction":
        return GridFunction(self.grid, samples, self.domain)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        _same_domain(self, other)
        return self.with_samples(self.samples + other.samples)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        _same_domain(self, other)
        return self.with_samples(self.samples - other.samples)

    def __mul__(self, other) -> "GridFunction":
        if isinstance(other, GridFunction):
            _same_domain(self, other)
            return self.with_samples(self.samples * other.samples)
        return self.with_samples(self.samples * other)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.samples)))

    def rows(self) -> Iterator[list]:
        """Row-major CSV rows: x_1..x_N, re, im."""
        pts = self.grid.points()
        flat = self.samples.reshape(-1)
        for p, v in zip(pts, flat):
            yield [repr(float(c)) for c in p] + [repr(float(v.real)), repr(float(v.imag))]

    def header(self) -> list:
        return [f"x_{i + 1}" for i in range(self.grid.dimension)] + ["re", "im"]

    def write_csv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(self.header())
            w.writerows(self.rows())


def _same_domain(a: GridFunction, b: GridFunction) -> None:
    if a.domain != b.domain:
        raise DomainTagError(f"cannot combine {a.domain} and {b.domain} samples")
    if a.grid != b.grid:
        raise InvalidArgumentError("grid mismatch")


def sample(grid: GridSpec, func: Callable[[np.ndarray], np.ndarray], domain: str = "space") -> GridFunction:
    """Evaluate func on the node mesh; func receives points of shape grid.shape + (N,)."""
    return GridFunction(grid, func(grid.mesh()), domain)


def zeros(grid: GridSpec, domain: str = "space") -> GridFunction:
    return GridFunction(grid, np.zeros(grid.shape, dtype=complex), domain)


def reflect_samples(f: GridFunction) -> GridFunction:
    """y -> f(-y); exact on a symmetric midpoint grid."""
    return f.with_samples(np.flip(f.samples, axis=tuple(range(f.grid.dimension))))


# ----- quadrature -----
def measure_weights(grid: GridSpec, ctx: WeightContext) -> np.ndarray:
    """h_k^2(node) * cell volume, shaped like the grid."""
    return ctx.weight_squared(grid.mesh()) * grid.cell_volume


def integrate_weighted(f: GridFunction, ctx: WeightContext) -> complex:
    if f.domain != "space":
        raise DomainTagError("integrate_weighted expects a space-domain function")
    return complex(np.sum(f.samples * measure_weights(f.grid, ctx)))


def lp_norm(f: GridFunction, ctx: WeightContext, p: float) -> float:
    if p < 1:
        raise InvalidArgumentError(f"L^p norms need p >= 1, got {p}")
    a = np.abs(f.samples)
    if np.isinf(p):
        return float(np.max(a))
    return float(np.sum(a**p * measure_weights(f.grid, ctx)) ** (1.0 / p))


def tail_mass(f: GridFunction, ctx: WeightContext, fraction: float = TAIL_FRACTION) -> float:
    """L1 share of f carried outside the cube of half-width fraction*L."""
    total = lp_norm(f, ctx, 1)
    if total == 0.0:
        return 0.0
    inner = np.all(np.abs(f.grid.mesh()) <= fraction * f.grid.half_width, axis=-1)
    outside = np.sum(np.abs(f.samples[~inner]) * measure_weights(f.grid, ctx)[~inner])
    return float(outside / total)


# ----- windows -----
def window(f: GridFunction, region: OrbitRegion, inside: bool = True) -> GridFunction:
    """Zero the samples outside (or inside) the region."""
    mask = region_mask(region, f.grid.mesh())
    if not inside:
        mask = ~mask
    return f.with_samples(np.where(mask, f.samples, 0.0))


def taper(f: GridFunction, inner: float, outer: float) -> GridFunction:
    """Multiply by a per-axis raised-cosine window: 1 on |x_i| <= inner, 0 beyond outer."""
    if not 0 < inner < outer:
        raise InvalidArgumentError("taper needs 0 < inner < outer")
    ax = np.abs(f.grid.axis)
    t = np.clip((ax - inner) / (outer - inner), 0.0, 1.0)
    w1 = 0.5 * (1.0 + np.cos(np.pi * t))
    w = np.ones(f.grid.shape)
    for i in range(f.grid.dimension):
        shape = [1] * f.grid.dimension
        shape[i] = f.grid.nodes
        w = w * w1.reshape(shape)
    return f.with_samples(f.samples * w)


# ----- radial profiles -----
@dataclass
class RadialProfile:
    """Samples of a radial profile on [0, R], linearly interpolated, 0 beyond R."""

    max_radius: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples)
        if self.samples.ndim != 1 or self.samples.size < 2:
            raise InvalidArgumentError("a radial profile needs at least two samples")
        if self.max_radius <= 0:
            raise InvalidArgumentError("profile radius must be positive")

    @classmethod
    def from_function(cls, func: Callable[[np.ndarray], np.ndarray], max_radius: float, count: int = 4097) -> "RadialProfile":
        r = np.linspace(0.0, max_radius, count)
        return cls(max_radius, func(r))

    @property
    def radii(self) -> np.ndarray:
        return np.linspace(0.0, self.max_radius, self.samples.size)

    def __call__(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        rs = self.radii
        if np.iscomplexobj(self.samples):
            re = np.interp(r, rs, self.samples.real, right=0.0)
            im = np.interp(r, rs, self.samples.imag, right=0.0)
            return re + 1j * im
        return np.interp(r, rs, self.samples, right=0.0)

    def vanishes_below(self, r: float) -> bool:
        return bool(np.all(self.samples[self.radii <= r] == 0))


def radialize(profile: RadialProfile, grid: GridSpec) -> GridFunction:
    return GridFunction(grid, profile(grid.radii()), "space")


def profile_of(f: GridFunction, spacing: Optional[float] = None) -> RadialProfile:
    """Radial average of f on bins of width spacing (default half a cell)."""
    dr = spacing or f.grid.spacing / 2.0
    rho = f.grid.radii().reshape(-1)
    vals = f.samples.reshape(-1)
    m = int(np.ceil(np.max(rho) / dr)) + 2
    b = np.rint(rho / dr).astype(int)
    count = np.bincount(b, minlength=m)
    re = np.bincount(b, weights=vals.real, minlength=m)
    im = np.bincount(b, weights=vals.imag, minlength=m)
    filled = count > 0
    r_all = dr * np.arange(m)
    mean = (re[filled] + 1j * im[filled]) / count[filled]
    prof = np.interp(r_all, r_all[filled], mean.real) + 1j * np.interp(r_all, r_all[filled], mean.imag)
    if np.all(prof.imag == 0):
        prof = prof.real
    return RadialProfile(dr * (m - 1), prof)
