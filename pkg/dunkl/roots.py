# path: dunkl/roots.py
"""
Root systems, reflection groups, orbit geometry and the weighted measure
dm_k = h_k^2 dx.

Group elements are dense orthogonal matrices compared entrywise with
TOL_GROUP; every operation here is a pure function of its inputs.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .errors import InvalidArgumentError, NotAFiniteGroupError, ResolutionError
from .report import ProbeReport
from .utils import MAX_GROUP_ORDER, MIN_BALL_NODES, TOL_GROUP, TOL_ROOT, log

ArrayLike = Union[Sequence[float], np.ndarray, float]

PRESETS = ("rank1", "z2_product", "b2", "a2", "custom")


# ----- root systems -----
@dataclass
class RootSystemSpec:
    """Finite root list with a parallel multiplicity array."""

    dimension: int
    roots: np.ndarray
    multiplicity: np.ndarray
    preset: str = "custom"

    def __post_init__(self) -> None:
        self.roots = np.atleast_2d(np.asarray(self.roots, dtype=float))
        if self.roots.size == 0:
            self.roots = np.zeros((0, self.dimension))
        self.multiplicity = np.asarray(self.multiplicity, dtype=float).reshape(-1)
        if self.dimension < 1:
            raise InvalidArgumentError("dimension must be a positive integer")
        if self.roots.shape[1] != self.dimension:
            raise InvalidArgumentError(
                f"roots have {self.roots.shape[1]} coordinates, expected {self.dimension}"
            )
        if self.multiplicity.shape[0] != self.roots.shape[0]:
            raise InvalidArgumentError("multiplicity must be parallel to roots")
        if np.any(self.multiplicity < 0):
            raise InvalidArgumentError("multiplicity must be nonnegative")

    @property
    def positive_mask(self) -> np.ndarray:
        """Lexicographic positivity: first nonzero coordinate is positive."""
        mask = np.zeros(len(self.roots), dtype=bool)
        for i, alpha in enumerate(self.roots):
            nz = np.flatnonzero(np.abs(alpha) > TOL_ROOT)
            mask[i] = nz.size > 0 and alpha[nz[0]] > 0
        return mask

    @property
    def positive_roots(self) -> np.ndarray:
        return self.roots[self.positive_mask]

    @property
    def positive_multiplicity(self) -> np.ndarray:
        return self.multiplicity[self.positive_mask]

    def multiplicity_of(self, alpha: ArrayLike) -> float:
        alpha = np.asarray(alpha, dtype=float)
        d = np.linalg.norm(self.roots - alpha, axis=1)
        i = int(np.argmin(d))
        if d[i] > TOL_ROOT * max(1.0, float(np.linalg.norm(alpha))):
            raise InvalidArgumentError(f"{alpha.tolist()} is not a root")
        return float(self.multiplicity[i])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "preset": self.preset,
            "dimension": self.dimension,
            "roots": self.roots.tolist(),
            "k": self.multiplicity.tolist(),
        }


def _as_k_list(k: ArrayLike, count: int, preset: str) -> List[float]:
    values = [float(v) for v in np.atleast_1d(np.asarray(k, dtype=float))]
    if len(values) == 1:
        return values * count
    if len(values) != count:
        raise InvalidArgumentError(f"{preset} expects 1 or {count} multiplicity values, got {len(values)}")
    return values


def catalog_root_system(
    preset: str,
    k: ArrayLike = 0.0,
    dimension: Optional[int] = None,
    roots: Optional[ArrayLike] = None,
) -> RootSystemSpec:
    """Build one of the catalog presets (or a custom root list)."""
    if preset == "rank1":
        (k1,) = _as_k_list(k, 1, preset)
        return RootSystemSpec(1, [[1.0], [-1.0]], [k1, k1], preset)

    if preset == "z2_product":
        n = int(dimension or 2)
        ks = _as_k_list(k, n, preset)
        eye = np.eye(n)
        rs = np.concatenate([eye, -eye])
        return RootSystemSpec(n, rs, ks + ks, preset)

    if preset == "b2":
        k_short, k_long = _as_k_list(k, 2, preset)
        short = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]
        long_ = [[1.0, 1.0], [1.0, -1.0], [-1.0, -1.0], [-1.0, 1.0]]
        return RootSystemSpec(2, short + long_, [k_short] * 4 + [k_long] * 4, preset)

    if preset == "a2":
        (k1,) = _as_k_list(k, 1, preset)
        angles = np.arange(6) * np.pi / 3.0
        rs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        rs[np.abs(rs) < 1e-15] = 0.0
        return RootSystemSpec(2, rs, [k1] * 6, preset)

    if preset == "custom":
        if roots is None:
            raise InvalidArgumentError("custom preset needs an explicit root list")
        rs = np.atleast_2d(np.asarray(roots, dtype=float))
        ks = _as_k_list(k, rs.shape[0], preset)
        return RootSystemSpec(int(dimension or rs.shape[1]), rs, ks, preset)

    raise InvalidArgumentError(f"unknown root-system preset: {preset}")


def active_root_system(spec: RootSystemSpec) -> RootSystemSpec:
    """Restriction to the roots with k(alpha) > 0."""
    keep = spec.multiplicity > 0
    return RootSystemSpec(spec.dimension, spec.roots[keep], spec.multiplicity[keep], spec.preset)


# ----- reflections -----
def reflect(alpha: ArrayLike, x: ArrayLike) -> np.ndarray:
    """sigma_alpha(x) = x - 2<x,alpha>/|alpha|^2 alpha (x may be a stack of points)."""
    alpha = np.asarray(alpha, dtype=float)
    x = np.asarray(x, dtype=float)
    nn = float(alpha @ alpha)
    if nn <= TOL_ROOT**2:
        raise InvalidArgumentError("cannot reflect in the zero vector")
    return x - (2.0 * (x @ alpha) / nn)[..., None] * alpha


def reflection_matrix(alpha: ArrayLike) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float)
    nn = float(alpha @ alpha)
    if nn <= TOL_ROOT**2:
        raise InvalidArgumentError("cannot reflect in the zero vector")
    return np.eye(alpha.size) - 2.0 * np.outer(alpha, alpha) / nn


@dataclass
class ValidationReport:
    violations: List[Dict[str, str]] = field(default_factory=list)

    def add(self, kind: str, detail: str) -> None:
        self.violations.append({"kind": kind, "detail": detail})

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> List[str]:
        return sorted({v["kind"] for v in self.violations})

    def to_dict(self) -> Dict[str, Any]:
        return {"status": "ok" if self.ok else "error", "violations": list(self.violations)}


def _find_root(roots: np.ndarray, v: np.ndarray, tol: float) -> Optional[int]:
    if roots.shape[0] == 0:
        return None
    d = np.max(np.abs(roots - v), axis=1)
    i = int(np.argmin(d))
    return i if d[i] <= tol * max(1.0, float(np.max(np.abs(v)))) else None


def validate_root_system(spec: RootSystemSpec, tol: float = TOL_ROOT) -> ValidationReport:
    """List zero roots, closure violations and non-invariant multiplicities."""
    report = ValidationReport()
    norms = np.linalg.norm(spec.roots, axis=1)
    for i in np.flatnonzero(norms <= tol):
        report.add("zero_root", f"root #{i} is the zero vector")

    nonzero = np.flatnonzero(norms > tol)
    for i in nonzero:
        alpha = spec.roots[i]
        for j in nonzero:
            image = reflect(alpha, spec.roots[j])
            idx = _find_root(spec.roots, image, tol)
            if idx is None:
                report.add(
                    "closure",
                    f"sigma_{alpha.tolist()}({spec.roots[j].tolist()}) = {np.round(image, 12).tolist()} is not a root",
                )
            elif abs(spec.multiplicity[idx] - spec.multiplicity[j]) > tol:
                report.add(
                    "multiplicity_invariance",
                    f"k({spec.roots[j].tolist()}) = {spec.multiplicity[j]} but its image "
                    f"{spec.roots[idx].tolist()} has k = {spec.multiplicity[idx]}",
                )
    return report


# ----- groups -----
@dataclass
class ReflectionGroup:
    """Finite orthogonal group, elements sorted by their entries."""

    elements: np.ndarray
    generator_index: Dict[int, int] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.elements.shape[1])

    def act(self, points: ArrayLike) -> np.ndarray:
        """Stack g.p for every element: shape (|G|, ..., N)."""
        p = np.asarray(points, dtype=float)
        return np.einsum("gij,...j->g...i", self.elements, p)

    def contains(self, m: np.ndarray, tol: float = TOL_GROUP) -> bool:
        return bool(np.any(np.max(np.abs(self.elements - m), axis=(1, 2)) <= tol))


def trivial_group(dimension: int) -> ReflectionGroup:
    return ReflectionGroup(np.eye(dimension)[None, :, :], {})


def _sort_key(m: np.ndarray) -> tuple:
    return tuple((np.round(m.ravel(), 9) + 0.0).tolist())


def generate_group(
    spec: RootSystemSpec,
    max_order: int = MAX_GROUP_ORDER,
    tol: float = TOL_GROUP,
) -> ReflectionGroup:
    """Close the reflections of the roots under products."""
    n = spec.dimension
    gens: List[np.ndarray] = []
    for alpha in spec.roots:
        if np.linalg.norm(alpha) <= TOL_ROOT:
            continue
        s = reflection_matrix(alpha)
        if not any(np.max(np.abs(s - g)) <= tol for g in gens):
            gens.append(s)

    elements = [np.eye(n)]
    frontier = [np.eye(n)]
    while frontier:
        fresh = []
        for g in frontier:
            for s in gens:
                h = s @ g
                stack = np.asarray(elements)
                if np.any(np.max(np.abs(stack - h), axis=(1, 2)) <= tol):
                    continue
                elements.append(h)
                fresh.append(h)
                if len(elements) > max_order:
                    raise NotAFiniteGroupError(
                        f"reflections generate more than {max_order} elements; not a finite group"
                    )
        frontier = fresh

    elements.sort(key=_sort_key)
    stack = np.asarray(elements)
    for m in stack:
        if np.max(np.abs(m.T @ m - np.eye(n))) > 1e3 * tol:
            raise NotAFiniteGroupError("generated element is not orthogonal")

    index: Dict[int, int] = {}
    for i, alpha in enumerate(spec.roots):
        if np.linalg.norm(alpha) <= TOL_ROOT:
            continue
        s = reflection_matrix(alpha)
        index[i] = int(np.argmin(np.max(np.abs(stack - s), axis=(1, 2))))
    log(f"[Group] {spec.preset}: order {len(elements)}", level=10)
    return ReflectionGroup(stack, index)


# ----- orbits -----
def orbit(group: ReflectionGroup, x: ArrayLike, tol: float = TOL_GROUP) -> np.ndarray:
    """Distinct points g.x, sorted lexicographically."""
    pts = group.act(np.asarray(x, dtype=float))
    unique: List[np.ndarray] = []
    for p in pts:
        if not any(np.max(np.abs(p - q)) <= tol * max(1.0, float(np.max(np.abs(p)))) for q in unique):
            unique.append(p + 0.0)
    unique.sort(key=lambda p: tuple(np.round(p, 9).tolist()))
    return np.asarray(unique)


def orbit_distance(group: ReflectionGroup, x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """d_G(x, y) = min_g |g.y - x|; y may be a stack of points."""
    x = np.asarray(x, dtype=float)
    gy = group.act(y)
    return np.min(np.linalg.norm(gy - x, axis=-1), axis=0)


def orbit_spread(group: ReflectionGroup, x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """max_g |g.x - y|; y may be a stack of points."""
    y = np.asarray(y, dtype=float)
    gx = group.act(np.asarray(x, dtype=float))
    gx = gx.reshape((gx.shape[0],) + (1,) * (y.ndim - 1) + (gx.shape[-1],))
    return np.max(np.linalg.norm(y - gx, axis=-1), axis=0)


# ----- weights -----
@dataclass
class WeightContext:
    """Root system plus its group, weight h_k and derived dimensions."""

    root_system: RootSystemSpec
    group: Optional[ReflectionGroup] = None
    _active_group: Optional[ReflectionGroup] = field(default=None, repr=False)
    _c_k_cache: Dict[Any, float] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.group is None:
            self.group = generate_group(self.root_system)

    @classmethod
    def from_preset(cls, preset: str, k: ArrayLike = 0.0, **kwargs: Any) -> "WeightContext":
        return cls(catalog_root_system(preset, k, **kwargs))

    @property
    def dimension(self) -> int:
        return self.root_system.dimension

    @property
    def gamma_k(self) -> float:
        return float(np.sum(self.root_system.positive_multiplicity))

    @property
    def homogeneous_dimension(self) -> float:
        return self.dimension + 2.0 * self.gamma_k

    @property
    def active_group(self) -> ReflectionGroup:
        """Group of the roots with k > 0 (trivial at k = 0)."""
        if self._active_group is None:
            active = active_root_system(self.root_system)
            if active.roots.shape[0] == 0:
                self._active_group = trivial_group(self.dimension)
            else:
                self._active_group = generate_group(active)
        return self._active_group

    def weight(self, points: ArrayLike) -> np.ndarray:
        """h_k at a point or a stack of points (..., N)."""
        p = np.asarray(points, dtype=float)
        out = np.ones(p.shape[:-1])
        for alpha, k in zip(self.root_system.positive_roots, self.root_system.positive_multiplicity):
            if k == 0:
                continue
            out = out * np.abs(p @ alpha) ** k
        return out

    def weight_squared(self, points: ArrayLike) -> np.ndarray:
        return self.weight(points) ** 2

    def describe(self) -> Dict[str, Any]:
        return {
            "preset": self.root_system.preset,
            "dimension": self.dimension,
            "k": self.root_system.multiplicity.tolist(),
            "gamma_k": self.gamma_k,
            "homogeneous_dimension": self.homogeneous_dimension,
            "group_order": self.group.order,
        }


def weight_h_k(ctx: WeightContext, x: ArrayLike) -> np.ndarray:
    return ctx.weight(x)


def ball_measure(ctx: WeightContext, center: ArrayLike, r: float, resolution: int = 256) -> float:
    """m_k(B(center, r)) by tensor midpoint quadrature restricted to the ball."""
    if r <= 0:
        raise InvalidArgumentError("ball radius must be positive")
    if resolution < MIN_BALL_NODES:
        raise ResolutionError(f"need at least {MIN_BALL_NODES} nodes across the ball, got {resolution}")
    c = np.asarray(center, dtype=float).reshape(ctx.dimension)
    h = 2.0 * r / resolution
    offsets = -r + h * (np.arange(resolution) + 0.5)
    mesh = np.stack(np.meshgrid(*([offsets] * ctx.dimension), indexing="ij"), axis=-1)
    inside = np.linalg.norm(mesh, axis=-1) <= r
    pts = mesh[inside] + c
    return float(np.sum(ctx.weight_squared(pts)) * h**ctx.dimension)


# ----- regions -----
REGION_KINDS = ("ball", "doubled_ball", "orbit_union", "orbit_intersection")


@dataclass
class OrbitRegion:
    center: np.ndarray
    radius: float
    kind: str = "ball"
    group: Optional[ReflectionGroup] = None

    def __post_init__(self) -> None:
        self.center = np.asarray(self.center, dtype=float).reshape(-1)
        if self.kind not in REGION_KINDS:
            raise InvalidArgumentError(f"unknown region kind: {self.kind}")
        if self.radius <= 0:
            raise InvalidArgumentError("region radius must be positive")


def region_mask(region: OrbitRegion, points: ArrayLike) -> np.ndarray:
    """Closed-set membership for a stack of points (..., N)."""
    p = np.asarray(points, dtype=float)
    r = region.radius
    slack = 1e-12 * max(1.0, r)
    group = region.group or trivial_group(region.center.size)
    if region.kind == "ball":
        return np.linalg.norm(p - region.center, axis=-1) <= r + slack
    if region.kind == "doubled_ball":
        return np.linalg.norm(p - region.center, axis=-1) <= 2 * r + slack
    if region.kind == "orbit_union":
        return orbit_distance(group, region.center, p) <= 2 * r + slack
    return orbit_spread(group, region.center, p) <= r + slack


def region_membership(region: OrbitRegion, y: ArrayLike) -> bool:
    return bool(region_mask(region, np.asarray(y, dtype=float).reshape(1, -1))[0])


def separation_check(
    group: ReflectionGroup,
    x: ArrayLike,
    r: float,
    samples: int = 100,
    seed: int = 0,
) -> ProbeReport:
    """Sample y in B(x,r), z outside Q*(x,r); min_g|g.z - x| must exceed 2|y - x|."""
    if r <= 0:
        raise InvalidArgumentError("radius must be positive")
    x = np.asarray(x, dtype=float).reshape(-1)
    n = x.size
    rng = np.random.default_rng(seed)

    direction = rng.normal(size=(samples, n))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    ys = x + direction * (r * rng.random(samples) ** (1.0 / n))[:, None]

    reach = float(np.linalg.norm(x)) + 6.0 * r + 1.0
    region = OrbitRegion(x, r, "orbit_union", group)
    zs = np.zeros((0, n))
    for _ in range(1000):
        cand = rng.uniform(-reach, reach, size=(4 * samples, n))
        zs = np.concatenate([zs, cand[~region_mask(region, cand)]])
        if zs.shape[0] >= samples:
            break
    zs = zs[:samples]

    dist = orbit_distance(group, x, zs)
    offset = np.linalg.norm(ys - x, axis=1)
    # every (y, z) pair: rows are y, columns are z
    slack = dist[None, :] - 2.0 * offset[:, None]
    report = ProbeReport("separation", params={"x": x, "r": r, "samples": samples, "seed": seed})
    report.values["pairs"] = int(slack.size)
    report.values["min_orbit_distance"] = float(np.min(dist))
    report.values["max_offset"] = float(np.max(offset))
    report.values["violations"] = int(np.sum(slack <= 0))
    report.check("min_slack", float(np.min(slack)), 0.0, ">")
    return report
