# path: dunkl/config.py
"""
Experiment configuration: a flat text file of dotted key=value lines.

    # rank-one support run
    root_system.preset = "rank1"
    root_system.k = [1.0]
    grid.n = 2048
    grid.L = 20.0
    probe.name = "thm31"
    probe.r = 0.5
    probe.x = [2.0]

Values are JSON literals; '#' starts a comment outside strings.
"""
import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .errors import ConfigError, DunklError
from .grid import GridSpec
from .roots import PRESETS, RootSystemSpec, WeightContext, catalog_root_system
from .utils import DEFAULT_SEED, RIESZ_EPS

SECTIONS = ("root_system", "grid", "probe", "output", "run")

PROBES = (
    "thm31",
    "thm32",
    "cor31",
    "cor32",
    "hormander",
    "uniform",
    "bmo43",
    "lemma41",
    "plancherel",
    "separation",
)

# per-probe parameters and their defaults; None means "derived from the dimension"
PROBE_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "thm31": {"x": None, "r": 0.5},
    "thm32": {"x": None, "r": 1.0, "width": 1.0, "samples": 10000},
    "cor31": {"x": None, "r": 0.5, "rho": 1.0},
    "cor32": {"x": None, "y": None},
    "hormander": {"j": 1, "eps": RIESZ_EPS, "M": None, "pairs": 50, "stability": True},
    "uniform": {"p": 1.0, "points": 8},
    "bmo43": {"j": 1, "family": ["sgn", "square", "cosine"], "stability": True, "density_check": False, "split_x": None, "split_r": 0.5},
    "lemma41": {"j": 1, "eps": RIESZ_EPS, "M": None, "separation": 6.0},
    "plancherel": {"threshold": 1e-6},
    "separation": {"x": None, "r": 0.5, "samples": 100},
}

DEFAULT_POINTS = {
    "thm31": 2.0,
    "thm32": 2.0,
    "cor31": 3.0,
    "cor32": 0.3,
    "separation": 1.0,
}

BMO_FAMILY = ("sgn", "square", "cosine")


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _strip_comment(line: str) -> str:
    in_str, escaped = False, False
    for i, ch in enumerate(line):
        if escaped:
            escaped = False
        elif ch == "\\" and in_str:
            escaped = True
        elif ch == '"':
            in_str = not in_str
        elif ch == "#" and not in_str:
            return line[:i]
    return line


def parse_config_text(text: str) -> Dict[str, Dict[str, Any]]:
    """Parse dotted key=value lines into {section: {key: value}}."""
    out: Dict[str, Dict[str, Any]] = {s: {} for s in SECTIONS}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if "." not in key:
            raise ConfigError(f"line {lineno}: key {key!r} has no section")
        section, name = key.split(".", 1)
        if section not in SECTIONS:
            raise ConfigError(f"line {lineno}: unknown section {section!r}")
        if not name:
            raise ConfigError(f"line {lineno}: empty key")
        if name in out[section]:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            out[section][name] = json.loads(value)
        except json.JSONDecodeError as e:
            raise ConfigError(f"line {lineno}: value of {key!r} is not a JSON literal ({e.msg})")
    return out


def _as_vector(value: Any, dimension: int, name: str) -> List[float]:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        value = [value]
    if not isinstance(value, list) or len(value) != dimension:
        raise ConfigError(f"{name} must be a list of {dimension} numbers")
    try:
        return [float(v) for v in value]
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must contain numbers")


def _positive(value: Any, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value <= 0:
        raise ConfigError(f"{name} must be a positive number")
    return float(value)


def _default_point(name: str, dimension: int) -> List[float]:
    lead = DEFAULT_POINTS[name]
    if name == "cor32":
        return [lead] * dimension
    return [lead] + [lead / 2.0] * (dimension - 1)


@dataclass
class ExperimentConfig:
    preset: str
    k: Any
    dimension: Optional[int] = None
    roots: Optional[List[List[float]]] = None
    grid_n: Optional[int] = None
    grid_L: Optional[float] = None
    probe: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)
    output_dir: str = "runs"
    svg: bool = False
    seed: int = DEFAULT_SEED

    # ----- construction -----
    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        d = parse_config_text(text)
        rs, grid, probe, output, run = (d[s] for s in SECTIONS)
        unknown = set(rs) - {"preset", "k", "dimension", "roots"}
        unknown |= {f"grid.{k}" for k in set(grid) - {"n", "L"}}
        unknown |= {f"output.{k}" for k in set(output) - {"dir", "svg"}}
        unknown |= {f"run.{k}" for k in set(run) - {"seed"}}
        if unknown:
            raise ConfigError(f"unknown keys: {sorted(unknown)}")
        if "preset" not in rs:
            raise ConfigError("root_system.preset is required")
        params = {k: v for k, v in probe.items() if k != "name"}
        cfg = cls(
            preset=rs["preset"],
            k=rs.get("k", 0.0),
            dimension=rs.get("dimension"),
            roots=rs.get("roots"),
            grid_n=grid.get("n"),
            grid_L=grid.get("L"),
            probe=probe.get("name"),
            params=params,
            output_dir=output.get("dir", "runs"),
            svg=bool(output.get("svg", False)),
            seed=run.get("seed", DEFAULT_SEED),
        )
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path: str) -> "ExperimentConfig":
        try:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}")
        return cls.from_text(text)

    # ----- validation -----
    def validate(self) -> None:
        """Check everything that can be checked before computing."""
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}; choose from {list(PRESETS)}")
        try:
            self.root_system()
        except (DunklError, TypeError, ValueError) as e:
            raise ConfigError(f"root system: {e}")
        if self.grid_n is not None and (isinstance(self.grid_n, bool) or not isinstance(self.grid_n, int) or self.grid_n < 2 or self.grid_n % 2):
            raise ConfigError("grid.n must be a positive even integer")
        if self.grid_L is not None:
            _positive(self.grid_L, "grid.L")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise ConfigError("run.seed must be an integer")
        if not isinstance(self.output_dir, str) or not self.output_dir:
            raise ConfigError("output.dir must be a non-empty string")
        if self.probe is not None:
            self.params = self.probe_params(self.probe)

    def root_system(self) -> RootSystemSpec:
        return catalog_root_system(self.preset, self.k, dimension=self.dimension, roots=self.roots)

    def context(self) -> WeightContext:
        return WeightContext(self.root_system())

    def grid(self, dimension: int) -> GridSpec:
        default = GridSpec.default(dimension)
        return GridSpec(
            dimension,
            float(self.grid_L) if self.grid_L is not None else default.half_width,
            int(self.grid_n) if self.grid_n is not None else default.nodes,
        )

    def probe_params(self, name: str) -> Dict[str, Any]:
        """Probe parameters merged with defaults and checked."""
        if name not in PROBES:
            raise ConfigError(f"unknown probe {name!r}; choose from {list(PROBES)}")
        defaults = PROBE_DEFAULTS[name]
        unknown = set(self.params) - set(defaults)
        if unknown:
            raise ConfigError(f"probe {name} does not take {sorted(unknown)}")
        dim = self.root_system().dimension
        p = dict(defaults)
        p.update(self.params)
        for key in ("x", "y"):
            if key in p:
                p[key] = _as_vector(p[key] if p[key] is not None else _default_point(name, dim), dim, f"probe.{key}")
        for key in ("r", "rho", "width", "eps", "separation", "split_r", "threshold"):
            if key in p:
                p[key] = _positive(p[key], f"probe.{key}")
        if p.get("M") is not None:
            p["M"] = _positive(p["M"], "probe.M")
            if p["M"] <= p["eps"]:
                raise ConfigError("probe.eps must be smaller than probe.M")
        if "j" in p and (not isinstance(p["j"], int) or not 1 <= p["j"] <= dim):
            raise ConfigError(f"probe.j must be an integer in 1..{dim}")
        if "p" in p and (_positive(p["p"], "probe.p") < 1):
            raise ConfigError("probe.p must be >= 1")
        for key in ("samples", "pairs", "points"):
            if key in p and (not isinstance(p[key], int) or p[key] < 1):
                raise ConfigError(f"probe.{key} must be a positive integer")
        if "family" in p:
            bad = [f for f in p["family"] if f not in BMO_FAMILY] if isinstance(p["family"], list) else [p["family"]]
            if bad or not p["family"]:
                raise ConfigError(f"probe.family entries must come from {list(BMO_FAMILY)}")
        if "split_x" in p:
            p["split_x"] = _as_vector(p["split_x"] if p["split_x"] is not None else [1.0] * dim, dim, "probe.split_x")
        if name == "cor31" and sum(v * v for v in p["x"]) ** 0.5 <= p["rho"] + p["r"]:
            raise ConfigError("cor31 needs |x| > rho + r so that f vanishes on the orbit balls")
        return p

    # ----- serialization -----
    def to_dict(self) -> Dict[str, Any]:
        return {
            "root_system": {"preset": self.preset, "k": self.k, "dimension": self.dimension, "roots": self.roots},
            "grid": {"n": self.grid_n, "L": self.grid_L},
            "probe": {"name": self.probe, **self.params},
            "output": {"dir": self.output_dir, "svg": self.svg},
            "run": {"seed": self.seed},
        }

    def config_hash(self) -> str:
        # output.* is not part of the run identity
        payload = {s: v for s, v in self.to_dict().items() if s != "output"}
        return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()
