# path: dunkl/probes.py
"""Probe implementations behind `dunkl-probe probe`."""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .bmo import (
    BmoReport,
    BmoSampling,
    oscillation_rows,
    proof_split_diagnostics,
    proof_split_sweep,
    sampled_hormander_sup,
    theorem43_probe,
)
from .config import ExperimentConfig
from .errors import ConfigError
from .grid import GridFunction, GridSpec, lp_norm, radialize, sample, tail_mass
from .kernel import KernelEvaluator, Spectrum, forward_transform, inverse_transform, plancherel_check
from .report import ProbeReport
from .riesz import hormander_probe, lemma41_check, sample_pairs
from .riesz import test_class_certificate as certify
from .roots import separation_check
from .translation import (
    annular_profile,
    bump_profile,
    corollary32_check,
    intersection_check_thm32,
    support_sharpness_check,
    translate_radial_grid,
    uniform_bound_probe,
    vanishing_check_cor31,
)
from .utils import log

Table = Tuple[List[str], List[List[Any]]]


@dataclass
class ProbeOutcome:
    """Reports of one probe run plus the tables and figures it produces."""

    name: str
    reports: List[ProbeReport] = field(default_factory=list)
    bmo_reports: List[BmoReport] = field(default_factory=list)
    extra: Dict[str, Any] = field(default_factory=dict)
    tables: Dict[str, Table] = field(default_factory=dict)
    functions: Dict[str, GridFunction] = field(default_factory=dict)
    spectra: Dict[str, Spectrum] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        ok = all(r.passed for r in self.reports) and all(b.status == "ok" for b in self.bmo_reports)
        return ok and self.extra.get("status", "ok") == "ok"

    @property
    def status(self) -> str:
        return "ok" if self.passed else "fail"

    def summary_lines(self) -> List[str]:
        lines = []
        for r in self.reports:
            for a in r.assertions:
                tag = "PASS" if a.passed else "FAIL"
                lines.append(f"{tag} {self.name}/{r.probe}/{a.name}: {a.value:.6g} {a.relation} {a.threshold:.6g}")
        for b in self.bmo_reports:
            tag = "PASS" if b.status == "ok" else "FAIL"
            ratio = "n/a" if b.ratio is None else f"{b.ratio:.6g}"
            lines.append(f"{tag} {self.name}/{b.function_id}/ratio: {ratio}")
        if "status" in self.extra:
            tag = "PASS" if self.extra["status"] == "ok" else "FAIL"
            lines.append(f"{tag} {self.name}/proof_split: a={self.extra['a_value']:.6g} b={self.extra['b_value']:.6g}")
        for fid, sweep in sorted(self.extra.get("proof_split_sweep", {}).items()):
            tag = "PASS" if sweep["status"] == "ok" else "FAIL"
            lines.append(
                f"{tag} {self.name}/{fid}/proof_split: a_max/hormander_sup={sweep['a_max_over_hormander']:.6g}"
                f" over {sweep['pairs']} balls"
            )
        return lines

    def to_dict(self) -> Dict[str, Any]:
        return {
            "probe": self.name,
            "status": self.status,
            "reports": [r.to_dict() for r in self.reports],
            "bmo": [b.to_dict() for b in self.bmo_reports],
            "extra": self.extra,
        }


# ----- input families -----
def gaussian(width: float = 1.0, center: Optional[np.ndarray] = None) -> Callable[[np.ndarray], np.ndarray]:
    def func(x):
        c = 0.0 if center is None else center
        return np.exp(-np.sum((x - c) ** 2, axis=-1) / (2.0 * width**2))
    return func


def bounded_family(name: str, grid: GridSpec) -> Callable[[np.ndarray], np.ndarray]:
    """sgn, windowed square wave, windowed cosine; the window is the box of half-width 0.4L."""
    inside = lambda x: np.all(np.abs(x) <= 0.4 * grid.half_width, axis=-1)  # noqa: E731
    if name == "sgn":
        return lambda x: np.sign(x[..., 0])
    if name == "square":
        return lambda x: np.where(inside(x), np.sign(np.sin(np.pi * x[..., 0] / 2.0)), 0.0)
    if name == "cosine":
        return lambda x: np.where(inside(x), np.cos(2.0 * x[..., 0]), 0.0)
    raise ConfigError(f"unknown bounded function {name!r}")


def schwartz_family(grid: GridSpec) -> Dict[str, GridFunction]:
    bump = radialize(bump_profile(2.0), grid)
    return {
        "gaussian": sample(grid, gaussian(1.0)),
        "bump": bump,
        "modulated_bump": bump.with_samples(bump.samples * np.cos(3.0 * grid.mesh()[..., 0])),
    }


class ProbeRunner:
    """Builds the context once and dispatches probe names to their implementations."""

    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.ctx = cfg.context()
        self.grid = cfg.grid(self.ctx.dimension)
        self._ev: Optional[KernelEvaluator] = None

    @property
    def ev(self) -> KernelEvaluator:
        if self._ev is None:
            self._ev = KernelEvaluator.for_context(self.ctx)
        return self._ev

    def run(self, name: str) -> ProbeOutcome:
        p = self.cfg.probe_params(name)
        log(f"[Probe] {name} on {self.ctx.root_system.preset} k={self.ctx.root_system.multiplicity.tolist()} grid={self.grid.to_dict()}")

        if name == "thm31":
            out = self._thm31(p)
        elif name == "thm32":
            out = self._thm32(p)
        elif name == "cor31":
            out = self._cor31(p)
        elif name == "cor32":
            out = self._cor32(p)
        elif name == "hormander":
            out = self._hormander(p)
        elif name == "uniform":
            out = self._uniform(p)
        elif name == "bmo43":
            out = self._bmo43(p)
        elif name == "lemma41":
            out = self._lemma41(p)
        elif name == "plancherel":
            out = self._plancherel(p)
        elif name == "separation":
            out = self._separation(p)
        else:
            raise ConfigError(f"unknown probe {name!r}")

        out.extra.setdefault("grid", self.grid.to_dict())
        out.extra.setdefault("context", self.ctx.describe())
        log(f"[Probe] {name}: {out.status}")
        return out

    # ----- translation probes -----
    def _thm31(self, p: Dict[str, Any]) -> ProbeOutcome:
        out = ProbeOutcome("thm31")
        out.reports.append(support_sharpness_check(p["r"], p["x"], self.ctx, self.ev, self.grid))
        res = translate_radial_grid(bump_profile(p["r"]), p["x"], self.grid, self.ctx, self.ev)
        out.functions["translated"] = res.reflected
        return out

    def _thm32(self, p: Dict[str, Any]) -> ProbeOutcome:
        out = ProbeOutcome("thm32")
        profile = annular_profile(p["r"], p["r"] + p["width"])
        out.reports.append(
            intersection_check_thm32(profile, p["x"], self.ctx, self.ev, p["r"], self.grid, samples=p["samples"], seed=self.cfg.seed)
        )
        out.functions["translated"] = translate_radial_grid(profile, p["x"], self.grid, self.ctx, self.ev).reflected
        return out

    def _cor31(self, p: Dict[str, Any]) -> ProbeOutcome:
        out = ProbeOutcome("cor31")
        out.reports.append(vanishing_check_cor31(bump_profile(p["rho"]), p["x"], p["r"], self.ctx, self.ev, self.grid))
        return out

    def _cor32(self, p: Dict[str, Any]) -> ProbeOutcome:
        out = ProbeOutcome("cor32")
        out.reports.append(corollary32_check(annular_profile(1.0, 2.0), p["x"], p["y"], self.ctx, self.ev, self.grid))
        return out

    def _uniform(self, p: Dict[str, Any]) -> ProbeOutcome:
        out = ProbeOutcome("uniform")
        rng = np.random.default_rng(self.cfg.seed)
        quarter = self.grid.half_width / 4.0
        ys = rng.uniform(-quarter, quarter, size=(p["points"], self.grid.dimension))
        family = schwartz_family(self.grid)
        rep = uniform_bound_probe(family, ys, p["p"], self.ctx, self.ev)
        out.reports.append(rep)
        out.tables["ratios"] = (["function", "sup_ratio", "tail_mass"], [
            [name, rep.values["per_function"][name], rep.values["tail_mass"][name]] for name in sorted(rep.values["per_function"])
        ])
        return out

    # ----- Riesz probes -----
    def _hormander(self, p: Dict[str, Any]) -> ProbeOutcome:
        out = ProbeOutcome("hormander")
        pairs = sample_pairs(self.grid, p["pairs"], self.cfg.seed)
        rep = hormander_probe(p["j"], pairs, self.grid, self.ctx, self.ev, p["eps"], p["M"], p["stability"])
        out.reports.append(rep)
        n = self.grid.dimension
        header = [f"x_{i + 1}" for i in range(n)] + [f"y_{i + 1}" for i in range(n)] + ["integral"]
        out.tables["pairs"] = (header, [list(x) + list(y) + [v] for (x, y), v in zip(pairs, rep.values["per_pair"])])
        return out

    def _lemma41(self, p: Dict[str, Any]) -> ProbeOutcome:
        out = ProbeOutcome("lemma41")
        e1 = np.zeros(self.grid.dimension)
        e1[0] = p["separation"]
        f = sample(self.grid, lambda x: (np.linalg.norm(x - e1, axis=-1) <= 1.0).astype(float))
        phi = certify(sample(self.grid, gaussian(1.0)), self.ctx, self.ev)
        cert = ProbeReport("certificate", values=phi.to_dict())
        cert.check("certified", float(phi.certified), 1.0, ">=")
        out.reports.append(cert)
        if phi.certified:
            out.reports.append(lemma41_check(f, phi, p["j"], self.ctx, self.ev, p["eps"], p["M"]))
        return out

    def _plancherel(self, p: Dict[str, Any]) -> ProbeOutcome:
        out = ProbeOutcome("plancherel")
        f = sample(self.grid, gaussian(1.0))
        rep = plancherel_check(f, self.ctx, self.ev, p["threshold"])
        spec = forward_transform(f, self.ctx, self.ev)
        fixed = float(np.max(np.abs(spec.samples - f.samples)))
        back = inverse_transform(spec, self.ctx, self.ev, self.grid)
        rep.check("gaussian_fixed_point", fixed, 1e-5)
        rep.check("round_trip", float(np.max(np.abs(back.samples - f.samples))), p["threshold"])
        rep.values["tail_mass"] = tail_mass(f, self.ctx)
        out.reports.append(rep)
        out.spectra["spectrum"] = spec
        out.functions["gaussian"] = f
        return out

    # ----- BMO probe -----
    def _bmo43(self, p: Dict[str, Any]) -> ProbeOutcome:
        out = ProbeOutcome("bmo43")
        h_sup = sampled_hormander_sup(p["j"], self.grid, self.ctx, self.ev, seed=self.cfg.seed)
        sampling = BmoSampling.default(self.grid)
        split_header = [f"x_{i + 1}" for i in range(self.grid.dimension)] + ["r", "a", "b", "b_bound", "status"]
        sweeps = {}
        for name in p["family"]:
            func = bounded_family(name, self.grid)
            rep = theorem43_probe(
                func, p["j"], self.grid, self.ctx, self.ev,
                sampling=sampling, function_id=name, stability=p["stability"], density_check=p["density_check"],
            )
            out.bmo_reports.append(rep)
            header = [f"x_{i + 1}" for i in range(self.grid.dimension)] + ["r", "oscillation"]
            out.tables[f"oscillations_{name}"] = (header, oscillation_rows(rep))
            sweep = proof_split_sweep(
                sample(self.grid, func), p["j"], sampling, self.ctx, self.ev, hormander_sup=h_sup, seed=self.cfg.seed
            )
            out.tables[f"proof_split_{name}"] = (split_header, sweep.pop("rows"))
            sweeps[name] = sweep
        first = sample(self.grid, bounded_family(p["family"][0], self.grid))
        split = proof_split_diagnostics(
            first, p["j"], np.asarray(p["split_x"]), p["split_r"], self.ctx, self.ev, hormander_sup=h_sup
        )
        out.extra.update(split)
        out.extra["proof_split_sweep"] = sweeps
        if any(s["status"] != "ok" for s in sweeps.values()):
            out.extra["status"] = "fail"
        ratios = [b.ratio for b in out.bmo_reports if b.ratio is not None]
        out.extra["max_ratio"] = max(ratios) if ratios else 0.0
        out.extra["linf_norm"] = lp_norm(first, self.ctx, np.inf)
        return out

    # ----- geometry -----
    def _separation(self, p: Dict[str, Any]) -> ProbeOutcome:
        out = ProbeOutcome("separation")
        out.reports.append(separation_check(self.ctx.group, p["x"], p["r"], p["samples"], self.cfg.seed))
        return out
