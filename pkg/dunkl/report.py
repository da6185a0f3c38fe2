# path: dunkl/report.py
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class Assertion:
    """One measured quantity compared against a threshold."""

    name: str
    value: float
    threshold: float
    relation: str = "<"  # value <relation> threshold
    passed: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "value": _plain(self.value),
            "threshold": _plain(self.threshold),
            "relation": self.relation,
            "pass": bool(self.passed),
        }


_RELATIONS = {
    "<": lambda v, t: v < t,
    "<=": lambda v, t: v <= t,
    ">": lambda v, t: v > t,
    ">=": lambda v, t: v >= t,
}


@dataclass
class ProbeReport:
    """Result of a diagnostic: assertions plus free-form measurements."""

    probe: str
    params: Dict[str, Any] = field(default_factory=dict)
    assertions: List[Assertion] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def check(self, name: str, value: float, threshold: float, relation: str = "<") -> bool:
        value = float(value)
        ok = bool(_RELATIONS[relation](value, threshold))
        self.assertions.append(Assertion(name, value, float(threshold), relation, ok))
        return ok

    def get(self, name: str) -> Optional[Assertion]:
        for a in self.assertions:
            if a.name == name:
                return a
        return None

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    @property
    def status(self) -> str:
        return "ok" if self.passed else "fail"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "probe": self.probe,
            "status": self.status,
            "params": _plain(self.params),
            "assertions": [a.to_dict() for a in self.assertions],
            "values": _plain(self.values),
            "notes": list(self.notes),
        }


def _plain(obj: Any) -> Any:
    """Convert numpy scalars/arrays and complex numbers into JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "tolist"):
        return _plain(obj.tolist())
    if isinstance(obj, complex):
        if obj.imag == 0.0:
            return float(obj.real)
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if isinstance(obj, float):
        if obj != obj or obj in (float("inf"), float("-inf")):
            return str(obj)
        return float(obj)
    return obj
