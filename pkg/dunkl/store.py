# path: dunkl/store.py
"""Run directories: atomic JSON/CSV writes and the run manifest."""
import csv
import io
import json
import os
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

from . import __version__
from .grid import GridFunction
from .kernel import Spectrum
from .report import _plain
from .utils import log

MANIFEST_NAME = "manifest.json"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    tmp_path = path + ".tmp"
    with open(tmp_path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    os.replace(tmp_path, path)


def dumps(obj: Any) -> str:
    """Stable JSON text: sorted keys, fixed indent, trailing newline."""
    return json.dumps(_plain(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path: str, obj: Any) -> str:
    _write_atomic(path, dumps(obj))
    return path


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header))
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    _write_atomic(path, buf.getvalue())
    return path


def write_grid_function(path: str, f: GridFunction) -> str:
    return write_csv(path, f.header(), f.rows())


def write_spectrum(path: str, spec: Spectrum) -> List[str]:
    """Samples as CSV plus a JSON sidecar carrying the domain tag and c_k."""
    sidecar = os.path.splitext(path)[0] + ".meta.json"
    return [write_grid_function(path, spec.function), write_json(sidecar, spec.metadata())]


def read_json(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def timestamp() -> str:
    """UTC time of SOURCE_DATE_EPOCH, or the Unix epoch when unset."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH", "").strip()
    t = int(epoch) if epoch.isdigit() else 0
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


@dataclass
class RunManifest:
    """What one CLI invocation produced."""

    config_hash: str
    config: Dict[str, Any]
    seed: int
    version: str = __version__
    created: str = field(default_factory=timestamp)
    probes: List[Dict[str, Any]] = field(default_factory=list)
    directory: str = field(default="", compare=False)

    def add_probe(self, name: str, status: str, files: List[str], summary: Optional[Dict[str, Any]] = None) -> None:
        self.probes.append({"name": name, "status": status, "files": sorted(files), "summary": summary or {}})

    @property
    def files(self) -> List[str]:
        return sorted(f for p in self.probes for f in p["files"])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config_hash": self.config_hash,
            "config": self.config,
            "seed": self.seed,
            "version": self.version,
            "created": self.created,
            "probes": self.probes,
            "files": self.files,
        }

    def save(self, directory: str) -> str:
        return write_json(os.path.join(directory, MANIFEST_NAME), self.to_dict())

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "RunManifest":
        m = cls(d["config_hash"], d.get("config", {}), d.get("seed", 0), d.get("version", ""), d.get("created", ""))
        m.probes = list(d.get("probes", []))
        return m


def find_manifests(root: str) -> List[RunManifest]:
    """Every manifest below root, deduplicated by config hash (first in path order wins)."""
    found: Dict[str, RunManifest] = {}
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        if MANIFEST_NAME not in filenames:
            continue
        path = os.path.join(dirpath, MANIFEST_NAME)
        try:
            m = RunManifest.from_dict(read_json(path))
        except (OSError, ValueError, KeyError) as e:
            log(f"[Store] skipping unreadable manifest {path}: {e}")
            continue
        if m.config_hash in found:
            log(f"[Store] duplicate run {m.config_hash[:12]} at {path}", level=10)
            continue
        m.directory = dirpath
        found[m.config_hash] = m
    return [found[h] for h in sorted(found, key=lambda h: (found[h].config.get("root_system", {}).get("preset", ""), h))]