# path: dunkl/cli.py
"""Command-line front end: validate, probe and report."""
import argparse
import logging
import os
import sys
from typing import List, Optional

from .config import PROBES, ExperimentConfig
from .errors import ConfigError, DunklError, EmptyRunDirectoryError
from .plots import plot_function, plot_oscillations
from .probes import ProbeRunner
from .roots import validate_root_system
from .store import RunManifest, find_manifests, read_json, write_csv, write_grid_function, write_json, write_spectrum
from .utils import configure_logging, log

EXIT_OK = 0
EXIT_FAIL = 1

SUMMARY_HEADER = ["preset", "k", "probe", "status", "config_hash", "constants"]


# ----- validate -----
def cmd_validate(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig.load(args.config)
    spec = cfg.root_system()
    report = validate_root_system(spec)
    for v in report.violations:
        print(f"FAIL {v['kind']}: {v['detail']}")
    if not report.ok:
        return EXIT_FAIL
    ctx = cfg.context()
    grid = cfg.grid(ctx.dimension)
    print(f"PASS root_system: {spec.preset} N={spec.dimension} |G|={ctx.group.order} gamma_k={ctx.gamma_k:g}")
    print(f"PASS grid: N={grid.dimension} L={grid.half_width:g} n={grid.nodes} h={grid.spacing:.6g}")
    return EXIT_OK


# ----- probe -----
def _run_dir(out: str, name: str, config_hash: str) -> str:
    return os.path.join(out, f"{name}-{config_hash[:12]}")


def cmd_probe(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig.load(args.config)
    name = args.name or cfg.probe
    if name is None:
        raise ConfigError("no probe named on the command line or in probe.name")
    if name not in PROBES:
        raise ConfigError(f"unknown probe {name!r}; choose from {list(PROBES)}")
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out is not None:
        cfg.output_dir = args.out
    cfg.svg = cfg.svg or args.svg
    if name != cfg.probe:
        cfg.probe = name
    cfg.validate()

    outcome = ProbeRunner(cfg).run(name)
    run_dir = _run_dir(cfg.output_dir, name, cfg.config_hash())
    files: List[str] = []
    rel = lambda path: os.path.relpath(path, run_dir)  # noqa: E731

    files.append(rel(write_json(os.path.join(run_dir, "report.json"), outcome.to_dict())))
    for table, (header, rows) in sorted(outcome.tables.items()):
        files.append(rel(write_csv(os.path.join(run_dir, f"{table}.csv"), header, rows)))
    for fname, f in sorted(outcome.functions.items()):
        files.append(rel(write_grid_function(os.path.join(run_dir, f"{fname}.csv"), f)))
    for sname, spec in sorted(outcome.spectra.items()):
        files.extend(rel(p) for p in write_spectrum(os.path.join(run_dir, f"{sname}.csv"), spec))
    if cfg.svg:
        for fname, f in sorted(outcome.functions.items()):
            if f.grid.dimension <= 2:
                files.append(rel(plot_function(f, os.path.join(run_dir, f"{fname}.svg"), f"{name}: {fname}")))
        for b in outcome.bmo_reports:
            if b.oscillations:
                files.append(rel(plot_oscillations(b, os.path.join(run_dir, f"oscillations_{b.function_id}.svg"))))

    manifest = RunManifest(cfg.config_hash(), cfg.to_dict(), cfg.seed)
    manifest.add_probe(name, outcome.status, files, {"passed": outcome.passed})
    manifest.save(run_dir)

    for line in outcome.summary_lines():
        print(line)
    print(f"{'PASS' if outcome.passed else 'FAIL'} {name}: report in {run_dir}")
    return EXIT_OK if outcome.passed else EXIT_FAIL


# ----- report -----
def _constants(report: dict) -> str:
    """Headline numbers of a probe report as key=value pairs."""
    parts = []
    for r in report.get("reports", []):
        for a in r.get("assertions", []):
            parts.append(f"{r['probe']}.{a['name']}={a['value']}")
    for b in report.get("bmo", []):
        parts.append(f"{b['function_id']}.ratio={b['ratio']}")
    return ";".join(parts)


def cmd_report(args: argparse.Namespace) -> int:
    root = args.directory
    manifests = find_manifests(root) if os.path.isdir(root) else []
    if not manifests:
        raise EmptyRunDirectoryError(f"no run manifests under {root}")
    rows = []
    for m in manifests:
        rs = m.config.get("root_system", {})
        for probe in m.probes:
            name = probe["name"]
            path = os.path.join(m.directory, "report.json")
            constants = _constants(read_json(path)) if os.path.exists(path) else ""
            rows.append([rs.get("preset", "?"), str(rs.get("k")), name, probe["status"], m.config_hash, constants])
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[4]))
    write_csv(os.path.join(root, "summary.csv"), SUMMARY_HEADER, rows)

    current = None
    for preset, k, name, status, h, _ in rows:
        if preset != current:
            current = preset
            print(f"== {preset} ==")
        print(f"  {name:<11} k={k:<12} {status.upper():<4} {h[:12]}")
    failed = sum(1 for r in rows if r[3] != "ok")
    print(f"{len(rows)} runs, {failed} failed; summary in {os.path.join(root, 'summary.csv')}")
    return EXIT_OK


# ----- entry -----
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dunkl-probe", description="Numerical probes for Dunkl harmonic analysis")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check the root system and grid of a config")
    v.add_argument("config")
    v.set_defaults(func=cmd_validate)

    p = sub.add_parser("probe", help="run one probe and write its report")
    p.add_argument("config")
    p.add_argument("--name", choices=PROBES, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--svg", action="store_true")
    p.set_defaults(func=cmd_probe)

    r = sub.add_parser("report", help="merge the runs under a directory")
    r.add_argument("directory")
    r.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(logging.DEBUG if args.verbose else logging.INFO)
    try:
        return args.func(args)
    except DunklError as e:
        log(f"[CLI] {type(e).__name__}: {e}", level=logging.ERROR)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
