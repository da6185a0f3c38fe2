# path: tests/test_cli.py
import csv
import json
import os

import pytest

from dunkl.cli import main
from dunkl.config import ExperimentConfig
from dunkl.errors import ConfigError

RANK1 = """\
# small rank-one run
root_system.preset = "rank1"
root_system.k = [1.0]
grid.n = 256
grid.L = 12.0
"""


def write_config(tmp_path, text, name="exp.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def run_files(run_dir):
    out = {}
    for name in sorted(os.listdir(run_dir)):
        with open(os.path.join(run_dir, name), "rb") as f:
            out[name] = f.read()
    return out


# ----- config -----
def test_config_parsing_and_hash():
    cfg = ExperimentConfig.from_text(RANK1 + 'probe.name = "plancherel"  # inline comment\n')
    assert cfg.grid(1).nodes == 256
    assert cfg.params == {"threshold": 1e-6}
    again = ExperimentConfig.from_text(RANK1 + 'probe.name = "plancherel"\n')
    assert cfg.config_hash() == again.config_hash()
    other = ExperimentConfig.from_text(RANK1 + 'probe.name = "plancherel"\nrun.seed = 7\n')
    assert other.config_hash() != cfg.config_hash()


@pytest.mark.parametrize(
    "extra",
    [
        "grid.n = 255\n",
        "grid.spacing = 1.0\n",
        "probe.name = \"thm31\"\nprobe.r = -1.0\n",
        "probe.name = \"thm31\"\nprobe.rho = 1.0\n",
        "probe.name = \"cor31\"\nprobe.x = [0.5]\n",
        "probe.name = \"hormander\"\nprobe.j = 2\n",
        "root_system.k = [1.0]\n",
        "output.svg = maybe\n",
    ],
)
def test_config_errors(extra):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_text(RANK1 + extra)


# ----- validate -----
def test_validate_passes(tmp_path, capsys):
    assert main(["validate", write_config(tmp_path, RANK1)]) == 0
    out = capsys.readouterr().out
    assert "PASS root_system: rank1 N=1 |G|=2" in out
    assert "PASS grid" in out


def test_validate_reports_violations(tmp_path, capsys):
    text = 'root_system.preset = "custom"\nroot_system.k = 1.0\nroot_system.roots = [[1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]\n'
    assert main(["validate", write_config(tmp_path, text)]) == 1
    assert "FAIL closure" in capsys.readouterr().out


def test_validate_bad_config(tmp_path):
    assert main(["validate", write_config(tmp_path, "preset = rank1\n")]) == 2
    assert main(["validate", str(tmp_path / "missing.cfg")]) == 2


# ----- probe and report -----
def test_unsupported_group_exit_code(tmp_path):
    text = 'root_system.preset = "a2"\nroot_system.k = 1.0\nprobe.name = "hormander"\n'
    text += f'output.dir = {json.dumps(str(tmp_path / "runs"))}\n'
    assert main(["probe", write_config(tmp_path, text)]) == 3


def test_probe_needs_a_name(tmp_path):
    assert main(["probe", write_config(tmp_path, RANK1)]) == 2


def test_probe_writes_a_deterministic_run(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    runs = tmp_path / "runs"
    config = write_config(tmp_path, RANK1 + 'probe.name = "plancherel"\n')

    assert main(["probe", config, "--out", str(runs)]) == 0
    (run_dir,) = [runs / d for d in os.listdir(runs)]
    assert run_dir.name.startswith("plancherel-")
    first = run_files(run_dir)
    assert {"manifest.json", "report.json", "gaussian.csv"} <= set(first)

    manifest = json.loads(first["manifest.json"])
    assert manifest["created"] == "2023-11-14T22:13:20Z"
    assert manifest["probes"][0]["status"] == "ok"
    assert sorted(manifest["files"]) == manifest["files"]

    assert main(["probe", config, "--out", str(runs)]) == 0
    assert run_files(run_dir) == first
    assert "PASS plancherel" in capsys.readouterr().out


def test_probe_svg_output(tmp_path, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    runs = tmp_path / "runs"
    config = write_config(tmp_path, RANK1 + 'probe.name = "thm31"\nprobe.x = [3.0]\nprobe.r = 1.0\n')
    assert main(["probe", config, "--out", str(runs), "--svg"]) in (0, 1)
    (run_dir,) = [runs / d for d in os.listdir(runs)]
    svg = (run_dir / "translated.svg").read_text(encoding="utf-8")
    assert svg.lstrip().startswith("<?xml")


def test_separation_probe_and_report(tmp_path, capsys):
    runs = tmp_path / "runs"
    for seed in ("1", "2"):
        config = write_config(tmp_path, RANK1 + 'probe.name = "separation"\n', f"sep{seed}.cfg")
        assert main(["probe", config, "--out", str(runs), "--seed", seed]) == 0
    capsys.readouterr()

    assert main(["report", str(runs)]) == 0
    out = capsys.readouterr().out
    assert "== rank1 ==" in out
    assert "2 runs, 0 failed" in out
    with open(runs / "summary.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["preset", "k", "probe", "status", "config_hash", "constants"]
    assert [r[2] for r in rows[1:]] == ["separation", "separation"]
    assert all(r[5].startswith("separation.min_slack=") for r in rows[1:])


def test_report_on_empty_directory(tmp_path):
    assert main(["report", str(tmp_path)]) == 1
    assert main(["report", str(tmp_path / "nowhere")]) == 1


def test_rerun_is_byte_identical_without_source_date_epoch(tmp_path, monkeypatch):
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)
    runs = tmp_path / "runs"
    config = write_config(tmp_path, RANK1 + 'probe.name = "separation"\n')
    assert main(["probe", config, "--out", str(runs)]) == 0
    (run_dir,) = [runs / d for d in os.listdir(runs)]
    first = run_files(run_dir)
    assert json.loads(first["manifest.json"])["created"] == "1970-01-01T00:00:00Z"

    assert main(["probe", config, "--out", str(runs)]) == 0
    assert run_files(run_dir) == first


def test_hash_ignores_output_section():
    base = ExperimentConfig.from_text(RANK1 + 'probe.name = "plancherel"\n')
    moved = ExperimentConfig.from_text(RANK1 + 'probe.name = "plancherel"\noutput.dir = "elsewhere"\noutput.svg = true\n')
    assert moved.config_hash() == base.config_hash()
