import json
import subprocess
import sys

import numpy as np
import pytest

from asymdouble import cli, verification
from asymdouble.fusion import FusionRing, build_ring


def run(capsys, *argv):
    status = cli.main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_counts(capsys):
    assert run(capsys, "counts", "--algebra", "su3", "--level", "6") == (0, "90\n", "")
    status, out, _ = run(capsys, "counts", "--algebra", "su2", "--level", "4", "--format", "json")
    assert json.loads(out)["even_vertices"] == 8


def test_fusion_table(capsys):
    status, out, _ = run(capsys, "fusion", "--algebra", "su3", "--level", "3", "--a", "1,1", "--b", "1,1")
    assert status == 0
    rows = dict(line.split() for line in out.splitlines()[1:])
    assert rows["(1,1)"] == "2" and rows["(3,0)"] == "1"


def test_dual_graph_dot(capsys):
    status, out, _ = run(capsys, "dual-graph", "--algebra", "su2", "--level", "4", "--format", "dot")
    assert status == 0
    assert out.count("shape=box") == 8 and "22+" in out and "22-" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "g.json"
    status, out, _ = run(capsys, "dual-graph", "--algebra", "su3", "--level", "3", "--format", "json",
                         "--out", str(target))
    assert status == 0 and out == ""
    assert len(json.loads(target.read_text())["even"]) == 14


@pytest.mark.parametrize("cmd", ["fields", "smatrix", "degenerate", "principal-graph", "dual-graph"])
@pytest.mark.parametrize("fmt", ["table", "json"])
def test_commands_run(capsys, cmd, fmt):
    status, out, _ = run(capsys, cmd, "--algebra", "su3", "--level", "3", "--format", fmt)
    assert status == 0 and out
    if fmt == "json":
        json.loads(out)


def test_orbifold_command(capsys):
    status, out, _ = run(capsys, "orbifold", "--n", "3", "--format", "json")
    doc = json.loads(out)
    assert status == 0 and doc["quotient_objects"] == 4 and doc["invertible"] == ["[0~8]"]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["counts", "--level", "x"],
    ["counts", "--unknown"],
    ["fusion", "--algebra", "su2", "--level", "3", "--a", "5", "--b", "1"],
    ["fields", "--algebra", "su2", "--level", "3", "--format", "dot"],
    ["orbifold", "--n", "2"],
    ["counts", "--tolerance", "-1"],
])
def test_errors_exit_one(capsys, argv):
    status, _, err = run(capsys, *argv)
    assert status == 1 and err


def test_verify_quick(capsys):
    status, out, _ = run(capsys, "verify", "--suite", "quick")
    assert status == 0 and "all checks passed" in out


def test_verify_tampered_tensor_exits_two(capsys, monkeypatch):
    def tampered(n, k):
        ring = build_ring(n, k)
        mult = ring.mult.copy()
        mult[1, 1, 0] += 1
        return FusionRing(ring.table, mult, ring.members)

    monkeypatch.setattr(verification, "build_ring", tampered)
    status, out, _ = run(capsys, "verify", "--suite", "quick", "--format", "json")
    doc = json.loads(out)
    assert status == 2 and not doc["passed"]
    assert next(c for c in doc["claims"] if not c["ok"])["id"] == "C1"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "asymdouble", "counts", "--algebra", "su2", "--level", "6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "14\n"


def test_tolerance_flag(capsys):
    status, out, _ = run(capsys, "dual-graph", "--algebra", "su2", "--level", "4", "--format", "json",
                         "--tolerance", "1e-8")
    assert status == 0 and json.loads(out)["provenance"]["tolerance"] == 1e-8
