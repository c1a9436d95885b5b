"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or as a script.
"""

import subprocess
import sys
import time

import pytest

from asymdouble import verification as v
from asymdouble.doublegraph import dual_graph

SU2_SWEEP = tuple(range(3, 11))
SU3_SWEEP = (3, 4, 5, 6, 7, 8)
GRAPH_MODELS = [(2, k) for k in SU2_SWEEP] + [(3, k) for k in SU3_SWEEP]


@pytest.fixture
def report(capsys):
    def emit(claim):
        with capsys.disabled():
            status = "PASS" if claim.ok else "FAIL"
            print(f"\n[{status}] {claim.key}: {claim.claim} | expected {claim.expected} | got {claim.computed}")
        assert claim.ok, claim.computed
    return emit


def test_c01_fusion_backends(report):
    report(v.fusion_backends(range(1, 13), range(1, 9), time_limit=10.0))


def test_c02_degeneracy(report):
    report(v.degeneracy((4, 6, 8, 10, 12), (3, 6), (3, 5, 7, 9, 11)))


def test_c03_su2_counts(report):
    assert [v.su2_closed_count(k) for k in SU2_SWEEP] == [4, 8, 9, 14, 16, 22, 25, 32]
    report(v.even_counts("C3", 2, SU2_SWEEP, {4: 8, 6: 14}))


def test_c04_su2_split_pattern(report):
    report(v.su2_split_pattern((4, 6, 8, 10)))


def test_c05_figure_fixtures(report):
    report(v.figure_fixtures())


def test_c06_su3_fusion_identities(report):
    report(v.su3_fusion_identities((1, 2, 3)))


def test_c07_su3_counts(report):
    assert [v.su3_closed_count(k) for k in SU3_SWEEP] == [14, 25, 49, 90, 144, 225]
    report(v.even_counts("C7", 3, SU3_SWEEP, {3: 14, 6: 90}))


def test_c08_global_index_and_pf(report):
    for n, k, total in [(2, 4, 36.0), (3, 3, 144.0)]:
        assert abs(float((dual_graph(n, k).even_dims ** 2).sum()) - total) < 1e-6
    report(v.global_index_closure(GRAPH_MODELS))


def test_c09_path_count_unitarity(report):
    report(v.path_count_unitarity(GRAPH_MODELS))


def test_c10_su2_subsystems(report):
    report(v.su2_subsystems(range(3, 9)))


def test_c11_orbifold_arithmetic(report):
    report(v.orbifold_arithmetic((3, 4)))


def test_c12_full_suite_runtime(report):
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "asymdouble", "verify", "--suite", "paper"],
                          capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    ok = proc.returncode == 0 and elapsed < v.PAPER_TIME_LIMIT
    report(v.Claim("C12", "verify --suite paper: status 0 within 30s", "status 0, < 30s",
                   f"status {proc.returncode}, {elapsed:.2f}s", max(0.0, elapsed - v.PAPER_TIME_LIMIT), ok))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
