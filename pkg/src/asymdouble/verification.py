"""Reproducibility checks run by ``asymdouble verify`` and by the acceptance tests.

Each check returns a :class:`Claim` with the expected value, the computed
value and a residual.  Exceptions raised by the library are caught and turned
into failed claims so a single regression cannot hide the others.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import partial
from itertools import combinations

import numpy as np

from .alcove import Field, fixed_point
from .doublegraph import (
    check_graph_pair,
    dual_graph,
    path_targets,
    principal_graph_for,
    solve_split_edges,
)
from .fixtures import FIGURES, PARTIAL, compare_split_neighbourhood, compare_to_figure, load_fixture
from .fusion import build_ring, closure, fusion_su2, subsystems
from .modular import degenerate_set, s_matrix, verlinde_tensor
from .orbifold import orbifold_report

PAPER_TIME_LIMIT = 30.0
QUICK_TIME_LIMIT = 5.0


@dataclass(frozen=True)
class Claim:
    key: str
    claim: str
    expected: str
    computed: str
    residual: float
    ok: bool
    seconds: float = 0.0


def _timed(key: str, claim: str, expected: str, body: Callable[[], tuple[str, float, bool]]) -> Claim:
    start = time.perf_counter()
    try:
        computed, residual, ok = body()
    except Exception as exc:  # reported, not raised
        computed, residual, ok = f"error: {type(exc).__name__}: {exc}", float("inf"), False
    return Claim(key, claim, expected, computed, float(residual), bool(ok), time.perf_counter() - start)


# -- individual checks --------------------------------------------------------


def fusion_backends(su2_levels: Sequence[int], su3_levels: Sequence[int], time_limit: float = 10.0) -> Claim:
    def body():
        start = time.perf_counter()
        worst = 0.0
        closed_form_ok = True
        for n, levels in ((2, su2_levels), (3, su3_levels)):
            for k in levels:
                ring = build_ring(n, k)
                values = verlinde_tensor(s_matrix(n, k))
                worst = max(worst, float(np.abs(values - ring.mult).max()))
                if n == 2:
                    size = k + 1
                    closed = np.array([[[fusion_su2(a, b, c, k) for c in range(size)] for b in range(size)]
                                       for a in range(size)])
                    closed_form_ok &= bool((closed == ring.mult).all())
        elapsed = time.perf_counter() - start
        ok = closed_form_ok and worst < 1e-6 and elapsed < time_limit
        return f"max dev {worst:.2e}, closed form {'equal' if closed_form_ok else 'DIFFERS'}, {elapsed:.2f}s", worst, ok

    return _timed("C1", "Kac-Walton = closed form = Verlinde", f"dev < 1e-6, < {time_limit:g}s", body)


def degeneracy(even_su2: Sequence[int], su3: Sequence[int], odd_su2: Sequence[int]) -> Claim:
    def body():
        bad = []
        for n, k in [(2, k) for k in even_su2] + [(3, k) for k in su3]:
            md = s_matrix(n, k)
            grade0 = md.table.grade_indices(0)
            found = {md.table[x].labels for x in degenerate_set(md, grade0)}
            if n == 2:
                expected = {(0,), (k,)}
            else:
                expected = {(0, 0), (k, 0), (0, k)}
            if found != expected:
                bad.append(f"SU({n})_{k}")
        for k in odd_su2:
            md = s_matrix(2, k)
            if degenerate_set(md, md.table.grade_indices(0)) != (0,):
                bad.append(f"SU(2)_{k}")
        return ("all match" if not bad else "mismatch " + ", ".join(bad)), len(bad), not bad

    return _timed("C2", "degenerate set = grade-0 simple currents", "{0, sigma, ...}; {0} for odd k", body)


def su2_closed_count(k: int) -> int:
    return ((k + 1) // 2) ** 2 if k % 2 else k * k // 4 + k // 2 + 2


def su3_closed_count(k: int) -> int:
    num = (k + 1) ** 2 * (k + 2) ** 2 if k % 3 else k**4 + 6 * k**3 + 13 * k**2 + 12 * k + 108
    q, r = divmod(num, 36)
    if r:
        raise ArithmeticError(f"closed form not integral at k={k}")
    return q


def even_counts(key: str, n: int, levels: Sequence[int], pinned: dict[int, int]) -> Claim:
    closed = su2_closed_count if n == 2 else su3_closed_count

    def body():
        got = {k: len(dual_graph(n, k).even) for k in levels}
        want = {k: closed(k) for k in levels}
        bad = [k for k in levels if got[k] != want[k]]
        bad += [k for k, v in pinned.items() if got.get(k) != v]
        text = " ".join(f"{k}:{got[k]}" for k in levels)
        return text, len(bad), not bad

    pins = ", ".join(f"SU({n})_{k} = {v}" for k, v in pinned.items())
    return _timed(key, f"SU({n}) even-vertex counts vs closed form", pins, body)


def su2_split_pattern(levels: Sequence[int]) -> Claim:
    def body():
        bad = []
        for k in levels:
            sols = solve_split_edges(2, k)
            cols = list(range(0, k + 1, 2))  # odd vertices in canonical order
            plus = tuple(int(j % 4 == 0) for j in cols)
            minus = tuple(int(j % 4 == 2) for j in cols)
            if sols != ((plus, minus),):
                bad.append(k)
        return ("unique, pattern holds" if not bad else f"fails at k={bad}"), len(bad), not bad

    return _timed("C4", "SU(2) split rows: + on 0,4,8..; - on 2,6,..", "unique, multiplicity 1", body)


def figure_fixtures() -> Claim:
    def body():
        problems = []
        for name in FIGURES:
            fig = load_fixture(name)
            m = fig["model"]
            problems += [f"{name}: {p}" for p in compare_to_figure(dual_graph(m["rank"], m["level"]), fig)]
        partial_fig = load_fixture(PARTIAL)
        problems += [f"{PARTIAL}: {p}" for p in compare_split_neighbourhood(dual_graph(3, 6), partial_fig)]
        return ("all figures match" if not problems else "; ".join(problems[:3])), len(problems), not problems

    return _timed("C5", "generated graphs = transcribed figures", "SU(2)_4, SU(2)_6, SU(3)_3, SU(3)_6 split", body)


def _young(rows: str, k: int) -> Field:
    r1, r2 = (int(c) for c in (rows + "0")[:2])
    return Field((r1 - r2, r2), 3, k)


def su3_fusion_identities(ks: Sequence[int]) -> Claim:
    """Exact integer identities at levels 3k for the fixed field f = (k, k)."""

    def body():
        bad = []
        for kk in ks:
            level = 3 * kk
            ring = build_ring(3, level)
            t = ring.table
            conj, grades = t.conj, t.grades
            f = t.index(fixed_point(3, level))
            three = t.index(_young("3", level))
            adj = t.index(_young("21", level))
            g0, g1 = t.grade_indices(0), t.grade_indices(1)
            mult = ring.mult

            def loops(a):  # N_{a, box^3}^a with box^3 = 0 + (3) + 2 (21)
                return int(mult[a, 0, a] + mult[a, three, a] + 2 * mult[a, adj, a])

            def dim_sum(group, c):
                return sum(int(mult[a, conj[a], c]) for a in group)

            checks = {
                "N_ff^(3)": (int(mult[f, f, three]), 1),
                "N_ff^(21)": (int(mult[f, f, adj]), 2),
                "grade-0 loops": (sum(loops(a) for a in g0), 9 * kk * kk),
                "grade-1 loops": (sum(loops(b) for b in g1), 9 * kk * kk),
                "(3) offset": (dim_sum(g0, three) - dim_sum(g1, three), 1),
                "(21) offset": (dim_sum(g0, adj) - dim_sum(g1, adj), -1),
                "vacuum paths": (int(path_targets(ring)[0]), 3 * kk * (kk + 1) // 2 + 1),
            }
            assert len(g0) == 3 * kk * (kk + 1) // 2 + 1 and all(grades[x] == 0 for x in g0)
            bad += [f"level {level} {name}: {got} != {want}" for name, (got, want) in checks.items() if got != want]
        return ("all exact" if not bad else "; ".join(bad[:3])), len(bad), not bad

    return _timed("C6", "SU(3)_3k fusion identities", "1, 2, 9k^2, +1, -1, 3k(k+1)/2+1", body)


def _graph_models(su2_levels, su3_levels):
    return [(2, k) for k in su2_levels] + [(3, k) for k in su3_levels]


def global_index_closure(models) -> Claim:
    def body():
        worst = 0.0
        bad = []
        for n, k in models:
            d, p = dual_graph(n, k), principal_graph_for(n, k)
            report = check_graph_pair(p, d, s_matrix(n, k))
            for name, ok, res in report.checks:
                if name.startswith(("dual global", "PF")):
                    worst = max(worst, res)
                    if not ok:
                        bad.append(f"SU({n})_{k} {name}")
        return f"worst residual {worst:.2e} over {len(models)} models", worst, not bad

    return _timed("C8", "sum dim^2 = [M]^2 and PF balance", "residual < 1e-6", body)


def path_count_unitarity(models) -> Claim:
    def body():
        bad = []
        for n, k in models:
            got = dual_graph(n, k).path_counts()
            want = path_targets(build_ring(n, k))
            if not np.array_equal(got, want):
                bad.append(f"SU({n})_{k}")
        return (f"{len(models)} models equal" if not bad else "differs " + ", ".join(bad)), len(bad), not bad

    return _timed("C9", "dual path counts from 0 = sum_a N_{a abar}^c", "exact", body)


def _brute_force_subsystems(n: int, k: int) -> list[tuple[int, ...]]:
    ring = build_ring(n, k)
    others = range(1, len(ring.table))
    found = []
    for r in range(len(others) + 1):
        for combo in combinations(others, r):
            cand = (0, *combo)
            if closure(ring, cand) == cand:
                found.append(cand)
    return sorted(found, key=lambda s: (len(s), s))


def su2_subsystems(levels: Sequence[int]) -> Claim:
    def body():
        bad = []
        for k in levels:
            found = subsystems(build_ring(2, k))
            want = sorted({(0,), (0, k), tuple(range(0, k + 1, 2)), tuple(range(k + 1))}, key=lambda s: (len(s), s))
            if found != want or found != _brute_force_subsystems(2, k):
                bad.append(k)
        return ("four subsystems each" if not bad else f"fails at k={bad}"), len(bad), not bad

    return _timed("C10", "SU(2)_k subsystems = {0}, {0,k}, evens, all", "search = brute force", body)


def orbifold_arithmetic(params: Sequence[int]) -> Claim:
    def body():
        worst, bad, parts = 0.0, [], []
        for n in params:
            rep = orbifold_report(n)
            worst = max([worst] + [res for _, _, res in rep.checks])
            bad += [f"n={n} {name}" for name, ok, _ in rep.checks if not ok]
            parts.append(f"n={n}: [N1]={rep.n1_index:.6f}, {rep.quotient_objects} objects, {len(rep.invertible)} invertible")
        return ("; ".join(parts) if not bad else "; ".join(bad)), worst, not bad

    return _timed("C11", "[N0]=g/2, [N1]=g/4=([M]/2)^2, n+1 objects, 1 invertible", "residual < 1e-6", body)


# -- suites -------------------------------------------------------------------

SU2_SWEEP = tuple(range(3, 11))
SU3_SWEEP = (3, 4, 5, 6, 7, 8)

SUITES: dict[str, tuple[Callable[[], Claim], ...]] = {
    "paper": (
        partial(fusion_backends, range(1, 13), range(1, 9)),
        partial(degeneracy, (4, 6, 8, 10, 12), (3, 6), (3, 5, 7, 9, 11)),
        partial(even_counts, "C3", 2, SU2_SWEEP, {4: 8, 6: 14}),
        partial(su2_split_pattern, (4, 6, 8, 10)),
        figure_fixtures,
        partial(su3_fusion_identities, (1, 2, 3)),
        partial(even_counts, "C7", 3, SU3_SWEEP, {3: 14, 6: 90}),
        partial(global_index_closure, _graph_models(SU2_SWEEP, SU3_SWEEP)),
        partial(path_count_unitarity, _graph_models(SU2_SWEEP, SU3_SWEEP)),
        partial(su2_subsystems, range(3, 9)),
        partial(orbifold_arithmetic, (3, 4)),
    ),
    "quick": (
        partial(fusion_backends, range(1, 7), range(1, 4)),
        partial(degeneracy, (4, 6), (3,), (3, 5)),
        partial(even_counts, "C3", 2, (3, 4, 5, 6), {4: 8, 6: 14}),
        partial(su2_split_pattern, (4, 6)),
        partial(even_counts, "C7", 3, (3, 4), {3: 14}),
        partial(global_index_closure, _graph_models((3, 4, 5, 6), (3, 4))),
        partial(path_count_unitarity, _graph_models((3, 4, 5, 6), (3, 4))),
        partial(su2_subsystems, (3, 4, 5)),
        partial(orbifold_arithmetic, (3,)),
    ),
}
LIMITS = {"paper": PAPER_TIME_LIMIT, "quick": QUICK_TIME_LIMIT}


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    claims: tuple[Claim, ...]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.claims)

    def first_failure(self) -> Claim | None:
        return next((c for c in self.claims if not c.ok), None)


def run_suite(name: str) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {tuple(SUITES)}")
    start = time.perf_counter()
    claims = [check() for check in SUITES[name]]
    elapsed = time.perf_counter() - start
    limit = LIMITS[name]
    key = "C12" if name == "paper" else "T"
    claims.append(Claim(key, f"{name} suite runtime", f"< {limit:g}s", f"{elapsed:.2f}s",
                        max(0.0, elapsed - limit), elapsed < limit, elapsed))
    return SuiteResult(name, tuple(claims), elapsed)


def format_table(result: SuiteResult) -> str:
    rows = [("id", "status", "claim", "expected", "computed", "residual")]
    for c in result.claims:
        rows.append((c.key, "PASS" if c.ok else "FAIL", c.claim, c.expected, c.computed, f"{c.residual:.3g}"))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]) - 1)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r[:-1], widths)) + "  " + r[-1] for r in rows]
    verdict = "all checks passed" if result.passed else f"FAILED: {result.first_failure().key} {result.first_failure().claim}"
    lines.append(f"{result.suite} suite: {verdict} ({result.seconds:.2f}s)")
    return "\n".join(lines)
