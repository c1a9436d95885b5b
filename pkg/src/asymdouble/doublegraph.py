"""Principal and dual principal graphs of the asymptotic inclusion of the SU(n)_k subfactor.

Odd vertices are the grade-0 fields, carrying their quantum dimension (the
common factor of the global index is dropped).  Even vertices of the
principal graph are ordered pairs of grade-0 fields.  When n | k the even
vertices of the dual graph are sigma-orbits of grade-balanced pairs, with
the fixed pair (f, f) split into n vertices of equal dimension; the edges of
those split vertices are found by :func:`solve_split_edges`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .alcove import Field, fixed_point
from .fusion import FusionRing, build_ring, grade_zero_subring
from .modular import ModularData, default_tolerance, s_matrix

Pair = tuple[int, int]


class GraphError(RuntimeError):
    pass


class SplitSolverError(GraphError):
    pass


@dataclass(frozen=True)
class OcneanuClass:
    """One even vertex of the dual graph: an orbit of field-index pairs."""

    orbit: tuple[Pair, ...]
    dimension: float
    split_index: int | None = None

    @property
    def representative(self) -> Pair:
        return self.orbit[0]

    @property
    def is_split(self) -> bool:
        return self.split_index is not None


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    kind: str  # "principal" or "dual"
    rank: int
    level: int
    odd: tuple[int, ...]  # field indices
    odd_dims: tuple[float, ...]
    even: tuple[OcneanuClass, ...]
    edges: np.ndarray = field(repr=False)  # even x odd

    def __post_init__(self):
        if self.edges.shape != (len(self.even), len(self.odd)):
            raise GraphError(f"edge matrix shape {self.edges.shape} does not match vertex counts")
        if (self.edges < 0).any():
            raise GraphError("negative edge multiplicity")

    @property
    def even_dims(self) -> np.ndarray:
        return np.array([v.dimension for v in self.even])

    def odd_position(self, field_index: int) -> int:
        return self.odd.index(field_index)

    def is_connected(self) -> bool:
        n_even, n_odd = self.edges.shape
        if not n_even or not n_odd:
            return False
        seen_even, seen_odd = {0}, set()
        queue = deque([("e", 0)])
        while queue:
            side, i = queue.popleft()
            if side == "e":
                nbrs = np.flatnonzero(self.edges[i])
                for j in nbrs:
                    if j not in seen_odd:
                        seen_odd.add(int(j))
                        queue.append(("o", int(j)))
            else:
                nbrs = np.flatnonzero(self.edges[:, i])
                for j in nbrs:
                    if j not in seen_even:
                        seen_even.add(int(j))
                        queue.append(("e", int(j)))
        return len(seen_even) == n_even and len(seen_odd) == n_odd

    def path_counts(self) -> np.ndarray:
        """``sum_v E(v, 0) E(v, c)`` for every odd vertex c (vacuum is odd vertex 0)."""
        e = self.edges.astype(np.int64)
        return e[:, 0] @ e

    def gram(self) -> np.ndarray:
        """Length-2 path counts between all pairs of odd vertices."""
        e = self.edges.astype(np.int64)
        return e.T @ e


def _ring(n: int, k: int) -> FusionRing:
    return build_ring(n, k)


def principal_graph(subring: FusionRing, md: ModularData | None = None) -> BipartiteGraph:
    """Fusion graph of a fusion-closed system: even vertices are all ordered pairs."""
    md = md or s_matrix(subring.rank, subring.level)
    members = subring.members
    if not subring.is_closed(members):
        raise GraphError("principal graph needs a fusion-closed system")
    q = md.qdims
    pairs = [(a, b) for a in members for b in members]
    even = tuple(OcneanuClass(((a, b),), float(q[a] * q[b])) for a, b in pairs)
    edges = np.array([[subring.mult[a, b, c] for c in members] for a, b in pairs], dtype=np.int64)
    g = BipartiteGraph("principal", subring.rank, subring.level, members,
                       tuple(float(q[c]) for c in members), even, edges)
    if not g.is_connected():
        raise GraphError(f"fusion graph of SU({subring.rank})_{subring.level} system {members} is disconnected")
    _require_pf(g, md.tolerance)
    return g


@lru_cache(maxsize=32)
def ocneanu_classes(n: int, k: int) -> tuple[OcneanuClass, ...]:
    """Even vertices of the dual graph when n | k, in canonical order."""
    f = fixed_point(n, k)
    ring = _ring(n, k)
    table = ring.table
    q = s_matrix(n, k).qdims
    grades = table.grades
    sig = table.sigma(1)
    sig_inv = table.sigma(n - 1)
    fi = table.index(f)
    seen: set[Pair] = set()
    classes: list[OcneanuClass] = []
    for a in range(len(table)):
        for b in range(len(table)):
            if (grades[a] + grades[b]) % n or (a, b) in seen:
                continue
            orbit = [(a, b)]
            x, y = sig[a], sig_inv[b]
            while (x, y) != (a, b):
                orbit.append((x, y))
                x, y = sig[x], sig_inv[y]
            seen.update(orbit)
            if (a, b) == (fi, fi):
                dim = float(q[fi] ** 2 / n)
                classes.extend(OcneanuClass(((fi, fi),), dim, i) for i in range(n))
                continue
            if len(orbit) != n:
                raise GraphError(f"orbit of {(a, b)} has size {len(orbit)}, expected {n}")
            classes.append(OcneanuClass(tuple(orbit), float(q[a] * q[b])))
    return tuple(classes)


def _nonsplit_edges(ring: FusionRing, classes, odd) -> np.ndarray:
    rows = []
    for cls in classes:
        if cls.is_split:
            continue
        values = {tuple(int(ring.mult[a, b, c]) for c in odd) for a, b in cls.orbit}
        if len(values) != 1:
            raise GraphError(f"fusion multiplicities vary over the orbit {cls.orbit}")
        rows.append(values.pop())
    return np.array(rows, dtype=np.int64).reshape(-1, len(odd))


def path_targets(ring: FusionRing) -> np.ndarray:
    """``sum_{a in M} N_{a abar}^c`` for every grade-0 c (M = grade-0 fields)."""
    odd = ring.table.grade_indices(0)
    conj = ring.table.conj
    return np.array([sum(int(ring.mult[a, conj[a], c]) for a in odd) for c in odd], dtype=np.int64)


def path_gram(ring: FusionRing) -> np.ndarray:
    """Length-2 path counts between grade-0 odd vertices on the fusion graph.

    Entry (c, d) is ``sum_{a, b in M} N_ab^c N_ab^d``; row 0 equals
    :func:`path_targets`.
    """
    odd = list(ring.table.grade_indices(0))
    block = ring.mult[np.ix_(odd, odd, odd)].reshape(-1, len(odd)).astype(np.int64)
    return block.T @ block


@lru_cache(maxsize=64)
def solve_split_edges(n: int, k: int, all_pairs: bool = True) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All canonical edge matrices for the n split vertices of the fixed pair.

    Rows are split vertices, columns the grade-0 fields in canonical order.
    Constraints:

    * column sums equal N_ff^c;
    * every row balances to dimension qdim(f)^2 / n;
    * length-2 path counts from the vacuum agree with the fusion graph.

    With ``all_pairs`` (the default) path counts between every pair of odd
    vertices must agree as well, which is what makes the SU(3)_6 answer
    unique.  Solutions come back with rows sorted in decreasing
    lexicographic order.
    """
    if n < 2:
        raise SplitSolverError("rank 1 has no split vertices")
    ring = _ring(n, k)
    table = ring.table
    md = s_matrix(n, k)
    q = md.qdims
    tol = md.tolerance
    fi = table.index(fixed_point(n, k))
    odd = table.grade_indices(0)
    nff = np.array([int(ring.mult[fi, fi, c]) for c in odd], dtype=np.int64)
    if nff[0] != 1:
        raise SplitSolverError(f"N_ff^0 = {nff[0]}, expected 1")
    target_dim = q[fi] ** 2 / n
    fixed = _nonsplit_edges(ring, classes := ocneanu_classes(n, k), odd)
    gram = path_gram(ring) - fixed.T @ fixed

    # The row meeting the vacuum can be taken as row 0 (rows are interchangeable);
    # vacuum path counts then fix that row column by column.
    row0 = gram[0].copy()
    if (row0 < 0).any() or (row0 > nff).any():
        raise SplitSolverError(f"SU({n})_{k}: path counts force an impossible first row {row0.tolist()}")
    odd_q = q[list(odd)]
    if abs(float(row0 @ odd_q) - target_dim) > tol:
        raise SplitSolverError(f"SU({n})_{k}: first split row fails the dimension balance")
    rest = nff - row0

    order = sorted(range(1, len(odd)), key=lambda j: (-odd_q[j], j))
    m = n - 1
    cap = np.zeros(len(order) + 1)  # dimension still available to a row after position i
    for i in range(len(order) - 1, -1, -1):
        cap[i] = cap[i + 1] + rest[order[i]] * odd_q[order[i]]

    rows = np.zeros((m, len(odd)), dtype=np.int64)
    sums = np.zeros(m)
    done: list[int] = []
    solutions: set[tuple[tuple[int, ...], ...]] = set()

    def gram_ok(j: int) -> bool:
        for jj in (*done, j):
            if row0[j] * row0[jj] + int(rows[:, j] @ rows[:, jj]) != gram[j, jj]:
                return False
        return True

    def assign(pos: int):
        if pos == len(order):
            if np.all(np.abs(sums - target_dim) <= tol):
                full = [tuple(int(x) for x in row0)] + [tuple(int(x) for x in r) for r in rows]
                solutions.add(tuple(sorted(full, reverse=True)))
            return
        j = order[pos]
        for split in _compositions(int(rest[j]), m):
            new = sums + np.array(split) * odd_q[j]
            if (new > target_dim + tol).any() or (new + cap[pos + 1] < target_dim - tol).any():
                continue
            rows[:, j] = split
            if all_pairs and not gram_ok(j):
                continue
            prev = sums.copy()
            sums[:] = new
            done.append(j)
            assign(pos + 1)
            done.pop()
            sums[:] = prev
        rows[:, j] = 0

    assign(0)
    if not solutions:
        raise SplitSolverError(f"SU({n})_{k}: no split-edge assignment satisfies the constraints")
    return tuple(sorted(solutions, reverse=True))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


@lru_cache(maxsize=32)
def dual_graph(n: int, k: int) -> BipartiteGraph:
    ring = _ring(n, k)
    md = s_matrix(n, k)
    sub = grade_zero_subring(ring)
    principal = principal_graph(sub, md)
    if k % n:
        g = BipartiteGraph("dual", n, k, principal.odd, principal.odd_dims, principal.even, principal.edges)
    else:
        solutions = solve_split_edges(n, k)
        if len(solutions) != 1:
            raise SplitSolverError(f"SU({n})_{k}: {len(solutions)} canonical split-edge solutions")
        split_rows = iter(solutions[0])
        classes = ocneanu_classes(n, k)
        odd = sub.members
        fixed = iter(_nonsplit_edges(ring, classes, odd))
        edges = np.array([next(split_rows) if cls.is_split else next(fixed) for cls in classes], dtype=np.int64)
        g = BipartiteGraph("dual", n, k, odd, principal.odd_dims, classes, edges)
    report = check_graph_pair(principal, g, md)
    if not report.passed:
        raise GraphError(f"SU({n})_{k} dual graph fails checks: {report.failures()}")
    return g


def principal_graph_for(n: int, k: int) -> BipartiteGraph:
    return principal_graph(grade_zero_subring(_ring(n, k)), s_matrix(n, k))


def expected_even_count(n: int, k: int) -> int:
    """Closed-form number of even vertices of the dual graph (k > 2)."""
    if n == 2:
        if k % 2:
            return ((k + 1) // 2) ** 2
        return k * k // 4 + k // 2 + 2
    if n == 3:
        if k % 3:
            value = Fraction((k + 1) ** 2 * (k + 2) ** 2, 36)
        else:
            value = Fraction(k**4 + 6 * k**3 + 13 * k**2 + 12 * k + 108, 36)
        if value.denominator != 1:
            raise GraphError(f"closed form is not an integer at k={k}")
        return int(value)
    raise GraphError(f"no closed form for SU({n})")


def even_vertex_count(n: int, k: int) -> int:
    if k <= 2:
        raise GraphError("even-vertex closed form needs k > 2")
    count = len(dual_graph(n, k).even)
    expected = expected_even_count(n, k)
    if count != expected:
        raise GraphError(f"SU({n})_{k}: constructed {count} even vertices, closed form gives {expected}")
    return count


@dataclass
class CheckReport:
    checks: list[tuple[str, bool, float]] = field(default_factory=list)

    def add(self, name: str, ok: bool, residual: float) -> None:
        self.checks.append((name, bool(ok), float(residual)))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name} (residual {res:.3e})" for name, ok, res in self.checks if not ok]


def pf_residual(g: BipartiteGraph) -> float:
    lhs = g.edges @ np.array(g.odd_dims)
    return float(np.abs(lhs - g.even_dims).max())


def _require_pf(g: BipartiteGraph, tol: float) -> None:
    res = pf_residual(g)
    if res > tol:
        raise GraphError(f"Perron-Frobenius balance fails on the {g.kind} graph (residual {res:.3e})")


def check_graph_pair(principal: BipartiteGraph, dual: BipartiteGraph, md: ModularData | None = None) -> CheckReport:
    tol = md.tolerance if md is not None else default_tolerance()
    report = CheckReport()
    if principal.odd != dual.odd:
        report.add("same odd vertices", False, float("inf"))
        return report
    global_index = float(np.sum(np.array(principal.odd_dims) ** 2))
    total = float(np.sum(dual.even_dims**2))
    res = abs(total - global_index**2)
    report.add("dual global index", res <= tol, res)
    for g in (principal, dual):
        res = pf_residual(g)
        report.add(f"PF balance ({g.kind})", res <= tol, res)
    diff = np.abs(principal.path_counts() - dual.path_counts())
    report.add("path counts from vacuum", int(diff.max()) == 0, float(diff.max()))
    diff = np.abs(principal.gram() - dual.gram())
    report.add("path counts between all odd vertices", int(diff.max()) == 0, float(diff.max()))
    report.add("dual graph connected", dual.is_connected(), 0.0)
    return report


def fixed_field_index(n: int, k: int) -> int:
    return _ring(n, k).table.index(fixed_point(n, k))


def field_of(n: int, k: int, index: int) -> Field:
    return _ring(n, k).table[index]


def ghost_classes(g: BipartiteGraph) -> tuple[int, ...]:
    """Even vertices whose pairs involve fields of non-zero grade."""
    grades = _ring(g.rank, g.level).table.grades
    return tuple(i for i, v in enumerate(g.even) if grades[v.representative[0]])


def split_rows(g: BipartiteGraph) -> np.ndarray:
    """Edge rows of the split vertices, in split-index order."""
    rows = [i for i, v in enumerate(g.even) if v.is_split]
    return g.edges[rows]
