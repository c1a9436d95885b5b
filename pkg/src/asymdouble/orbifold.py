"""Simple-current quotients of weighted systems and the index bookkeeping around them.

A weighted system is a list of objects with quantum dimensions together with
the permutation induced by tensoring with an order-2 invertible object beta.
The quotient merges each free orbit {x, beta x} into one object of the same
dimension and splits each fixed object into two halves, so the global index
halves.  Only this object-level arithmetic is modelled; no fusion rules are
invented for the quotient.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from math import fsum

from .doublegraph import dual_graph
from .fusion import build_ring, closure
from .modular import default_tolerance, s_matrix


class OrbifoldError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedSystem:
    """Objects with quantum dimensions plus the action of tensoring with ``current``.

    ``action[i]`` is the index of ``current x object i``; index 0 is the vacuum.
    """

    labels: tuple[str, ...]
    qdims: tuple[float, ...]
    action: tuple[int, ...]
    current: int
    tolerance: float = field(default_factory=default_tolerance)

    def __post_init__(self):
        size = len(self.labels)
        if len(self.qdims) != size or len(self.action) != size:
            raise OrbifoldError("labels, qdims and action must have equal length")
        if sorted(self.action) != list(range(size)):
            raise OrbifoldError("current action is not a permutation")
        if abs(self.qdims[0] - 1) > self.tolerance:
            raise OrbifoldError(f"vacuum has dimension {self.qdims[0]}")

    def __len__(self):
        return len(self.labels)

    @property
    def objects(self) -> tuple[tuple[str, float], ...]:
        return tuple(zip(self.labels, self.qdims))

    @property
    def global_index(self) -> float:
        return fsum(q * q for q in self.qdims)

    def fixed(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.action) if i == j)


@dataclass(frozen=True)
class QuotientStructure:
    merged: tuple[tuple[tuple[str, str], float], ...]
    split: tuple[tuple[str, float], ...]
    source_index: float

    @property
    def objects(self) -> tuple[tuple[str, float], ...]:
        out = [(f"[{x}~{y}]", q) for (x, y), q in self.merged]
        return tuple(out + list(self.split))

    @property
    def global_index(self) -> float:
        return fsum(q * q for _, q in self.objects)

    def __len__(self):
        return len(self.merged) + len(self.split)


@dataclass(frozen=True)
class IndexCase:
    value: float
    divisor: int
    description: str


def index_cases(gamma: float) -> tuple[IndexCase, ...]:
    """The three candidate global indices of the index-2 intermediate system."""
    if not gamma > 0:
        raise OrbifoldError(f"global index must be positive, got {gamma}")
    return (
        IndexCase(gamma / 4, 4, "strongly outer, trivial Loi invariant"),
        IndexCase(gamma / 2, 2, "strongly outer, non-trivial Loi invariant"),
        IndexCase(gamma / 8, 8, "not strongly outer"),
    )


def _require_param(n_param: int) -> int:
    if not isinstance(n_param, int) or n_param <= 2:
        raise OrbifoldError(f"n must be an integer > 2, got {n_param!r}")
    return 4 * n_param - 4


def field_system(n: int, k: int, members: Iterable[int] | None = None) -> WeightedSystem:
    """Fields of SU(n)_k (or a fusion-closed subset) with beta = sigma(vacuum).

    Tensoring with the simple current sigma(0) acts on labels as sigma; the
    subset must be stable under it.
    """
    md = s_matrix(n, k)
    table = md.table
    idx = tuple(range(len(table))) if members is None else tuple(sorted(set(members)))
    if idx[:1] != (0,):
        raise OrbifoldError("system must contain the vacuum")
    if closure(build_ring(n, k), idx) != idx:
        raise OrbifoldError(f"{idx} is not closed under fusion")
    sig = table.sigma()
    pos = {x: i for i, x in enumerate(idx)}
    if any(sig[x] not in pos for x in idx):
        raise OrbifoldError("system is not stable under the simple current")
    current = sig[0]
    return WeightedSystem(
        labels=tuple(str(table[x]) for x in idx),
        qdims=tuple(float(md.qdims[x]) for x in idx),
        action=tuple(pos[sig[x]] for x in idx),
        current=pos[current],
        tolerance=md.tolerance,
    )


def even_part_system(k: int) -> WeightedSystem:
    """Even labels {0, 2, ..., k} of SU(2)_k with beta = k."""
    if k % 2:
        raise OrbifoldError("even labels are closed under the simple current only for even k")
    return field_system(2, k, range(0, k + 1, 2))


def pairs_of_evens_subsystem(n_param: int) -> WeightedSystem:
    """Dual-graph even vertices of SU(2)_{4n-4} labelled by pairs of even labels.

    beta is the class of (0, k); it acts by (a, b) -> (a, k - b).  Classes with
    a or b the fixed label are sent to themselves, including both split halves
    of (f, f).
    """
    k = _require_param(n_param)
    g = dual_graph(2, k)
    chosen = [i for i, v in enumerate(g.even) if all(x % 2 == 0 for x in v.representative)]
    where: dict[tuple[int, int], int] = {}
    for pos, i in enumerate(chosen):
        if not g.even[i].is_split:
            for pair in g.even[i].orbit:
                where[pair] = pos
    labels, qdims, action = [], [], []
    for pos, i in enumerate(chosen):
        cls = g.even[i]
        a, b = cls.representative
        if cls.is_split:
            labels.append(f"({a},{b}){'+-'[cls.split_index]}")
            action.append(pos)
        else:
            labels.append(f"({a},{b})")
            action.append(where[(a, k - b)])
        qdims.append(cls.dimension)
    return WeightedSystem(tuple(labels), tuple(qdims), tuple(action), where[(0, k)],
                          s_matrix(2, k).tolerance)


def quotient_by_current(system: WeightedSystem) -> QuotientStructure:
    tol = system.tolerance
    if system.current == 0:
        raise OrbifoldError("current is the vacuum; nothing to divide by")
    if abs(system.qdims[system.current] - 1) > tol:
        raise OrbifoldError(f"current has dimension {system.qdims[system.current]}, not 1")
    act = system.action
    if any(act[act[i]] != i for i in range(len(system))):
        raise OrbifoldError("current does not act as an involution")
    merged, split = [], []
    for i, j in enumerate(act):
        qi, qj = system.qdims[i], system.qdims[j]
        if abs(qi - qj) > tol:
            raise OrbifoldError(f"dimensions differ inside orbit {system.labels[i]} ~ {system.labels[j]}")
        if i == j:
            split += [(f"{system.labels[i]}+", qi / 2), (f"{system.labels[i]}-", qi / 2)]
        elif i < j:
            merged.append(((system.labels[i], system.labels[j]), qi))
    q = QuotientStructure(tuple(merged), tuple(split), system.global_index)
    if abs(2 * q.global_index - q.source_index) > tol:
        raise OrbifoldError("quotient global index is not half the source index")
    return q


def invertible_objects(obj: QuotientStructure | WeightedSystem, tolerance: float | None = None) -> tuple[str, ...]:
    """Labels of objects with quantum dimension 1."""
    tol = default_tolerance() if tolerance is None else tolerance
    return tuple(label for label, q in obj.objects if abs(q - 1) < tol)


@dataclass(frozen=True)
class OrbifoldReport:
    n_param: int
    level: int
    m_index: float
    gamma: float
    n0_index: float
    n1_index: float
    n0_objects: int
    quotient_objects: int
    quotient_index: float
    invertible: tuple[str, ...]
    checks: tuple[tuple[str, bool, float], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def orbifold_report(n_param: int) -> OrbifoldReport:
    k = _require_param(n_param)
    tol = s_matrix(2, k).tolerance
    evens = even_part_system(k)
    m_index = evens.global_index
    gamma = m_index**2
    n0 = pairs_of_evens_subsystem(n_param)
    n1 = quotient_by_current(n0)
    single = quotient_by_current(evens)
    invertible = invertible_objects(single, tol)
    quarter = next(c.value for c in index_cases(gamma) if c.divisor == 4)

    checks = []

    def add(name: str, residual: float, ok: bool | None = None):
        checks.append((name, residual <= tol if ok is None else ok, residual))

    add("[N0] = gamma/2", abs(n0.global_index - gamma / 2))
    add("[N1] = [N0]/2", abs(n1.global_index - n0.global_index / 2))
    add("[N1] = gamma/4", abs(n1.global_index - quarter))
    add("[N1] = ([M]/2)^2", abs(n1.global_index - (m_index / 2) ** 2))
    add("quotient of evens = [M]/2", abs(single.global_index - m_index / 2))
    add("quotient object count = n+1", abs(len(single) - (n_param + 1)), len(single) == n_param + 1)
    add("one invertible object", abs(len(invertible) - 1), len(invertible) == 1)
    return OrbifoldReport(
        n_param=n_param,
        level=k,
        m_index=m_index,
        gamma=gamma,
        n0_index=n0.global_index,
        n1_index=n1.global_index,
        n0_objects=len(n0),
        quotient_objects=len(single),
        quotient_index=single.global_index,
        invertible=invertible,
        checks=tuple(checks),
    )

