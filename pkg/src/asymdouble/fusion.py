"""Exact fusion coefficients of SU(n)_k and the fusion ring built from them.

Two routes are provided: the closed SU(2) rule and the general Kac-Walton
folding of classical Littlewood-Richardson coefficients.  The modular module
supplies a third, numeric route (Verlinde) used as a cross-check.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from .alcove import AlcoveError, Field, FieldTable, check_model, enumerate_fields

FOLD_DEPTH = 64
MAX_SUBSYSTEM_FIELDS = 32

RingElement = dict  # field index -> multiplicity


class FoldingError(RuntimeError):
    """Affine Weyl folding did not reach the alcove within the depth bound."""


def fusion_su2(j: int, l: int, m: int, k: int) -> int:
    """Closed-form SU(2)_k fusion multiplicity of ``m`` in ``j x l``."""
    for lab in (j, l, m):
        if not 0 <= lab <= k:
            raise AlcoveError(f"label {lab} outside SU(2)_{k}")
    s = j + l + m
    return int(abs(j - l) <= m <= j + l and s % 2 == 0 and s <= 2 * k)


# -- classical Littlewood-Richardson ---------------------------------------


def _row_fillings(mu: Sequence[int], used: Sequence[int], cnt: Sequence[int], max_letter: int):
    """Yield letter-count vectors for one row that keep the reading word lattice."""
    m = len(mu)
    top = min(m, max_letter)
    ranges = [range(mu[i] - used[i] + 1) if i < top else range(1) for i in range(m)]
    for c in product(*ranges):
        # row is read right to left, i.e. largest letters first
        ok = True
        for i in range(1, m):
            if c[i] and cnt[i] + c[i] > cnt[i - 1]:
                ok = False
                break
        if ok:
            yield c


@lru_cache(maxsize=None)
def lr_product(lam: tuple[int, ...], mu: tuple[int, ...], rows: int) -> dict[tuple[int, ...], int]:
    """Classical product s_lam * s_mu restricted to partitions with at most ``rows`` rows.

    Coefficients are obtained by counting LR tableaux of shape nu/lam and
    content mu, built row by row.
    """
    lam = tuple(lam) + (0,) * (rows - len(lam))
    mu = tuple(p for p in mu if p)
    m = len(mu)
    out: dict[tuple[int, ...], int] = {}

    def rec(r, nu, prev_letters, used, cnt):
        if r == rows:
            if list(used) == list(mu):
                key = tuple(nu)
                out[key] = out.get(key, 0) + 1
            return
        for c in _row_fillings(mu, used, cnt, r + 1):
            length = sum(c)
            width = lam[r] + length
            if r and width > nu[r - 1]:
                continue
            letters = [i + 1 for i in range(m) for _ in range(c[i])]
            ok = True
            if r:
                for pos, letter in enumerate(letters):
                    col = lam[r] + pos
                    if col >= lam[r - 1]:
                        above = prev_letters[col - lam[r - 1]]
                        if letter <= above:
                            ok = False
                            break
            if not ok:
                continue
            new_used = [u + ci for u, ci in zip(used, c)]
            new_cnt = [u + ci for u, ci in zip(cnt, c)]
            rec(r + 1, nu + [width], letters, new_used, new_cnt)

    if m > rows:
        return {}
    rec(0, [], [], [0] * m, [0] * m)
    return out


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    rows = max(len(lam), len(mu), len(nu))
    nu = tuple(nu) + (0,) * (rows - len(nu))
    return lr_product(tuple(lam), tuple(mu), rows).get(nu, 0)


# -- Kac-Walton folding -----------------------------------------------------


def fold_to_alcove(partition: Sequence[int], k: int) -> tuple[int, tuple[int, ...]] | None:
    """Fold a dominant weight into the level-k alcove under the shifted affine Weyl action.

    Returns ``(sign, dynkin_labels)`` or ``None`` when the shifted weight
    lies on a wall.
    """
    n = len(partition)
    period = k + n
    x = [p + n - 1 - i for i, p in enumerate(partition)]
    sign = 1
    for _ in range(FOLD_DEPTH):
        # bubble sort to track the permutation sign
        for i in range(n):
            for j in range(n - 1 - i):
                if x[j] < x[j + 1]:
                    x[j], x[j + 1] = x[j + 1], x[j]
                    sign = -sign
        if any(x[i] == x[i + 1] for i in range(n - 1)):
            return None
        spread = x[0] - x[-1]
        if spread < period:
            return sign, tuple(x[i] - x[i + 1] - 1 for i in range(n - 1))
        if spread == period:
            return None
        x[0], x[-1] = x[-1] + period, x[0] - period
        sign = -sign
    raise FoldingError(f"weight {tuple(partition)} not folded within {FOLD_DEPTH} reflections at level {k}")


def _to_dynkin(nu: Sequence[int]) -> tuple[int, ...]:
    return tuple(nu[i] - nu[i + 1] for i in range(len(nu) - 1))


def fusion_product(a: Field, b: Field) -> dict[tuple[int, ...], int]:
    """Truncated tensor product ``a x b`` as ``{dynkin labels: multiplicity}``."""
    if (a.rank, a.level) != (b.rank, b.level):
        raise AlcoveError("fields belong to different models")
    n, k = a.rank, a.level
    result: dict[tuple[int, ...], int] = {}
    for nu, mult in lr_product(a.partition(), b.partition(), n).items():
        folded = fold_to_alcove(nu, k)
        if folded is None:
            continue
        sign, lab = folded
        result[lab] = result.get(lab, 0) + sign * mult
    if any(v < 0 for v in result.values()):
        raise FoldingError(f"negative multiplicity in {a} x {b}: {result}")
    return {lab: v for lab, v in sorted(result.items()) if v}


def fusion_coeff(a: Field, b: Field, c: Field, k: int | None = None) -> int:
    if k is not None and any(x.level != k for x in (a, b, c)):
        raise AlcoveError("field levels do not match k")
    return fusion_product(a, b).get(c.labels, 0)


# -- fusion ring ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Dense multiplicity tensor ``mult[a, b, c]`` over the canonical field order.

    ``members`` restricts the ring to a subsystem; the tensor is always the
    full one.
    """

    table: FieldTable
    mult: np.ndarray
    members: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.table.rank

    @property
    def level(self) -> int:
        return self.table.level

    @cached_property
    def member_mask(self) -> np.ndarray:
        mask = np.zeros(len(self.table), dtype=bool)
        mask[list(self.members)] = True
        return mask

    def N(self, a, b, c) -> int:
        t = self.table
        return int(self.mult[t.index(a), t.index(b), t.index(c)])

    def fusion_matrix(self, x: int) -> np.ndarray:
        """``Gamma_x[a, b] = N_{a x}^b`` over the full field set."""
        return self.mult[:, x, :]

    def view(self, members: Iterable[int]) -> FusionRing:
        return FusionRing(self.table, self.mult, tuple(sorted(set(members))))

    def is_closed(self, members: Iterable[int]) -> bool:
        return closure(self, members) == tuple(sorted(set(members)))


@lru_cache(maxsize=32)
def build_ring(n: int, k: int) -> FusionRing:
    check_model(n, k)
    table = enumerate_fields(n, k)
    size = len(table)
    mult = np.zeros((size, size, size), dtype=np.int64)
    for i in range(size):
        for j in range(i, size):
            for lab, v in fusion_product(table[i], table[j]).items():
                c = table.index(lab)
                mult[i, j, c] = mult[j, i, c] = v
    mult.setflags(write=False)
    return FusionRing(table, mult, tuple(range(size)))


def multiply(ring: FusionRing, u: Mapping[int, int], v: Mapping[int, int]) -> RingElement:
    """Bilinear extension of the fusion product to formal sums of fields."""
    out: dict[int, int] = {}
    for a, ca in u.items():
        for b, cb in v.items():
            if not (ca and cb):
                continue
            for c in np.flatnonzero(ring.mult[a, b]):
                out[int(c)] = out.get(int(c), 0) + ca * cb * int(ring.mult[a, b, c])
    return {c: out[c] for c in sorted(out) if out[c]}


def closure(ring: FusionRing, seed: Iterable[int]) -> tuple[int, ...]:
    """Smallest subset containing ``seed`` and the vacuum, closed under fusion and conjugation."""
    conj = ring.table.conj
    members = set(seed) | {0}
    members |= {conj[x] for x in members}
    frontier = list(members)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(members):
                new.update(int(c) for c in np.flatnonzero(ring.mult[a, b]))
        new = {x for x in new | {conj[x] for x in new} if x not in members}
        members |= new
        frontier = list(new)
    return tuple(sorted(members))


def grade_zero_subring(ring: FusionRing) -> FusionRing:
    members = ring.table.grade_indices(0)
    if closure(ring, members) != members:
        raise AssertionError("grade-0 fields are not closed under fusion")
    return ring.view(members)


def subsystems(ring: FusionRing) -> list[tuple[int, ...]]:
    """All fusion-closed, conjugation-closed subsets containing the vacuum.

    Every closed set is reached from ``{0}`` by repeatedly adjoining one
    field and taking the closure, so the search is exhaustive.
    """
    size = len(ring.members)
    if size > MAX_SUBSYSTEM_FIELDS:
        raise ValueError(f"refusing exhaustive subsystem search over {size} fields")
    start = closure(ring, ())
    found = {start}
    stack = [start]
    while stack:
        current = stack.pop()
        for x in ring.members:
            if x in current:
                continue
            nxt = closure(ring, current + (x,))
            if nxt not in found:
                found.add(nxt)
                stack.append(nxt)
    return sorted(found, key=lambda s: (len(s), s))


def global_index(members: Iterable[int], qdims: Sequence[float]) -> float:
    return float(sum(qdims[x] ** 2 for x in members))
