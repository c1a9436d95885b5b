"""Modular S-matrix, quantum dimensions, Verlinde coefficients and braiding-degeneracy tests."""

from __future__ import annotations

import os
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations

import numpy as np

from .alcove import FieldTable, check_model, enumerate_fields
from .fusion import FusionRing, build_ring, closure

DEFAULT_TOLERANCE = 1e-6
TOLERANCE_ENV = "ASYMDOUBLE_TOLERANCE"


def default_tolerance() -> float:
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return DEFAULT_TOLERANCE
    tol = float(raw)
    if not tol > 0:
        raise ValueError(f"{TOLERANCE_ENV} must be positive, got {raw!r}")
    return tol


class ModularDataError(ArithmeticError):
    pass


class NonIntegralError(ModularDataError):
    pass


class DegeneracyMismatch(ModularDataError):
    """Numeric degenerate set differs from the simple currents of a grade-0 system."""


@dataclass(frozen=True, eq=False)
class ModularData:
    table: FieldTable
    s: np.ndarray
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def rank(self) -> int:
        return self.table.rank

    @property
    def level(self) -> int:
        return self.table.level

    @cached_property
    def qdims(self) -> np.ndarray:
        row = self.s[0].real
        return row / row[0]

    def qdim(self, x) -> float:
        return float(self.qdims[self.table.index(x)])

    def check(self) -> None:
        s, tol = self.s, self.tolerance
        unit = np.abs(s @ s.conj().T - np.eye(len(s))).max()
        if unit > tol:
            raise ModularDataError(f"S is not unitary (residual {unit:.3e})")
        sym = np.abs(s - s.T).max()
        if sym > tol:
            raise ModularDataError(f"S is not symmetric (residual {sym:.3e})")
        row = s[0]
        if np.abs(row.imag).max() > tol or (row.real <= 0).any():
            raise ModularDataError("first row of S is not positive")


def _s_su2(k: int) -> np.ndarray:
    j = np.arange(k + 1)
    return np.sqrt(2 / (k + 2)) * np.sin(np.pi * np.outer(j + 1, j + 1) / (k + 2)) + 0j


def weyl_sum_s(table: FieldTable) -> np.ndarray:
    """S-matrix from the alternating Weyl-group sum, any rank.

    Shifted weights are written in partition coordinates, where the Weyl
    group acts by permutations.  Only the overall scalar is fixed afterwards
    (row 0 real positive with unit norm); unitarity is then a real check.
    """
    n, k = table.rank, table.level
    period = k + n
    rho = np.arange(n - 1, -1, -1)
    shifted = np.array([np.array(f.partition()) + rho for f in table], dtype=float)
    shifted -= shifted.mean(axis=1, keepdims=True)
    size = len(table)
    raw = np.zeros((size, size), dtype=complex)
    for perm in permutations(range(n)):
        sign = np.linalg.det(np.eye(n)[list(perm)])
        raw += sign * np.exp(-2j * np.pi * (shifted[:, perm] @ shifted.T) / period)
    phase = raw[0, 0] / abs(raw[0, 0])
    norm = np.linalg.norm(raw[0])
    return raw / (phase * norm)


def s_matrix(n: int, k: int, tolerance: float | None = None) -> ModularData:
    return _s_matrix(n, k, default_tolerance() if tolerance is None else float(tolerance))


@lru_cache(maxsize=64)
def _s_matrix(n: int, k: int, tolerance: float) -> ModularData:
    check_model(n, k)
    table = enumerate_fields(n, k)
    s = _s_su2(k) if n == 2 else weyl_sum_s(table)
    md = ModularData(table, s, tolerance)
    md.check()
    return md


def qdim(md: ModularData, x) -> float:
    return md.qdim(x)


def verlinde_tensor(md: ModularData) -> np.ndarray:
    """All ``sum_x S_ax S_bx conj(S_cx) / S_0x`` as a complex 3-tensor."""
    s = md.s
    return np.einsum("ax,bx,cx->abc", s / s[0], s, s.conj(), optimize=True)


def verlinde_coeff(md: ModularData, a, b, c) -> int:
    t = md.table
    ia, ib, ic = t.index(a), t.index(b), t.index(c)
    s = md.s
    value = np.sum(s[ia] * s[ib] * s[ic].conj() / s[0])
    nearest = round(value.real)
    if abs(value - nearest) > md.tolerance or nearest < 0:
        raise NonIntegralError(f"Verlinde value {value} for ({t[ia]}, {t[ib]}, {t[ic]}) is not a non-negative integer")
    return int(nearest)


def verlinde_integers(md: ModularData) -> tuple[np.ndarray, float]:
    """Rounded Verlinde tensor and its largest deviation from integers."""
    values = verlinde_tensor(md)
    rounded = np.rint(values.real)
    dev = float(np.abs(values - rounded).max())
    if dev > md.tolerance or (rounded < 0).any():
        a, b, c = np.unravel_index(np.abs(values - rounded).argmax(), values.shape)
        t = md.table
        raise NonIntegralError(f"Verlinde value at ({t[a]}, {t[b]}, {t[c]}) deviates by {dev:.3e}")
    return rounded.astype(np.int64), dev


def simple_currents(md: ModularData, subsystem: Iterable[int] | None = None,
                    ring: FusionRing | None = None) -> tuple[int, ...]:
    """Fields with quantum dimension 1, ordered as powers of sigma and restricted to ``subsystem``."""
    members = set(range(len(md.table)) if subsystem is None else subsystem)
    numeric = {x for x in members if abs(md.s[0, x] - md.s[0, 0]) < md.tolerance}
    sigma = md.table.sigma()
    orbit, x = [], 0
    for _ in range(md.rank):
        orbit.append(x)
        x = sigma[x]
    group = tuple(y for y in orbit if y in members)
    if set(group) != numeric:
        raise ModularDataError(f"qdim-1 fields {sorted(numeric)} do not match the sigma orbit {group}")
    ring = ring or build_ring(md.rank, md.level)
    if closure(ring, group) != tuple(sorted(group)):
        raise ModularDataError("simple currents are not closed under fusion")
    return group


def _braiding_residual(md: ModularData, x: int, members: Iterable[int]) -> float:
    s = md.s
    return max(abs(s[x, y] * s[0, 0] - s[x, 0] * s[0, y]) for y in members)


def degenerate_set(md: ModularData, subsystem: Iterable[int], check: bool = True) -> tuple[int, ...]:
    """Members x with S_xy S_00 = S_x0 S_0y for every y in the subsystem.

    For the grade-0 subsystem this must coincide with the simple currents it
    contains; with ``check`` a mismatch raises :class:`DegeneracyMismatch`.
    """
    members = tuple(sorted(set(subsystem)))
    found = tuple(x for x in members if _braiding_residual(md, x, members) < md.tolerance)
    if check and members == md.table.grade_indices(0):
        expected = tuple(sorted(simple_currents(md, members)))
        if found != expected:
            raise DegeneracyMismatch(
                f"SU({md.rank})_{md.level}: degenerate set {found} differs from simple currents {expected}"
            )
    return found


def trivially_braided_set(md: ModularData, subsystem: Iterable[int]) -> tuple[int, ...]:
    """Members x with S_xy = S_0y for all y in the subsystem (sufficient for degeneracy)."""
    members = tuple(sorted(set(subsystem)))
    s = md.s
    return tuple(x for x in members if max(abs(s[x, y] - s[0, y]) for y in members) < md.tolerance)


def sigma_row_check(md: ModularData) -> bool:
    if md.level % md.rank:
        raise ModularDataError(f"sigma-row identity needs {md.rank} | {md.level}")
    t = md.table
    sig = t.sigma()[0]
    return all(abs(md.s[0, y] - md.s[sig, y]) < md.tolerance for y in t.grade_indices(0))
