"""Primary fields of SU(n)_k: alcove enumeration, grading, conjugation and the simple-current rotation."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

SUPPORTED_RANKS = (2, 3)


class AlcoveError(ValueError):
    """Raised for unsupported models or labels outside the level-k alcove."""


@dataclass(frozen=True, order=True)
class Field:
    """A primary field, stored as its Dynkin labels.

    ``rank`` is n for SU(n) so ``labels`` has n-1 entries.
    """

    labels: tuple[int, ...]
    rank: int
    level: int

    def __post_init__(self):
        if len(self.labels) != self.rank - 1:
            raise AlcoveError(f"SU({self.rank}) needs {self.rank - 1} Dynkin labels, got {self.labels}")
        if any(x < 0 for x in self.labels) or sum(self.labels) > self.level:
            raise AlcoveError(f"{self.labels} is outside the level-{self.level} alcove")

    @property
    def is_vacuum(self) -> bool:
        return not any(self.labels)

    def partition(self) -> tuple[int, ...]:
        """Row lengths of the Young diagram (n rows, last one 0)."""
        rows = [0] * self.rank
        for i in range(self.rank - 2, -1, -1):
            rows[i] = rows[i + 1] + self.labels[i]
        return tuple(rows)

    def young_label(self) -> str:
        """Display alias such as ``(42)``; the vacuum is ``(0)``."""
        rows = [r for r in self.partition() if r]
        return "(" + ("".join(map(str, rows)) or "0") + ")"

    def __str__(self):
        if self.rank == 2:
            return str(self.labels[0])
        return "(" + ",".join(map(str, self.labels)) + ")"


def check_model(n: int, k: int) -> None:
    if n not in SUPPORTED_RANKS:
        raise AlcoveError(f"unsupported rank SU({n}); supported: {SUPPORTED_RANKS}")
    if not isinstance(k, int) or k < 1:
        raise AlcoveError(f"level must be a positive integer, got {k!r}")


def from_young(rows: tuple[int, ...] | str, k: int) -> Field:
    """SU(3) field from Young diagram rows ``(r1, r2)`` or a string like ``"42"``."""
    if isinstance(rows, str):
        rows = tuple(int(c) for c in rows.strip("()")) if rows.strip("()") else (0,)
    r1, r2 = (list(rows) + [0, 0])[:2]
    if r2 > r1:
        raise AlcoveError(f"not a Young diagram: {rows}")
    return Field((r1 - r2, r2), 3, k)


def grading(x: Field) -> int:
    """n-ality: sum of i * lambda_i mod n."""
    return sum((i + 1) * lam for i, lam in enumerate(x.labels)) % x.rank


def conjugate(x: Field) -> Field:
    return Field(tuple(reversed(x.labels)), x.rank, x.level)


def sigma_act(x: Field, power: int = 1) -> Field:
    """Apply the outer automorphism of the affine diagram ``power`` times.

    The affine labels (lambda_0, lambda_1, ..., lambda_{n-1}) with
    lambda_0 = k - sum are rotated by one place, so lambda_1 takes the old
    lambda_0.
    """
    n = x.rank
    affine = [x.level - sum(x.labels), *x.labels]
    shift = power % n
    rotated = affine[-shift:] + affine[:-shift] if shift else affine
    return Field(tuple(rotated[1:]), n, x.level)


def fixed_point(n: int, k: int) -> Field:
    check_model(n, k)
    if k % n:
        raise AlcoveError(f"SU({n})_{k} has no sigma-fixed field since {n} does not divide {k}")
    return Field((k // n,) * (n - 1), n, k)


@dataclass(frozen=True)
class FieldTable:
    """All primary fields of SU(n)_k in canonical order (vacuum first, then lexicographic)."""

    rank: int
    level: int
    fields: tuple[Field, ...] = field(repr=False)

    def __len__(self):
        return len(self.fields)

    def __iter__(self):
        return iter(self.fields)

    def __getitem__(self, i: int) -> Field:
        return self.fields[i]

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {f.labels: i for i, f in enumerate(self.fields)}

    def index(self, x: Field | tuple[int, ...] | int) -> int:
        if isinstance(x, Field):
            x = x.labels
        elif isinstance(x, int):
            x = (x,)
        try:
            return self._index[tuple(x)]
        except KeyError:
            raise AlcoveError(f"{x} is not a field of SU({self.rank})_{self.level}") from None

    @cached_property
    def grades(self) -> tuple[int, ...]:
        return tuple(grading(f) for f in self.fields)

    @cached_property
    def conj(self) -> tuple[int, ...]:
        return tuple(self.index(conjugate(f)) for f in self.fields)

    def sigma(self, power: int = 1) -> tuple[int, ...]:
        """Permutation of field indices induced by ``sigma_act``."""
        return tuple(self.index(sigma_act(f, power)) for f in self.fields)

    def grade_indices(self, g: int = 0) -> tuple[int, ...]:
        return tuple(i for i, gr in enumerate(self.grades) if gr == g % self.rank)

    @property
    def vacuum(self) -> int:
        return 0


def enumerate_fields(n: int, k: int) -> FieldTable:
    check_model(n, k)
    labels = sorted(lab for lab in product(range(k + 1), repeat=n - 1) if sum(lab) <= k)
    return FieldTable(n, k, tuple(Field(lab, n, k) for lab in labels))
