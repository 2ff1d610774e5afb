"""Boundary divisors, vital curves and their intersection pairing on M_{0,n}.

A vital curve is a partition of the markings into four nonempty blocks.  The
pairing of a boundary divisor ``D_J`` with the curve ``{T1, T2, T3, T4}`` is

    #{i != 1 : T1 u Ti in {J, J^c}}  -  #{i : Ti in {J, J^c}}

which does not depend on which block is called ``T1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

Subset = tuple[int, ...]


def _markings(n: int) -> frozenset[int]:
    return frozenset(range(1, n + 1))


@dataclass(frozen=True, order=True)
class BoundaryIndex:
    """One side of the split ``{I, I^c}``: the smaller one, or the one holding 1 on a tie."""

    n: int
    subset: Subset

    def __post_init__(self):
        side = frozenset(self.subset)
        full = _markings(self.n)
        if not side <= full:
            raise ValueError(f"{sorted(side)} is not a subset of 1..{self.n}")
        other = full - side
        if len(other) < len(side) or (len(other) == len(side) and 1 in other):
            side = other
        if not 2 <= len(side) <= self.n // 2:
            raise ValueError(f"boundary index needs 2 <= |I| <= {self.n // 2}, got {sorted(side)}")
        object.__setattr__(self, "subset", tuple(sorted(side)))

    @property
    def complement(self) -> Subset:
        return tuple(sorted(_markings(self.n) - set(self.subset)))

    def sides(self) -> tuple[frozenset[int], frozenset[int]]:
        return frozenset(self.subset), frozenset(self.complement)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.subset)) + "}"


def boundary(n: int, subset: Iterable[int]) -> BoundaryIndex:
    return BoundaryIndex(n, tuple(subset))


@lru_cache(maxsize=None)
def boundary_indices(n: int) -> tuple[BoundaryIndex, ...]:
    """Every boundary divisor of M_{0,n}, sorted by (|I|, I)."""
    seen = {}
    for size in range(2, n // 2 + 1):
        for subset in combinations(range(1, n + 1), size):
            b = BoundaryIndex(n, subset)
            seen[b.subset] = b
    return tuple(sorted(seen.values(), key=lambda b: (len(b.subset), b.subset)))


@dataclass(frozen=True)
class VitalCurve:
    n: int
    blocks: tuple[Subset, ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        if len(blocks) != 4 or any(not b for b in blocks):
            raise ValueError("a vital curve needs four nonempty blocks")
        flat = [i for b in blocks for i in b]
        if sorted(flat) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def doubleton(self) -> Subset | None:
        """The unique two-element block when n = 5."""
        pairs = [b for b in self.blocks if len(b) == 2]
        return pairs[0] if len(pairs) == 1 and self.n == 5 else None

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def curve(n: int, *blocks: Iterable[int]) -> VitalCurve:
    return VitalCurve(n, tuple(tuple(b) for b in blocks))


def _set_partitions(items: list[int], k: int):
    # restricted growth: each element joins an existing block or opens the next one
    if not items:
        if k == 0:
            yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest, k - 1):
        yield [[first]] + part
    for part in _set_partitions(rest, k):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


@lru_cache(maxsize=None)
def all_vital_curves(n: int) -> tuple[VitalCurve, ...]:
    """All partitions of 1..n into four blocks, ordered by block minima then blocks."""
    if n < 4:
        raise ValueError(f"vital curves need n >= 4, got {n}")
    curves = {VitalCurve(n, tuple(tuple(b) for b in p)) for p in _set_partitions(list(range(1, n + 1)), 4)}
    return tuple(sorted(curves, key=lambda c: (tuple(b[0] for b in c.blocks), c.blocks)))


def _gamma(sides, blocks: list[frozenset[int]], first: int) -> int:
    t1 = blocks[first]
    unions = sum(1 for i, t in enumerate(blocks) if i != first and (t1 | t) in sides)
    equal = sum(1 for t in blocks if t in sides)
    return unions - equal


@lru_cache(maxsize=None)
def intersect_divisor_curve(j: BoundaryIndex, c: VitalCurve) -> int:
    """``D_J . C`` for a boundary divisor and a vital curve."""
    if j.n != c.n:
        raise ValueError(f"dimension mismatch: divisor on n={j.n}, curve on n={c.n}")
    sides = j.sides()
    blocks = [frozenset(b) for b in c.blocks]
    values = {_gamma(sides, blocks, first) for first in range(4)}
    if len(values) != 1:
        raise AssertionError(f"pairing of {j} with {c} depends on the distinguished block: {values}")
    return values.pop()


@dataclass(frozen=True)
class DivisorClass:
    """A rational combination of boundary divisors; zero coefficients are dropped."""

    n: int
    coefficients: Mapping[BoundaryIndex, Fraction]

    def __post_init__(self):
        clean = {}
        for key, value in self.coefficients.items():
            if key.n != self.n:
                raise ValueError(f"index {key} lives on n={key.n}, class on n={self.n}")
            if type(value) is not Fraction:
                value = Fraction(value)
            if value:
                clean[key] = value
        object.__setattr__(self, "coefficients", dict(sorted(clean.items(), key=lambda kv: (len(kv[0].subset), kv[0].subset))))

    def __hash__(self):
        return hash((self.n, tuple(self.coefficients.items())))

    def coefficient(self, key: BoundaryIndex) -> Fraction:
        return self.coefficients.get(key, Fraction(0))

    def _check(self, other: DivisorClass) -> None:
        if other.n != self.n:
            raise ValueError("dimension mismatch")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        out = dict(self.coefficients)
        for key, value in other.coefficients.items():
            out[key] = out.get(key, Fraction(0)) + value
        return DivisorClass(self.n, out)

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.n, {k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def __rmul__(self, scalar) -> DivisorClass:
        scalar = Fraction(scalar)
        return DivisorClass(self.n, {k: scalar * v for k, v in self.coefficients.items()})

    def is_zero(self) -> bool:
        return not self.coefficients


def zero_class(n: int) -> DivisorClass:
    return DivisorClass(n, {})


def divisor(n: int, subset: Iterable[int], coefficient=1) -> DivisorClass:
    return DivisorClass(n, {boundary(n, subset): Fraction(coefficient)})


def boundary_sum(n: int, indices: Iterable[BoundaryIndex] | None = None) -> DivisorClass:
    """Sum of the given boundary divisors; all of them (the class E) by default."""
    if indices is None:
        return _total_boundary(n)
    out: dict[BoundaryIndex, Fraction] = {}
    for key in indices:
        out[key] = out.get(key, Fraction(0)) + 1
    return DivisorClass(n, out)


@lru_cache(maxsize=None)
def _total_boundary(n: int) -> DivisorClass:
    return DivisorClass(n, {key: Fraction(1) for key in boundary_indices(n)})


def pair(d: DivisorClass, c: VitalCurve) -> Fraction:
    if d.n != c.n:
        raise ValueError(f"dimension mismatch: class on n={d.n}, curve on n={c.n}")
    total = Fraction(0)
    for k, v in d.coefficients.items():
        m = intersect_divisor_curve(k, c)
        if m:
            total += v * m
    return total


def pairing_vector(d: DivisorClass) -> tuple[Fraction, ...]:
    return tuple(pair(d, c) for c in all_vital_curves(d.n))


@dataclass(frozen=True)
class FNefVerdict:
    nef: bool
    curve: VitalCurve | None = None
    value: Fraction | None = None

    def __bool__(self) -> bool:
        return self.nef


def is_f_nef(d: DivisorClass) -> FNefVerdict:
    """Nonnegative against every vital curve; otherwise the first curve that fails."""
    for c in all_vital_curves(d.n):
        value = pair(d, c)
        if value < 0:
            return FNefVerdict(False, c, value)
    return FNefVerdict(True)


def classes_equal(x: DivisorClass, y: DivisorClass) -> bool:
    """Numerical equivalence on M_{0,5}, tested against the ten vital curves."""
    if x.n != 5 or y.n != 5:
        raise ValueError("class comparison is only supported for n = 5")
    return pairing_vector(x - y) == (Fraction(0),) * len(all_vital_curves(5))


def pairing_matrix(n: int = 5) -> list[list[int]]:
    """Rows: boundary divisors in canonical order; columns: vital curves."""
    return [[intersect_divisor_curve(j, c) for c in all_vital_curves(n)] for j in boundary_indices(n)]


def curve_for_doubleton(pair_: Iterable[int]) -> VitalCurve:
    """The n = 5 vital curve whose only two-element block is ``pair_``."""
    block = tuple(sorted(pair_))
    rest = [i for i in range(1, 6) if i not in block]
    return curve(5, block, *([i] for i in rest))
