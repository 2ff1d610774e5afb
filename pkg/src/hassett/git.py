"""Hilbert-Mumford stability of weighted points on the projective line.

Weights are rescaled so that they sum to 2.  A configuration in which the
markings of a group ``T`` collide is then unstable when ``r(T) > 1``,
strictly semistable when the heaviest group has ``r(T) = 1`` and stable
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .chambers import Chamber, enumerate_chambers

Subset = tuple[int, ...]


class Stability(str, Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly_semistable"
    UNSTABLE = "unstable"


class AtypicalWeightError(ValueError):
    """Raised when a chamber match is requested for a weight on a GIT wall."""


@dataclass(frozen=True)
class GITWeight:
    r: tuple[Fraction, ...]

    def __post_init__(self):
        raw = tuple(Fraction(x) for x in self.r)
        if not raw:
            raise ValueError("empty weight vector")
        for i, x in enumerate(raw, 1):
            if x <= 0:
                raise ValueError(f"r_{i} = {x} must be positive")
        total = sum(raw)
        object.__setattr__(self, "r", tuple(2 * x / total for x in raw))

    @property
    def n(self) -> int:
        return len(self.r)

    def __call__(self, subset: Iterable[int]) -> Fraction:
        return sum((self.r[i - 1] for i in subset), Fraction(0))


@dataclass(frozen=True)
class CollisionPattern:
    groups: tuple[Subset, ...]

    def __post_init__(self):
        groups = tuple(sorted(tuple(sorted(g)) for g in self.groups))
        if any(not g for g in groups):
            raise ValueError("collision groups must be nonempty")
        flat = sorted(i for g in groups for i in g)
        if flat != list(range(1, len(flat) + 1)):
            raise ValueError(f"groups {groups} do not partition 1..{len(flat)}")
        object.__setattr__(self, "groups", groups)

    @property
    def n(self) -> int:
        return sum(len(g) for g in self.groups)

    @classmethod
    def singletons(cls, n: int) -> CollisionPattern:
        return cls(tuple((i,) for i in range(1, n + 1)))


def classify_configuration(w: GITWeight, p: CollisionPattern) -> Stability:
    if w.n != p.n:
        raise ValueError(f"dimension mismatch: weight has {w.n} entries, pattern {p.n}")
    heaviest = max(w(g) for g in p.groups)
    if heaviest > 1:
        return Stability.UNSTABLE
    if heaviest == 1:
        return Stability.STRICTLY_SEMISTABLE
    return Stability.STABLE


def strictly_semistable_points(w: GITWeight) -> list[tuple[Subset, Subset]]:
    """Pairs ``(T, T^c)`` with ``r(T) = 1`` and ``2 <= |T| <= n - 2``; ``T`` holds marking 1."""
    n = w.n
    out = []
    for size in range(2, n - 1):
        for t in combinations(range(1, n + 1), size):
            if 1 in t and w(t) == 1:
                rest = tuple(i for i in range(1, n + 1) if i not in t)
                out.append((t, rest))
    return out


def is_typical(w: GITWeight) -> bool:
    return not strictly_semistable_points(w)


def git_d_set(w: GITWeight) -> frozenset[frozenset[int]]:
    """``{S^c : |S| = 3, r(S) < 1}`` for n = 5."""
    full = frozenset(range(1, w.n + 1))
    return frozenset(full - frozenset(s) for s in combinations(range(1, w.n + 1), 3) if w(s) < 1)


def match_chamber(w: GITWeight, chambers: Sequence[Chamber] | None = None) -> Chamber:
    """The n = 5 Hassett chamber with the same contracted set as a typical GIT weight."""
    if w.n != 5:
        raise ValueError("chamber matching is defined for n = 5 only")
    big = [i for i, x in enumerate(w.r, 1) if x >= 1]
    if big:
        raise ValueError(f"normalized r_{big[0]} = {w.r[big[0] - 1]} is not below 1")
    if not is_typical(w):
        raise AtypicalWeightError("weight admits strictly semistable points")
    d_set = git_d_set(w)
    for c in chambers if chambers is not None else enumerate_chambers(5):
        if c.d_set == d_set:
            return c
    raise AssertionError(f"D-set {sorted(map(sorted, d_set))} of a typical weight matches no chamber")
