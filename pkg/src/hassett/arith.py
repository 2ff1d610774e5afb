"""Exact rationals, affine forms and a strict-inequality feasibility oracle.

Feasibility of an open polyhedron ``{x : f_i(x) > 0, g_j(x) >= 0}`` is decided
by one exact linear program: maximize a slack ``t`` subject to ``f_i(x) >= t``
and ``t <= 1``.  The LP is solved through its dual with an integer-pivoting
(fraction-free) tableau and Bland's rule, so every intermediate quantity is an
exact integer and the result never depends on a tolerance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?")


class ParseError(ValueError):
    """Raised for malformed rational literals."""


class InfeasibleError(ValueError):
    """Raised when an interior point is requested for an empty system."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (optionally negative) into a reduced Fraction."""
    token = text.strip()
    if not _RATIONAL_RE.fullmatch(token):
        raise ParseError(f"malformed rational literal {text!r}")
    num, _, den = token.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class LinearForm:
    """The affine function ``x -> coefficients . x + constant``."""

    coefficients: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        object.__setattr__(self, "constant", Fraction(self.constant))
        if not self.coefficients:
            raise ValueError("a linear form needs at least one coordinate")

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def __call__(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.dim:
            raise ValueError(f"point has dimension {len(point)}, form has {self.dim}")
        return sum((c * x for c, x in zip(self.coefficients, point) if c), self.constant)

    def __neg__(self) -> LinearForm:
        return LinearForm(tuple(-c for c in self.coefficients), -self.constant)

    def __add__(self, other: LinearForm) -> LinearForm:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return LinearForm(
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients)),
            self.constant + other.constant,
        )

    def __sub__(self, other: LinearForm) -> LinearForm:
        return self + (-other)

    @classmethod
    def indicator(cls, n: int, subset: Iterable[int], constant=0) -> LinearForm:
        """``sum(x_i for i in subset) + constant`` with 0-based indices."""
        members = set(subset)
        return cls(tuple(Fraction(1 if i in members else 0) for i in range(n)), Fraction(constant))

    @cached_property
    def integer_row(self) -> tuple[tuple[int, ...], int]:
        """Positive rescaling of (coefficients, constant) to coprime integers."""
        den = lcm(*(q.denominator for q in self.coefficients), self.constant.denominator)
        row = [int(q * den) for q in self.coefficients]
        const = int(self.constant * den)
        g = gcd(*row, const)
        if g > 1:
            row = [v // g for v in row]
            const //= g
        return tuple(row), const


@dataclass(frozen=True)
class StrictSystem:
    """Conjunction of ``form > 0`` (strict) and ``form >= 0`` (weak) constraints."""

    strict: tuple[LinearForm, ...]
    weak: tuple[LinearForm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "strict", tuple(self.strict))
        object.__setattr__(self, "weak", tuple(self.weak))
        dims = {f.dim for f in self.strict + self.weak}
        if len(dims) > 1:
            raise ValueError(f"constraints disagree on dimension: {sorted(dims)}")
        if not dims:
            raise ValueError("empty system has no dimension")

    @property
    def dim(self) -> int:
        return (self.strict + self.weak)[0].dim

    def extend(self, strict=(), weak=()) -> StrictSystem:
        return StrictSystem(self.strict + tuple(strict), self.weak + tuple(weak))

    def holds_at(self, point: Sequence[Fraction]) -> bool:
        return all(f(point) > 0 for f in self.strict) and all(g(point) >= 0 for g in self.weak)


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None
    slack: Fraction | None = None

    def __bool__(self) -> bool:
        return self.feasible


def max_slack(rows: np.ndarray):
    """Maximize t over ``{(x, t): coef . x + const >= tcoef * t for each row, t <= 1}``.

    ``rows`` is an integer matrix whose rows are ``[coef..., const, tcoef]``
    with ``tcoef`` in {0, 1}.  Returns ``(numerators, denominator)`` of the
    optimal ``(x, t)`` over one shared positive denominator, or ``None`` when
    the constraint set is empty.

    Works on the dual ``min b.y  s.t.  A^T y = e_t, y >= 0`` where the primal
    rows read ``-coef . x + tcoef * t <= const``.  The tableau is kept as an
    integer matrix scaled by the current basis determinant (Edmonds pivoting),
    so every division below is exact.  Its last row holds the reduced costs and
    the identity block records the basis inverse, from which the primal point
    is read off at the end.
    """
    m0, width0 = rows.shape
    dim = width0 - 2
    d = dim + 1
    m = m0 + 1  # + cap row t <= 1
    cap = m0
    rhs = m + d
    tab = np.zeros((d + 1, rhs + 1), dtype=_tableau_dtype(rows, d + 1))
    tab[:dim, :m0] = -rows[:, :dim].T
    tab[dim, :m0] = rows[:, dim + 1]
    tab[d, :m0] = rows[:, dim]
    tab[dim, cap] = 1
    tab[d, cap] = 1
    tab[np.arange(d), m + np.arange(d)] = 1
    tab[dim, rhs] = 1
    basis = list(range(m, m + d))
    det = 1

    def pivot(r: int, s: int) -> None:
        nonlocal tab, det
        p = tab[r, s]
        prow = tab[r].copy()
        new = (tab * p - tab[:, s : s + 1] * prow) // det
        new[r] = prow
        if p < 0:
            new = -new
            p = -p
        tab = new
        det = p
        basis[r] = s

    # Starting basis: the cap column for the t-row, then one degenerate pivot
    # per coordinate row (rhs 0, so the pivot sign is irrelevant).  A row with
    # no nonzero entry keeps its identity column: that coordinate is unused.
    pivot(dim, cap)
    for j in range(dim):
        nz = tab[j, :m].nonzero()[0]
        if nz.size:
            pivot(j, int(nz[0]))

    while True:
        neg = (tab[d, :m] < 0).nonzero()[0]
        if not neg.size:
            break
        s = int(neg[0])  # Bland: lowest-index improving column
        best = -1
        for i in (tab[:d, s] > 0).nonzero()[0].tolist():
            if best < 0:
                best = i
                continue
            lhs = tab[i, rhs] * tab[best, s]
            cur = tab[best, rhs] * tab[i, s]
            if lhs < cur or (lhs == cur and basis[i] < basis[best]):
                best = i
        if best < 0:
            return None  # dual unbounded: primal empty
        pivot(best, s)

    return [-int(v) for v in tab[d, m : m + d]], int(det)


def _tableau_dtype(rows: np.ndarray, minor: int):
    # Every tableau entry is a subdeterminant of the initial matrix, bounded by
    # the product of the largest column norms (Hadamard).  A pivot multiplies
    # two entries, so int64 is safe while twice that bound squared fits.
    with np.errstate(over="ignore"):
        norms = np.sqrt((rows.astype(float) ** 2).sum(axis=1))
    norms = np.sort(np.concatenate([norms, [2**0.5]]))[::-1][:minor]
    bound = float(np.prod(np.maximum(norms, 1.0)))
    return np.int64 if 2 * bound * bound < 2.0**62 else object


def int_rows(forms: Iterable[LinearForm], tcoef: int) -> np.ndarray:
    """Stack forms as integer rows ``[coef..., const, tcoef]``."""
    data = [f.integer_row[0] + (f.integer_row[1], tcoef) for f in forms]
    arr = np.array(data, dtype=object)
    if arr.size and max(abs(int(v)) for v in arr.flat) < 2**31:
        arr = arr.astype(np.int64)
    return arr


def _rows_for(system: StrictSystem, slack_weak: bool) -> np.ndarray:
    parts = [int_rows(system.strict, 1)] if system.strict else []
    if system.weak:
        parts.append(int_rows(system.weak, 1 if slack_weak else 0))
    if any(p.dtype == object for p in parts):
        parts = [p.astype(object) for p in parts]
    return np.vstack(parts)


def verify_point(rows: np.ndarray, nums: Sequence[int], den: int, strict_mask: np.ndarray) -> bool:
    """Exact check of ``nums/den`` against rows (strict where ``strict_mask``)."""
    x = list(nums[:-1]) + [den]
    small = rows.dtype != object and max(abs(v) for v in x) < 2**24
    vals = rows[:, :-1] @ np.array(x, dtype=np.int64 if small else object)
    if not small:
        vals = np.array([int(v) for v in vals], dtype=object)
    return bool(np.all(vals[strict_mask] > 0) and np.all(vals[~strict_mask] >= 0))


def strict_witness(rows: np.ndarray) -> tuple[list[int], int] | None:
    """Slack-maximizing point for an all-strict row matrix, verified exactly.

    Same contract as :func:`strict_feasible` on prebuilt ``[coef, const, 1]``
    rows; returns integer numerators of the point (slack dropped) and their
    common denominator.
    """
    sol = max_slack(rows)
    if sol is None or sol[0][-1] <= 0:
        return None
    nums, den = sol
    if not verify_point(rows, nums, den, np.ones(len(rows), dtype=bool)):
        raise AssertionError("simplex witness failed exact re-substitution")
    return nums[:-1], den


def strict_feasible(system: StrictSystem) -> Feasibility:
    """Decide whether the system has a solution.

    A feasible answer carries the slack-maximizing witness; it has been checked
    against every constraint by exact substitution before being returned.

    The slack is first put on every row, weak ones included, so that a positive
    optimum lands strictly inside the weak constraints as well.  Only an optimum
    of exactly zero is ambiguous (weak rows may pin an equality); in that case
    the program with slack on the strict rows alone decides.
    """
    rows = _rows_for(system, True)
    sol = max_slack(rows)
    if sol is not None and sol[0][-1] == 0 and system.weak:
        rows = _rows_for(system, False)
        sol = max_slack(rows)
    if sol is None or sol[0][-1] <= 0:
        return Feasibility(False)
    nums, den = sol
    strict_mask = np.arange(len(rows)) < len(system.strict)
    if not verify_point(rows, nums, den, strict_mask):
        raise AssertionError("simplex witness failed exact re-substitution")
    point = tuple(Fraction(v, den) for v in nums)
    return Feasibility(True, point[:-1], point[-1])


def interior_point(system: StrictSystem) -> tuple[Fraction, ...]:
    result = strict_feasible(system)
    if not result:
        raise InfeasibleError("system has no interior point")
    return result.witness
