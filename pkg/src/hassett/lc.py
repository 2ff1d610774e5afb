"""Log canonical divisors on M_{0,5} and the symmetric-weight pullback algebra.

On M_{0,5} the canonical class is ``K = -(1/2) E`` where ``E`` is the sum of
the ten boundary divisors.  For a chamber with contracted set ``D`` put
``F = E - sum_{I in D} D_I`` and

    L(beta) = K + (3 beta - 1) sum_D D_I + beta F = 3 (beta - 1/2) sum_D D_I + (beta - 1/2) F.

The symmetric part works with the classes ``D(j) = sum_{|I| = j} D_I`` on the
space with weights ``n * (1/k)``, where the levels ``3..k`` are contracted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

from .chambers import Chamber
from .dp5 import ContractionPlan, SurfaceIdentification, identify_surface, order_along_center
from .intersection import (
    DivisorClass,
    VitalCurve,
    all_vital_curves,
    boundary,
    boundary_sum,
    classes_equal,
    pair,
    pairing_vector,
)

HALF = Fraction(1, 2)


def canonical_divisor_m05() -> DivisorClass:
    return -HALF * boundary_sum(5)


def contracted_sum(chamber: Chamber) -> DivisorClass:
    return boundary_sum(5, [boundary(5, i) for i in chamber.d_set])


def build_F(chamber: Chamber) -> DivisorClass:
    return boundary_sum(5) - contracted_sum(chamber)


def build_L(chamber: Chamber, beta) -> DivisorClass:
    beta = Fraction(beta)
    dsum = contracted_sum(chamber)
    f = build_F(chamber)
    value = canonical_divisor_m05() + (3 * beta - 1) * dsum + beta * f
    rewritten = 3 * (beta - HALF) * dsum + (beta - HALF) * f
    if not classes_equal(value, rewritten):
        raise AssertionError(f"L({beta}) disagrees with its rewriting on chamber {chamber.id}")
    return value


@dataclass(frozen=True)
class LCInput:
    chamber: Chamber
    alphas: Mapping[frozenset, Fraction]
    beta: Fraction

    def __post_init__(self):
        alphas = {frozenset(k): Fraction(v) for k, v in self.alphas.items()}
        if set(alphas) != set(self.chamber.d_set):
            raise ValueError("alpha keys must be exactly the chamber's D-set")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "beta", Fraction(self.beta))

    @classmethod
    def uniform(cls, chamber: Chamber, alpha, beta) -> LCInput:
        return cls(chamber, {i: Fraction(alpha) for i in chamber.d_set}, Fraction(beta))

    def residuals(self) -> dict[frozenset, Fraction]:
        """``alpha_I - 3 beta + 1`` per contracted index."""
        return {i: a - 3 * self.beta + 1 for i, a in self.alphas.items()}


@dataclass(frozen=True)
class Eq1Result:
    holds: bool
    effective: bool
    residual: DivisorClass
    failing_curve: VitalCurve | None = None

    def __bool__(self) -> bool:
        return self.holds


def verify_eq1(inp: LCInput) -> Eq1Result:
    """Check ``K + sum a_I D_I + beta F = rho^*(K' + beta F') + sum (a_I - 3 beta + 1) D_I``.

    The pullbacks are eliminated with ``rho^* K' = K - sum_D D_I`` and
    ``rho^* F' = F + sum_D m_I D_I`` where ``m_I`` is the multiplicity from
    ``order_along_center``.
    """
    chamber, beta = inp.chamber, inp.beta
    plan = ContractionPlan.of(chamber)
    k = canonical_divisor_m05()
    f = build_F(chamber)
    dsum = contracted_sum(chamber)
    lhs = k + beta * f
    for i, a in inp.alphas.items():
        lhs = lhs + a * boundary_sum(5, [boundary(5, i)])
    pull_k = k - dsum
    pull_f = f
    for i in plan.contracted:
        pull_f = pull_f + order_along_center(plan, i) * boundary_sum(5, [i])
    residual = DivisorClass(5, {boundary(5, i): r for i, r in inp.residuals().items()})
    rhs = pull_k + beta * pull_f + residual
    failing = None
    if not classes_equal(lhs, rhs):
        diff = pairing_vector(lhs - rhs)
        failing = next(c for c, v in zip(all_vital_curves(5), diff) if v)
    effective = all(r >= 0 for r in inp.residuals().values())
    return Eq1Result(failing is None, effective, residual, failing)


@dataclass(frozen=True)
class Certificate:
    curve: VitalCurve
    value: Fraction
    contracted: bool  # the curve's doubleton block lies in D


@dataclass(frozen=True)
class ModelVerdict:
    in_range: bool
    boundary: bool  # some alpha_I - 3 beta + 1 is exactly 0
    surface: SurfaceIdentification
    certificates: tuple[Certificate, ...]
    certified: bool  # zero exactly on contracted curves, positive elsewhere (beta > 1/2 only)


def identify_lc_model(inp: LCInput) -> ModelVerdict:
    chamber, beta = inp.chamber, inp.beta
    residuals = inp.residuals().values()
    in_range = beta > HALF and all(r >= 0 for r in residuals)
    on_boundary = any(r == 0 for r in residuals)
    lclass = build_L(chamber, beta)
    certs = []
    for c in all_vital_curves(5):
        certs.append(Certificate(c, pair(lclass, c), frozenset(c.doubleton()) in chamber.d_set))
    certified = False
    if beta > HALF:
        certified = all((x.value == 0) if x.contracted else (x.value > 0) for x in certs)
        if not certified:
            raise AssertionError(f"L({beta}) certificate fails on chamber {chamber.id}")
    return ModelVerdict(in_range, on_boundary, identify_surface(chamber), tuple(certs), certified)


# -- symmetric weights n * (1/k) -------------------------------------------


@dataclass(frozen=True)
class SymmetricDivisor:
    """Coefficients over ``D(j)`` for ``j`` in ``{2} u {k+1, ..., floor(n/2)}``."""

    n: int
    k: int
    coefficients: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        coeffs = {int(j): Fraction(v) for j, v in self.coefficients.items()}
        bad = [j for j in coeffs if j not in self.levels()]
        if bad:
            raise ValueError(f"levels {bad} are not in the basis for n={self.n}, k={self.k}")
        object.__setattr__(self, "coefficients", {j: coeffs.get(j, Fraction(0)) for j in self.levels()})

    def levels(self) -> tuple[int, ...]:
        return (2,) + tuple(range(self.k + 1, self.n // 2 + 1))

    def __getitem__(self, j: int) -> Fraction:
        return self.coefficients.get(j, Fraction(0))

    def _same(self, other: SymmetricDivisor) -> None:
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError("symmetric divisors live on different spaces")

    def __add__(self, other: SymmetricDivisor) -> SymmetricDivisor:
        self._same(other)
        return SymmetricDivisor(self.n, self.k, {j: self[j] + other[j] for j in self.levels()})

    def __sub__(self, other: SymmetricDivisor) -> SymmetricDivisor:
        self._same(other)
        return SymmetricDivisor(self.n, self.k, {j: self[j] - other[j] for j in self.levels()})

    def __rmul__(self, scalar) -> SymmetricDivisor:
        return SymmetricDivisor(self.n, self.k, {j: Fraction(scalar) * v for j, v in self.coefficients.items()})


def _check_level(n: int, k: int) -> None:
    if not 2 <= k <= (n - 1) // 2:
        raise ValueError(f"level k={k} outside 2..{(n - 1) // 2} for n={n}")


def canonical_divisor_sym(n: int, k: int) -> SymmetricDivisor:
    """``K = -(2/(n-1)) D(2) + sum_{j > k} (-(2/(n-1)) C(j,2) + j - 2) D(j)``."""
    _check_level(n, k)
    c = Fraction(2, n - 1)
    coeffs = {2: -c}
    for j in range(k + 1, n // 2 + 1):
        coeffs[j] = -c * comb(j, 2) + j - 2
    return SymmetricDivisor(n, k, coeffs)


def boundary_sym(n: int, k: int) -> SymmetricDivisor:
    """The full boundary at level k: ``D(2) + sum_{j > k} D(j)``."""
    _check_level(n, k)
    return SymmetricDivisor(n, k, {j: 1 for j in (2,) + tuple(range(k + 1, n // 2 + 1))})


def pullback_sym(n: int, k: int, ell: int, d: SymmetricDivisor) -> SymmetricDivisor:
    """Pull a level-k class back to level ``k - ell``.

    ``D(2)`` acquires ``C(j,2) D(j)`` on each newly exposed level ``j`` in
    ``k-ell+1..k``; the levels above ``k`` pull back to themselves.
    """
    _check_level(n, k)
    low = k - ell
    if not 2 <= low < k:
        raise ValueError(f"need 2 <= k - l < k, got k={k}, l={ell}")
    if (d.n, d.k) != (n, k):
        raise ValueError("divisor does not live at the source level")
    coeffs = {2: d[2]}
    for j in range(low + 1, k + 1):
        coeffs[j] = comb(j, 2) * d[2]
    for j in range(k + 1, n // 2 + 1):
        coeffs[j] = d[j]
    return SymmetricDivisor(n, low, coeffs)


@dataclass(frozen=True)
class Discrepancy:
    n: int
    k: int
    ell: int
    alpha: Fraction
    divisor: SymmetricDivisor  # at level k - ell
    display_values: dict  # the closed form alpha + (2/(n-1)) C(j,2) + j - 2, per exceptional level

    def exceptional_levels(self) -> tuple[int, ...]:
        return tuple(range(self.k - self.ell + 1, self.k + 1))

    @property
    def effective(self) -> bool:
        return all(v >= 0 for v in self.divisor.coefficients.values())


def discrepancy_sym(n: int, k: int, ell: int, alpha) -> Discrepancy:
    """``K_B + alpha D_B - rho^*(K_A + alpha D_A)`` at level ``k - ell``.

    Must be supported on the contracted levels ``k-ell+1..k``.
    """
    alpha = Fraction(alpha)
    low = k - ell
    _check_level(n, k)
    k_low = canonical_divisor_sym(n, low)
    a_term = pullback_sym(n, k, ell, canonical_divisor_sym(n, k) + alpha * boundary_sym(n, k))
    diff = k_low + alpha * boundary_sym(n, low) - a_term
    outside = [j for j, v in diff.coefficients.items() if v and not low < j <= k]
    if outside:
        raise AssertionError(f"discrepancy not exceptional: nonzero on levels {outside}")
    display = {j: alpha + Fraction(2, n - 1) * comb(j, 2) + j - 2 for j in range(low + 1, k + 1)}
    return Discrepancy(n, k, ell, alpha, diff, display)
