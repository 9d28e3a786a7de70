"""Generalized Stirling coefficients and Bell row sums for boson monomial powers.

S_{r,s}(n, k) is the coefficient of a+^(n(r-s)+k) a^k in the normal ordering
of [(a+)^r a^s]^n, with k running over s..ns; B_{r,s}(n) is the row sum.  The
rewriting oracle in operator_algebra is the defining computation; closed
forms exist for r = s and for (2, 1) (the unsigned Lah numbers) and are used
as fast paths, validated entry-wise against the oracle by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import NonIntegerResultError, OutOfRangeError
from .operator_algebra import (
    MonomialSpec,
    extract_stirling,
    monomial_power_normal_form,
)

__all__ = [
    "BellValue",
    "StirlingTable",
    "bell",
    "lah",
    "stirling",
    "stirling_rr_closed",
    "stirling_table",
]


def stirling_rr_closed(r: int, n: int, k: int) -> int:
    """S_{r,r}(n, k) by the alternating closed form, evaluated exactly.

    sum_{p=0}^{k-r} (-1)^p [(k-p)!/(k-p-r)!]^n / ((k-p)! p!), valid for
    r <= k <= rn.  The sum must collapse to a non-negative integer; anything
    else signals an implementation bug.
    """
    if r < 1 or n < 1:
        raise OutOfRangeError("need r >= 1 and n >= 1")
    if not r <= k <= r * n:
        raise OutOfRangeError(f"k = {k} outside [{r}, {r * n}]")
    total = Fraction(0)
    for p in range(k - r + 1):
        falling = factorial(k - p) // factorial(k - p - r)
        total += Fraction((-1) ** p * falling**n, factorial(k - p) * factorial(p))
    if total.denominator != 1 or total < 0:
        raise NonIntegerResultError(
            f"closed form for S_{{{r},{r}}}({n},{k}) gave {total}"
        )
    return int(total)


def lah(n: int, k: int) -> int:
    """Unsigned Lah number n!/k! C(n-1, k-1), equal to S_{2,1}(n, k)."""
    if not 1 <= k <= n:
        raise OutOfRangeError(f"k = {k} outside [1, {n}]")
    return factorial(n) // factorial(k) * comb(n - 1, k - 1)


def _oracle_row(spec: MonomialSpec) -> dict[int, int]:
    return extract_stirling(monomial_power_normal_form(spec), spec)


def stirling(spec: MonomialSpec, k: int) -> int:
    """S_{r,s}(n, k): closed form where one applies, the oracle otherwise."""
    if spec.n < 1:
        raise OutOfRangeError("need n >= 1")
    if not spec.s <= k <= spec.n * spec.s:
        raise OutOfRangeError(
            f"k = {k} outside [{spec.s}, {spec.n * spec.s}] for {spec}"
        )
    if spec.r == spec.s:
        return stirling_rr_closed(spec.r, spec.n, k)
    if (spec.r, spec.s) == (2, 1):
        return lah(spec.n, k)
    return _oracle_row(spec)[k]


@dataclass(frozen=True)
class StirlingTable:
    """Full coefficient row k -> S_{r,s}(n, k) for one (r, s, n)."""

    spec: MonomialSpec
    values: dict[int, int]

    def row(self) -> list[int]:
        """Values in increasing k order."""
        return [self.values[k] for k in sorted(self.values)]

    def row_sum(self) -> int:
        return sum(self.values.values())


def stirling_table(spec: MonomialSpec, *, from_oracle: bool = False) -> StirlingTable:
    """Compute the full row, via dispatch or (from_oracle=True) rewriting only."""
    if spec.n < 1:
        raise OutOfRangeError("need n >= 1")
    if from_oracle or (spec.r != spec.s and (spec.r, spec.s) != (2, 1)):
        values = _oracle_row(spec)
    else:
        values = {
            k: stirling(spec, k) for k in range(spec.s, spec.n * spec.s + 1)
        }
    return StirlingTable(spec=spec, values=values)


@dataclass(frozen=True)
class BellValue:
    """B_{r,s}(n), the row sum of the Stirling table; 1 at n = 0 by convention."""

    spec: MonomialSpec
    value: int

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


def bell(spec: MonomialSpec) -> BellValue:
    """Generalized Bell number B_{r,s}(n)."""
    if spec.n == 0:
        return BellValue(spec=spec, value=1)
    return BellValue(spec=spec, value=stirling_table(spec).row_sum())
