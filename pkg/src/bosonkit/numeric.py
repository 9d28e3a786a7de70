"""High-precision plumbing: error-bounded reals and certified series summation.

Every infinite sum handled here has positive terms whose successive-term
ratios are non-increasing (each term is a fixed rational function of k divided
by k!), so a geometric bound on the omitted tail becomes valid as soon as the
observed ratio drops below 1/2.  Partial sums are accumulated in exact
rational arithmetic; the only rounding happens in the final division by e.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import mpmath
from mpmath import mp

from .errors import NonIntegerResultError, PrecisionExhaustedError

DEFAULT_BITS = 256
MAX_BITS = 4096

_HALF = Fraction(1, 2)
# Upper bound on 1/e with slack for its own rounding.
_INV_E_UPPER = Fraction(37, 100)


@dataclass(frozen=True)
class SeriesSpec:
    """Precision policy: working precision in bits and an absolute error target."""

    working_precision: int = DEFAULT_BITS
    target_abs_error: float = 1e-12
    max_precision: int = MAX_BITS

    def __post_init__(self) -> None:
        if self.working_precision < 16:
            raise ValueError("working_precision must be at least 16 bits")
        if not self.target_abs_error > 0:
            raise ValueError("target_abs_error must be positive")
        if self.max_precision < self.working_precision:
            raise ValueError("max_precision must be >= working_precision")

    @property
    def target(self) -> Fraction:
        return Fraction(self.target_abs_error)


@dataclass(frozen=True)
class ErrorBoundedReal:
    """A value together with a bound on |true - value|.

    The bound covers series truncation and accumulated rounding; rounding to
    an integer is only allowed while the bound stays below 1/2.
    """

    value: mpmath.mpf
    abs_error: mpmath.mpf

    def __post_init__(self) -> None:
        if self.abs_error < 0:
            raise ValueError("abs_error must be non-negative")

    def to_integer(self) -> int:
        """The unique integer inside the enclosure, if there is one.

        Requires abs_error < 1/2 (uniqueness) and the nearest integer to
        actually lie within the bound, so a tightly certified non-integer is
        rejected instead of silently rounded.
        """
        if not self.abs_error < mp.mpf(0.5):
            raise PrecisionExhaustedError(
                f"abs_error {self.abs_error} >= 1/2; cannot round to an integer"
            )
        nearest = int(mpmath.nint(self.value))
        if not self.contains(nearest):
            raise NonIntegerResultError(
                f"enclosure {self} excludes every integer"
            )
        return nearest

    def contains(self, x) -> bool:
        """Whether x lies within abs_error of the value."""
        return abs(self.value - mp.mpf(x)) <= self.abs_error

    def agrees_with(self, other: "ErrorBoundedReal") -> bool:
        """Whether the two enclosures overlap."""
        return abs(self.value - other.value) <= self.abs_error + other.abs_error

    def __str__(self) -> str:
        return f"{mpmath.nstr(self.value, 20)} +/- {mpmath.nstr(self.abs_error, 3)}"


def sum_with_tail_bound(
    terms: Iterator[Fraction],
    stop_below: Fraction,
    *,
    min_terms: int = 0,
    max_terms: int = 100000,
) -> tuple[Fraction, Fraction, int]:
    """Sum a positive series with eventually non-increasing term ratios.

    Stops once at least ``min_terms`` terms are summed, the last summed term is
    below ``stop_below`` and the next/last ratio is below 1/2.  Because the
    ratios only decrease from there, the omitted tail is bounded by the
    geometric series with the observed ratio.

    Returns (partial_sum, tail_bound, terms_summed).
    """
    if stop_below <= 0:
        raise ValueError("stop_below must be positive")
    total = Fraction(0)
    prev: Fraction | None = None
    count = 0
    for term in terms:
        if term < 0:
            raise ValueError("series terms must be non-negative")
        if prev is not None and prev > 0 and count >= min_terms and prev < stop_below:
            ratio = term / prev
            if ratio < _HALF:
                tail = term / (1 - ratio)
                return total, tail, count
        total += term
        prev = term
        count += 1
        if count > max_terms:
            raise PrecisionExhaustedError(
                f"series did not meet the stopping rule within {max_terms} terms"
            )
    raise ValueError("term iterator exhausted before the stopping rule was met")


def _fraction_to_mpf(q: Fraction) -> mpmath.mpf:
    return mp.mpf(q.numerator) / mp.mpf(q.denominator)


def quotient_by_e(q: Fraction, tail: Fraction, series: SeriesSpec) -> ErrorBoundedReal:
    """Evaluate q/e where the exact numerator lies in [q - tail, q + tail].

    The reported bound covers the tail and all rounding; the working precision
    is doubled (up to series.max_precision) until the bound meets the target.
    """
    if tail < 0:
        raise ValueError("tail must be non-negative")
    # The tail part is precision-independent; fail early if it already blows
    # the budget (a truncation problem, not fixable by more bits).
    if tail * _INV_E_UPPER > series.target:
        raise PrecisionExhaustedError(
            "truncation tail alone exceeds the target error"
        )
    bits = series.working_precision
    while True:
        with mp.workprec(bits):
            value = _fraction_to_mpf(q) * mp.exp(-1)
            # Three roundings (two conversions, one multiply) plus slack.
            rounding = abs(value) * mp.mpf(2) ** (6 - bits) + mp.mpf(2) ** (-bits)
            err = _fraction_to_mpf(tail * _INV_E_UPPER) * (1 + mp.mpf(2) ** -20) + rounding
            target_f = _fraction_to_mpf(series.target)
            ok = err <= target_f
            result = ErrorBoundedReal(value=+value, abs_error=+err)
        if ok:
            return result
        if bits >= series.max_precision:
            raise PrecisionExhaustedError(
                f"target {series.target_abs_error} unreachable at "
                f"{series.max_precision} bits"
            )
        bits = min(2 * bits, series.max_precision)


def binomial_coefficient(alpha: Fraction, m: int) -> Fraction:
    """Generalized binomial coefficient alpha over m for rational alpha."""
    if m < 0:
        raise ValueError("m must be non-negative")
    result = Fraction(1)
    for i in range(m):
        result = result * (alpha - i) / (i + 1)
    return result
