"""Exact rational arguments and modular phase reduction.

Every grid point is carried as a :class:`ReducedFraction`; phases of the
quadratic sums are reduced modulo the numerator with integer arithmetic so
the unity-peak predicate never depends on floating point.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd

from gaussfactor import config
from gaussfactor.errors import InvalidArgumentError, RangeError

_WIDE_BITS = 128


@functools.total_ordering
class ReducedFraction:
    """A positive rational ``numerator/denominator`` kept in lowest terms."""

    __slots__ = ("_num", "_den")

    def __init__(self, numerator: int, denominator: int = 1):
        if not isinstance(numerator, int) or not isinstance(denominator, int):
            raise InvalidArgumentError("numerator and denominator must be integers")
        if numerator < 1 or denominator < 1:
            raise InvalidArgumentError(
                f"fraction parts must be positive, got {numerator}/{denominator}"
            )
        g = gcd(numerator, denominator)
        num, den = numerator // g, denominator // g
        if num > config.MAX_NUMERATOR or den > config.MAX_DENOMINATOR:
            raise RangeError(f"{num}/{den} exceeds the supported range")
        self._num = num
        self._den = den

    @property
    def numerator(self) -> int:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @classmethod
    def parse(cls, text: str) -> "ReducedFraction":
        """Parse ``"13/10"``, ``"7"`` or a finite decimal such as ``"1.3"``."""
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgumentError(f"not a rational number: {text!r}") from exc
        if value <= 0:
            raise InvalidArgumentError(f"rational argument must be positive: {text!r}")
        return cls(value.numerator, value.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self._num, self._den)

    def is_integer(self) -> bool:
        return self._den == 1

    def __float__(self) -> float:
        return self._num / self._den

    def __eq__(self, other):
        if isinstance(other, ReducedFraction):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, ReducedFraction):
            return self._num * other._den < other._num * self._den
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() < other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def __repr__(self):
        return f"ReducedFraction({self._num}, {self._den})"

    def __str__(self):
        return f"{self._num}/{self._den}"

    def __reduce__(self):
        return (ReducedFraction, (self._num, self._den))


def reduce(r: int, s: int) -> ReducedFraction:
    """Return ``r/s`` in lowest terms; both parts must be positive."""
    return ReducedFraction(r, s)


def mulmod(a: int, b: int, modulus: int) -> int:
    """``a*b mod modulus`` for operands already reduced below ``modulus``.

    Refuses products wider than 128 bits instead of silently growing.
    """
    product = a * b
    if product.bit_length() > _WIDE_BITS:
        raise RangeError(f"modular product exceeds {_WIDE_BITS} bits")
    return product % modulus


def check_n(n: int, cap: int = config.MAX_N) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidArgumentError(f"N must be an integer, got {n!r}")
    if n < 2:
        raise InvalidArgumentError(f"N must be at least 2, got {n}")
    if n > cap:
        raise RangeError(f"N={n} exceeds the supported maximum {cap}")
    return n


def check_m(m: int, cap: int = config.MAX_M) -> int:
    if m < 0:
        raise InvalidArgumentError(f"summation index must be non-negative, got {m}")
    if m > cap:
        raise RangeError(f"summation index {m} exceeds the supported maximum {cap}")
    return m


def phase_multiplier(n: int, xi: ReducedFraction) -> int:
    """``N*s mod r`` for ``xi = r/s``; the phase of term ``m`` is ``m^2`` times this."""
    r = xi.numerator
    return mulmod(n % r, xi.denominator % r, r)


def phase_numerator(m: int, multiplier: int, r: int) -> int:
    """Integer ``k`` with ``frac(m^2 N s / r) = k/r``, given ``phase_multiplier``."""
    return mulmod((m * m) % r, multiplier, r)


def phase_mod(m: int, n: int, xi: ReducedFraction) -> Fraction:
    """Fractional part of ``m^2 * N / xi`` as an exact fraction in ``[0, 1)``.

    >>> phase_mod(1, 91, ReducedFraction(5))
    Fraction(1, 5)
    """
    check_m(m)
    check_n(n)
    r = xi.numerator
    return Fraction(phase_numerator(m, phase_multiplier(n, xi), r), r)


def grid(
    s0: int, xi_min_exclusive: ReducedFraction, xi_max_inclusive: ReducedFraction
) -> list[ReducedFraction]:
    """All multiples ``l/s0`` in ``(xi_min, xi_max]``, reduced and ascending."""
    if s0 < 1:
        raise InvalidArgumentError(f"step denominator s0 must be positive, got {s0}")
    if s0 > config.MAX_DENOMINATOR:
        raise RangeError(f"s0={s0} exceeds the supported maximum")
    lo = xi_min_exclusive.numerator * s0 // xi_min_exclusive.denominator
    hi = xi_max_inclusive.numerator * s0 // xi_max_inclusive.denominator
    return grid_by_index(s0, lo + 1, hi)


def grid_by_index(s0: int, first: int, last: int) -> list[ReducedFraction]:
    """Grid points ``l/s0`` for ``first <= l <= last``."""
    return [ReducedFraction(l, s0) for l in range(max(first, 1), last + 1)]
