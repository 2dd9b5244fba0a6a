"""Brute-force reference implementations for validating the kernel.

These deliberately avoid the kernel's code paths: phases are formed by
direct multiplication in 40-digit floating point instead of exact modular
reduction. Slow by design; used only by the test suite.
"""

from __future__ import annotations

import mpmath

from gaussfactor.errors import InvalidArgumentError

NAIVE_MAX_N = 10**9
_DPS = 40


def trial_division(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending."""
    if n < 2:
        raise InvalidArgumentError(f"need n >= 2, got {n}")
    out = []
    d = 2
    while d * d <= n:
        q, rem = divmod(n, d)
        if rem == 0:
            out.append(d)
            n = q
        else:
            d += 1
    out.append(n)
    return out


def divides(r: int, n: int) -> bool:
    return n % r == 0


def naive_sum(n: int, xi, m: int) -> complex:
    """``1/(M+1) sum exp(2 pi i k^2 N / xi)`` summed term by term at high precision."""
    if n > NAIVE_MAX_N:
        raise InvalidArgumentError(f"oracle refuses N > {NAIVE_MAX_N}")
    r, s = xi.numerator, xi.denominator
    with mpmath.workdps(_DPS):
        total = mpmath.mpc(0)
        for k in range(m + 1):
            total += mpmath.expjpi(mpmath.mpf(2 * k * k * n * s) / r)
        total /= m + 1
        return complex(total)


def naive_power_sum(n: int, l: int, m: int, j: int) -> complex:
    """High-precision reference for ``1/(M+1) sum exp(2 pi i k^j N / l)``."""
    with mpmath.workdps(_DPS + 10):
        total = mpmath.mpc(0)
        for k in range(m + 1):
            total += mpmath.expjpi(mpmath.mpf(2 * k**j * n) / l)
        return complex(total / (m + 1))
