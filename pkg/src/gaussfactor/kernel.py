"""Complex amplitudes of the Gauss-sum family.

Quadratic and higher-power phases are reduced exactly through
:mod:`gaussfactor.rational`; only the final ``exp(2 pi i k/r)`` is floating
point. Terms are accumulated in ascending ``m`` with :func:`math.fsum`, which
is correctly rounded, so a sum never depends on evaluation order or on how
many terms follow it.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from gaussfactor import config
from gaussfactor.errors import InvalidArgumentError, RangeError
from gaussfactor.rational import (
    ReducedFraction,
    check_m,
    check_n,
    mulmod,
    phase_multiplier,
    phase_numerator,
)

_SEED_MASK = (1 << 64) - 1


@functools.lru_cache(maxsize=1 << 16)
def _unit_root(k: int, r: int) -> tuple[float, float]:
    # exp(2 pi i k/r), folded into (-1/2, 1/2] turns so small phases keep precision
    if k == 0:
        return 1.0, 0.0
    if 2 * k > r:
        k -= r
    angle = math.tau * (k / r)
    return math.cos(angle), math.sin(angle)


def _mean(roots: Sequence[tuple[float, float]]) -> complex:
    count = len(roots)
    return complex(
        math.fsum(c for c, _ in roots) / count, math.fsum(s for _, s in roots) / count
    )


def _as_fraction(xi) -> ReducedFraction:
    if isinstance(xi, ReducedFraction):
        return xi
    if isinstance(xi, int):
        return ReducedFraction(xi, 1)
    if isinstance(xi, Fraction):
        return ReducedFraction(xi.numerator, xi.denominator)
    raise InvalidArgumentError(f"expected an exact rational argument, got {xi!r}")


def _quadratic_roots(n: int, xi: ReducedFraction, ms: Iterable[int]):
    r = xi.numerator
    mult = phase_multiplier(n, xi)
    return [_unit_root(phase_numerator(m, mult, r), r) for m in ms]


def truncated_sum(n: int, xi, m: int) -> complex:
    """Normalized truncated Gauss sum ``1/(M+1) sum_{k=0}^{M} exp(2 pi i k^2 N/xi)``.

    ``xi`` is an integer trial factor or a rational ``r/s``. The magnitude is
    exactly 1 iff ``r`` divides ``N``.
    """
    check_n(n)
    xi = _as_fraction(xi)
    if m < 1:
        raise InvalidArgumentError(f"M must be at least 1, got {m}")
    check_m(m)
    return _mean(_quadratic_roots(n, xi, range(m + 1)))


def _prefix_means(roots: Sequence[tuple[float, float]]) -> list[complex]:
    # exact running partials (Shewchuk); fsum of the partials rounds exactly
    # like fsum of the full prefix, so entry k matches _mean(roots[:k+1]) bitwise
    out = []
    re_parts: list[float] = []
    im_parts: list[float] = []
    for count, (c, s) in enumerate(roots, start=1):
        _grow(re_parts, c)
        _grow(im_parts, s)
        out.append(complex(math.fsum(re_parts) / count, math.fsum(im_parts) / count))
    return out


def _grow(partials: list[float], x: float) -> None:
    i = 0
    for y in partials:
        if abs(x) < abs(y):
            x, y = y, x
        hi = x + y
        lo = y - (hi - x)
        if lo:
            partials[i] = lo
            i += 1
        x = hi
    partials[i:] = [x]


def truncated_sum_profile(n: int, xi, m_max: int) -> list[complex]:
    """``truncated_sum(n, xi, M)`` for every ``M`` in ``0..m_max`` in one pass.

    Entry ``M`` is bitwise identical to the single evaluation.
    """
    check_n(n)
    xi = _as_fraction(xi)
    check_m(m_max)
    return _prefix_means(_quadratic_roots(n, xi, range(m_max + 1)))


def standard_sum(l: int, n: int) -> complex:
    """Unnormalized standard Gauss sum ``sum_{m=0}^{N-1} exp(2 pi i m^2 l/N)``."""
    check_n(n, cap=config.MAX_STANDARD_N)
    if l < 1:
        raise InvalidArgumentError(f"l must be positive, got {l}")
    m = np.arange(n, dtype=np.int64)
    # both factors < 1e7, so the staged product stays inside int64
    k = ((m * m) % n) * (l % n) % n
    k = np.where(2 * k > n, k - n, k)
    angle = math.tau * (k / n)
    return complex(math.fsum(np.cos(angle)), math.fsum(np.sin(angle)))


def g_value(l: int, n: int) -> float:
    """Scaled square ``|G(l, N)|^2 / N``; equals ``gcd(l, N)``."""
    amp = standard_sum(l, n)
    return (amp.real * amp.real + amp.imag * amp.imag) / n


@dataclass(frozen=True)
class WeightProfile:
    """Gaussian weights ``w_m`` centred on ``m = 0`` with standard deviation ``width``.

    ``cutoff`` defaults to ``ceil(6 * width)``, leaving under 1e-7 of the
    weight outside the window.
    """

    width: float = 10.0
    cutoff: Optional[int] = None
    _m: np.ndarray = field(init=False, repr=False, compare=False)
    _w: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.width > 0 and math.isfinite(self.width)):
            raise InvalidArgumentError(f"weight width must be positive, got {self.width}")
        cutoff = self.cutoff if self.cutoff is not None else math.ceil(6 * self.width)
        if cutoff < self.width:
            raise InvalidArgumentError("cutoff must be at least the weight width")
        m = np.arange(-cutoff, cutoff + 1)
        w = np.exp(-0.5 * (m / self.width) ** 2)
        w = w / math.fsum(w)
        object.__setattr__(self, "cutoff", cutoff)
        object.__setattr__(self, "_m", m)
        object.__setattr__(self, "_w", w)

    @property
    def indices(self) -> np.ndarray:
        return self._m

    @property
    def weights(self) -> np.ndarray:
        return self._w


def continuous_sum(n: int, xi: float, weights: WeightProfile = WeightProfile()) -> complex:
    """Weighted sum ``sum_m w_m exp(2 pi i (m + m^2/N) xi)`` at real ``xi``."""
    check_n(n)
    xi = float(xi)
    if not math.isfinite(xi):
        raise InvalidArgumentError("xi must be finite")
    m = weights.indices.astype(np.float64)
    turns = m * xi + (m * m / n) * xi
    turns -= np.floor(turns)
    angle = math.tau * turns
    w = weights.weights
    return complex(math.fsum(w * np.cos(angle)), math.fsum(w * np.sin(angle)))


def _power_roots(n: int, l: int, m: int, j: int):
    if l < 1:
        raise InvalidArgumentError(f"l must be positive, got {l}")
    if m > config.MAX_M_HIGH_POWER:
        raise RangeError(f"M={m} exceeds {config.MAX_M_HIGH_POWER} for j >= 3")
    n_mod = n % l
    return [_unit_root(mulmod(pow(k, j, l), n_mod, l), l) for k in range(m + 1)]


def exponential_sum(n: int, l: int, m: int, j: int) -> complex:
    """``1/(M+1) sum_{k=0}^{M} exp(2 pi i k^j N/l)`` for integer ``l``."""
    if j < 2:
        raise InvalidArgumentError(f"power j must be at least 2, got {j}")
    if j == 2:
        return truncated_sum(n, ReducedFraction(l), m)
    check_n(n)
    if m < 1:
        raise InvalidArgumentError(f"M must be at least 1, got {m}")
    return _mean(_power_roots(n, l, m, j))


def exponential_sum_profile(n: int, l: int, m_max: int, j: int) -> list[complex]:
    """:func:`exponential_sum` for every ``M`` in ``0..m_max``."""
    if j < 2:
        raise InvalidArgumentError(f"power j must be at least 2, got {j}")
    if j == 2:
        return truncated_sum_profile(n, ReducedFraction(l), m_max)
    check_n(n)
    return _prefix_means(_power_roots(n, l, m_max, j))


def default_random_m_max(n: int) -> int:
    """Sampling range for random phases: ``10*ceil(sqrt N)`` capped at the index limit."""
    root = math.isqrt(n)
    if root * root < n:
        root += 1
    return min(10 * root, config.MAX_M)


def derive_seed(seed: int, *keys: int) -> int:
    """Stable 64-bit seed for one evaluation point of a seeded run."""
    entropy = [seed & _SEED_MASK, *(k & _SEED_MASK for k in keys)]
    lo, hi = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


_DRAW_BATCH = 1024


def random_indices(m: int, m_max: int, seed: int) -> list[int]:
    """``0`` followed by ``M`` distinct indices drawn uniformly from ``1..m_max``.

    Indices come from a fixed-batch Philox stream with repeats skipped, so the
    draw for ``M`` is a prefix of the draw for any larger ``M``.
    """
    if m < 0:
        raise InvalidArgumentError(f"M must be non-negative, got {m}")
    if m >= m_max:
        raise InvalidArgumentError(f"need M < m_max, got M={m}, m_max={m_max}")
    check_m(m_max)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed & _SEED_MASK)))
    picked = [0]
    seen = {0}
    while len(picked) <= m:
        for v in rng.integers(1, m_max, size=_DRAW_BATCH, endpoint=True).tolist():
            if v not in seen:
                seen.add(v)
                picked.append(v)
                if len(picked) > m:
                    break
    return picked


def random_phase_sum(
    n: int, l: int, m: int, m_max: Optional[int] = None, seed: int = 0
) -> complex:
    """Truncated sum over ``M+1`` randomly chosen indices instead of ``0..M``.

    Index ``0`` is always included, so a factor still gives exactly 1.
    Deterministic for a fixed ``seed``; the correctly rounded sum makes the
    result independent of the order the indices were drawn in.
    """
    check_n(n)
    if m_max is None:
        m_max = default_random_m_max(n)
    return _mean(_quadratic_roots(n, ReducedFraction(l), random_indices(m, m_max, seed)))


def random_phase_profile(
    n: int, l: int, m_limit: int, m_max: Optional[int] = None, seed: int = 0
) -> list[complex]:
    """:func:`random_phase_sum` for every ``M`` in ``0..m_limit``."""
    check_n(n)
    if m_max is None:
        m_max = default_random_m_max(n)
    indices = random_indices(m_limit, m_max, seed)
    return _prefix_means(_quadratic_roots(n, ReducedFraction(l), indices))


_VARIANTS = ("explicit", "fourth-root", "power-rule", "log-random")
_DEFAULT_C = {"fourth-root": 1.0, "power-rule": 1.0, "log-random": 3.0}


def _ceil_root_scaled(n: int, c: float, k: int) -> int:
    # smallest integer M with M >= c * n**(1/k), decided exactly
    cf = Fraction(c)
    bound = cf**k * n
    m = max(math.ceil(c * n ** (1.0 / k)), 0)
    while m > 0 and (m - 1) ** k >= bound:
        m -= 1
    while m**k < bound:
        m += 1
    return m


@dataclass(frozen=True)
class TruncationPolicy:
    """How many terms ``M`` to sum for a given ``N``.

    Either an explicit ``M`` or a growth rule: ``ceil(c N^(1/4))``,
    ``ceil(c N^(1/(2j)))`` or ``ceil(c log2 N)``.
    """

    variant: str = "fourth-root"
    m: Optional[int] = None
    c: Optional[float] = None
    j: int = 2

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise InvalidArgumentError(f"unknown truncation rule {self.variant!r}")
        if self.variant == "explicit":
            if self.m is None or self.m < 1:
                raise InvalidArgumentError("explicit policy needs M >= 1")
        else:
            if self.c is None:
                object.__setattr__(self, "c", _DEFAULT_C[self.variant])
            if not self.c > 0:
                raise InvalidArgumentError(f"rule constant must be positive, got {self.c}")
        if self.j < 2:
            raise InvalidArgumentError(f"power j must be at least 2, got {self.j}")

    @classmethod
    def explicit(cls, m: int) -> "TruncationPolicy":
        return cls("explicit", m=m)

    @classmethod
    def fourth_root(cls, c: float = 1.0) -> "TruncationPolicy":
        return cls("fourth-root", c=c)

    @classmethod
    def power_rule(cls, j: int, c: float = 1.0) -> "TruncationPolicy":
        return cls("power-rule", c=c, j=j)

    @classmethod
    def log_random(cls, c: float = 3.0) -> "TruncationPolicy":
        return cls("log-random", c=c)

    @property
    def exponent(self) -> Optional[float]:
        """Growth exponent of the rule in ``N`` (``None`` for explicit/logarithmic)."""
        if self.variant == "fourth-root":
            return 0.25
        if self.variant == "power-rule":
            return 1.0 / (2 * self.j)
        return None

    def resolve(self, n: int) -> int:
        check_n(n)
        if self.variant == "explicit":
            return self.m
        if self.variant == "fourth-root":
            m = _ceil_root_scaled(n, self.c, 4)
        elif self.variant == "power-rule":
            m = _ceil_root_scaled(n, self.c, 2 * self.j)
        else:
            m = math.ceil(self.c * math.log2(n))
        return max(m, 1)
