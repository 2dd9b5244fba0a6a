"""Factoring procedures built on the Gauss-sum kernel.

* :func:`integer_scan` tests every prime trial factor up to ``sqrt(N)``
  against the ghost threshold.
* :func:`rational_search` scans the grid ``l/s0`` over ``(1, sqrt(N)]``,
  where every exact unity peak has a numerator dividing ``N`` and no peak
  can come from ``N/s`` itself.
* :func:`degeneracy_profile` and :func:`detect_periods` count how many ways
  each value ``d/s`` can be written over the divisors of ``N`` and read the
  factors off the periods of that count.
* :func:`ghost_analysis` and :func:`scaling_experiment` measure how many
  terms are needed before no non-factor passes the threshold.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from gaussfactor import config
from gaussfactor.errors import GaussFactorError, InvalidArgumentError, RangeError
from gaussfactor.kernel import (
    TruncationPolicy,
    WeightProfile,
    continuous_sum,
    exponential_sum,
    default_random_m_max,
    derive_seed,
    exponential_sum_profile,
    random_phase_profile,
    random_phase_sum,
    truncated_sum,
    truncated_sum_profile,
)
from gaussfactor.parallel import ordered_map
from gaussfactor.rational import ReducedFraction, check_n, grid_by_index

log = logging.getLogger(__name__)

TRIVIAL = "trivial"
FACTOR_BEARING = "factor-bearing"
FULL_N = "full-N"

INTEGER_SCAN = "integer-scan"
RATIONAL_SEARCH = "rational-search"
DEGENERACY = "degeneracy"


# -- number-theoretic helpers ------------------------------------------------


def prime_sieve(limit: int) -> list[int]:
    """All primes ``<= limit`` (sieve of Eratosthenes)."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, is_prime in enumerate(sieve) if is_prime]


def _factor_by_division(n: int) -> list[int]:
    if n > config.MAX_DIVISOR_N:
        raise RangeError(f"N={n} is too large for trial division")
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n``, ascending."""
    divs = [1]
    for p in sorted(set(f := _factor_by_division(n))):
        divs = [d * p**e for d in divs for e in range(f.count(p) + 1)]
    return sorted(divs)


def is_semiprime(n: int) -> bool:
    return len(_factor_by_division(n)) == 2


def refine_factors(n: int, found: Sequence[int]) -> list[int]:
    """Split ``n`` as far as the divisors in ``found`` allow.

    Cofactors and pairwise gcds are used recursively; the result is a
    multiset of integers whose product is ``n``, ascending. When the found
    divisors are rich enough it is the full prime factorization.
    """
    parts = [n]
    splitters = {f for f in found if 1 < f < n and n % f == 0}
    changed = True
    while changed:
        changed = False
        for d in sorted(splitters | set(parts)):
            nxt = []
            for part in parts:
                g = math.gcd(part, d)
                if 1 < g < part:
                    nxt.extend((g, part // g))
                    changed = True
                else:
                    nxt.append(part)
            parts = nxt
    return sorted(parts)


# -- records -----------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumSample:
    """One evaluated point of a spectrum."""

    argument: ReducedFraction
    amplitude: complex
    magnitude_sq: float = field(init=False)

    def __post_init__(self):
        a = self.amplitude
        object.__setattr__(self, "magnitude_sq", a.real * a.real + a.imag * a.imag)

    @property
    def magnitude(self) -> float:
        return abs(self.amplitude)


def classify_peak(argument: ReducedFraction, n: int) -> str:
    r = argument.numerator
    if r == 1:
        return TRIVIAL
    if r == n:
        return FULL_N
    return FACTOR_BEARING


@dataclass(frozen=True)
class PeakRecord:
    argument: ReducedFraction
    peak_class: str
    candidate_factor: int
    verified: bool

    @classmethod
    def at(cls, argument: ReducedFraction, n: int) -> "PeakRecord":
        r = argument.numerator
        return cls(argument, classify_peak(argument, n), r, n % r == 0)


@dataclass(frozen=True)
class FactorReport:
    """Outcome of one factoring run; ``factors`` are always verified divisors."""

    n: int
    method: str
    factors: tuple[int, ...]
    samples_evaluated: int
    m_used: int
    ghost_candidates: int = 0
    peaks: tuple[PeakRecord, ...] = ()

    def __post_init__(self):
        factors = tuple(self.factors)
        for f in factors:
            if not (1 < f < self.n and self.n % f == 0):
                raise GaussFactorError(f"unsound factor {f} reported for N={self.n}")
        if list(factors) != sorted(set(factors)):
            raise GaussFactorError("factor list must be ascending and duplicate-free")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "peaks", tuple(self.peaks))


# -- evaluation helpers (module level so worker processes can pickle them) ----


def _eval_truncated(args) -> complex:
    n, xi, m = args
    return truncated_sum(n, xi, m)


def evaluate_grid(
    n: int, points: Sequence[ReducedFraction], m: int, jobs: Optional[int] = 1
) -> list[SpectrumSample]:
    """Truncated-sum spectrum over ``points``, in input order."""
    amps = ordered_map(_eval_truncated, [(n, xi, m) for xi in points], jobs)
    return [SpectrumSample(xi, a) for xi, a in zip(points, amps)]


# -- integer threshold scan --------------------------------------------------


def integer_scan(
    n: int,
    policy: TruncationPolicy,
    threshold: float = config.GHOST_THRESHOLD,
    jobs: Optional[int] = 1,
) -> FactorReport:
    """Test every prime ``l <= sqrt(N)`` with ``|A_N^(M)(l)| >= threshold``.

    Candidates above the threshold are confirmed by division; those that do
    not divide ``N`` are ghost factors and are only counted.
    """
    check_n(n)
    m = policy.resolve(n)
    primes = prime_sieve(math.isqrt(n))
    samples = evaluate_grid(n, [ReducedFraction(p) for p in primes], m, jobs)
    factors, ghosts = [], 0
    for sample in samples:
        if sample.magnitude >= threshold:
            p = sample.argument.numerator
            if n % p == 0:
                factors.append(p)
            else:
                ghosts += 1
    return FactorReport(n, INTEGER_SCAN, tuple(factors), len(samples), m, ghosts)


def required_m(n: int, rule: TruncationPolicy) -> int:
    """Number of terms ``M`` the growth rule prescribes for ``N``."""
    return rule.resolve(n)


# -- rational reduced-interval search ----------------------------------------


def search_grid(
    n: int, s0: int, xi_max: Optional[ReducedFraction] = None
) -> list[ReducedFraction]:
    """Grid ``l/s0`` over ``(1, sqrt(N)]``, optionally cut at ``xi_max``."""
    check_n(n)
    if s0 < 1:
        raise InvalidArgumentError(f"s0 must be positive, got {s0}")
    if s0 * s0 >= n:
        log.warning("s0=%d >= sqrt(N): peaks at N/s may appear on the grid", s0)
    last = math.isqrt(n * s0 * s0)
    if xi_max is not None:
        last = min(last, xi_max.numerator * s0 // xi_max.denominator)
    return grid_by_index(s0, s0 + 1, last)


def find_peaks(
    samples: Sequence[SpectrumSample], n: int
) -> tuple[list[PeakRecord], int]:
    """Unity peaks among ``samples`` plus the count of unverifiable near-unity points."""
    peaks, ghosts = [], 0
    floor = 1.0 - config.PEAK_TOLERANCE
    for sample in samples:
        if sample.magnitude >= floor:
            record = PeakRecord.at(sample.argument, n)
            if record.verified:
                peaks.append(record)
            else:
                ghosts += 1
    return peaks, ghosts


def rational_search(
    n: int,
    s0: int,
    policy: TruncationPolicy,
    xi_max: Optional[ReducedFraction] = None,
    jobs: Optional[int] = 1,
) -> FactorReport:
    """Find factors from unity peaks of the truncated sum on the grid ``l/s0``.

    Only ``1 < xi <= sqrt(N)`` is scanned: peaks at ``1/s`` lie below 1, and
    a peak at ``N/s`` would need ``l >= N > sqrt(N) s0``. Every remaining
    peak ``r/s`` has ``r | N``. The smallest prime factor always shows up
    at ``p/1``. The exclusion of ``N/s`` needs ``s0 < sqrt(N)``; larger
    steps are allowed, and any such peak is classified ``full-N`` and
    contributes no factor.
    """
    points = search_grid(n, s0, xi_max)
    m = policy.resolve(n)
    samples = evaluate_grid(n, points, m, jobs)
    peaks, ghosts = find_peaks(samples, n)
    factors = sorted({math.gcd(p.candidate_factor, n) for p in peaks} - {1, n})
    return FactorReport(
        n, RATIONAL_SEARCH, tuple(factors), len(samples), m, ghosts, tuple(peaks)
    )


# -- degeneracy of ratios ----------------------------------------------------


@dataclass(frozen=True)
class DegeneracyProfile:
    """Representation counts ``D`` of values ``d/s``, ``d`` a divisor > 1 of ``N``."""

    n: int
    s_max: int
    families: tuple[int, ...]
    counts: dict

    def degeneracy(self, value: ReducedFraction) -> int:
        return self.counts.get(value, 0)

    def rows(self) -> list[tuple[ReducedFraction, int]]:
        return sorted(self.counts.items())


def degeneracy_profile(n: int, s_max: int) -> DegeneracyProfile:
    """Count, for each value ``r/s`` with ``r`` in the divisor families of ``N``
    and ``1 <= s <= s_max``, how many such pairs represent it."""
    check_n(n, cap=config.MAX_DIVISOR_N)
    if s_max < 1:
        raise InvalidArgumentError(f"s_max must be positive, got {s_max}")
    families = tuple(d for d in divisors(n) if d > 1)
    counts: dict[ReducedFraction, int] = {}
    for r in families:
        for s in range(1, s_max + 1):
            key = ReducedFraction(r, s)
            counts[key] = counts.get(key, 0) + 1
    return DegeneracyProfile(n, s_max, families, counts)


def period_generators(profile: DegeneracyProfile) -> list[int]:
    """Smallest denominators ``s`` at which ``N/s`` becomes degenerate.

    Every ``s < s_max`` with ``D(N/s) >= 2`` is a multiple of one of the
    returned generators.
    """
    n = profile.n
    gens: list[int] = []
    for s in range(1, profile.s_max):
        if profile.degeneracy(ReducedFraction(n, s)) < 2:
            continue
        if not any(s % g == 0 for g in gens):
            gens.append(s)
    return gens


def detect_periods(profile: DegeneracyProfile) -> list[int]:
    """Factors of ``N`` read off the periods of the degeneracy count."""
    n = profile.n
    factors = set()
    for g in period_generators(profile):
        if n % g == 0 and 1 < n // g < n:
            factors.add(n // g)
    return sorted(factors)


# -- ghost factors and truncation scaling ------------------------------------


@dataclass(frozen=True)
class GhostRow:
    m: int
    max_nonfactor_mag: float
    ghost_count: int


def _nonfactor_primes(n: int) -> list[int]:
    return [p for p in prime_sieve(math.isqrt(n)) if n % p]


def _magnitudes_truncated(args) -> list[float]:
    n, p, m_hi = args
    return [abs(a) for a in truncated_sum_profile(n, ReducedFraction(p), m_hi)]


def ghost_analysis(
    n: int,
    m_lo: int,
    m_hi: int,
    threshold: float = config.GHOST_THRESHOLD,
    jobs: Optional[int] = 1,
) -> list[GhostRow]:
    """Largest non-factor magnitude and ghost count for each ``M`` in ``[m_lo, m_hi]``."""
    check_n(n)
    if not 1 <= m_lo <= m_hi:
        raise InvalidArgumentError(f"need 1 <= m_lo <= m_hi, got {m_lo}..{m_hi}")
    primes = _nonfactor_primes(n)
    profiles = ordered_map(_magnitudes_truncated, [(n, p, m_hi) for p in primes], jobs)
    rows = []
    for m in range(m_lo, m_hi + 1):
        mags = [prof[m] for prof in profiles]
        rows.append(
            GhostRow(m, max(mags, default=0.0), sum(1 for v in mags if v >= threshold))
        )
    return rows


@dataclass(frozen=True)
class ScalingRow:
    n: int
    m_min: Optional[int]
    ratio: float


def _scaling_limit(n: int, rule: TruncationPolicy) -> int:
    if rule.variant == "log-random":
        return min(8 * math.ceil(math.log2(n)) + 16, default_random_m_max(n) - 1)
    return 8 * math.ceil(n**0.25) + 16


def _magnitudes_for_rule(args) -> list[float]:
    n, p, limit, rule, seed = args
    if rule.variant == "log-random":
        amps = random_phase_profile(n, p, limit, seed=derive_seed(seed, n, p))
    elif rule.variant == "power-rule":
        amps = exponential_sum_profile(n, p, limit, rule.j)
    else:
        amps = truncated_sum_profile(n, ReducedFraction(p), limit)
    return [abs(a) for a in amps]


def minimal_sufficient_m(
    n: int,
    rule: TruncationPolicy,
    seed: int = 0,
    limit: Optional[int] = None,
    threshold: float = config.GHOST_THRESHOLD,
    jobs: Optional[int] = 1,
) -> Optional[int]:
    """Smallest ``M <= limit`` at which every non-factor prime ``<= sqrt(N)``
    falls below the threshold, or ``None``.

    The sum variant follows the rule: quadratic for ``fourth-root``/``explicit``,
    ``k^j`` phases for ``power-rule``, random indices for ``log-random``.
    """
    check_n(n)
    if limit is None:
        limit = _scaling_limit(n, rule)
    primes = _nonfactor_primes(n)
    profiles = ordered_map(
        _magnitudes_for_rule, [(n, p, limit, rule, seed) for p in primes], jobs
    )
    for m in range(1, limit + 1):
        if all(prof[m] < threshold for prof in profiles):
            return m
    return None


def scaling_experiment(
    rule: TruncationPolicy,
    ns: Sequence[int],
    seed: int = 0,
    jobs: Optional[int] = 1,
) -> list[ScalingRow]:
    """Minimal sufficient ``M`` per semiprime ``N`` and its ratio to the rule's growth.

    The ratio divides by ``N^(1/4)``, ``N^(1/(2j))`` or ``log2 N``.
    """
    for n in ns:
        check_n(n, cap=config.MAX_DIVISOR_N)
        if not is_semiprime(n):
            raise InvalidArgumentError(f"{n} is not a semiprime ({_factor_by_division(n)})")
    rows = []
    for n in ns:
        m_min = minimal_sufficient_m(n, rule, seed=seed, jobs=jobs)
        if rule.variant == "log-random":
            scale = math.log2(n)
        else:
            scale = n ** (rule.exponent or 0.25)
        rows.append(ScalingRow(n, m_min, m_min / scale if m_min else math.nan))
    return rows


# -- generic spectra -----------------------------------------------------------

SPECTRUM_VARIANTS = ("truncated", "exponential", "random", "continuous")


def _eval_point(args) -> complex:
    variant, n, xi, m, j, seed, m_max, width = args
    if variant == "truncated":
        return truncated_sum(n, xi, m)
    if variant == "exponential":
        return exponential_sum(n, xi.numerator, m, j)
    if variant == "random":
        return random_phase_sum(n, xi.numerator, m, m_max, derive_seed(seed, n, xi.numerator))
    return continuous_sum(n, float(xi), _weights(width))


@functools.lru_cache(maxsize=8)
def _weights(width: float) -> WeightProfile:
    return WeightProfile(width)


def spectrum(
    n: int,
    points: Sequence[ReducedFraction],
    variant: str = "truncated",
    m: int = 8,
    j: int = 2,
    seed: int = 0,
    m_max: Optional[int] = None,
    width: float = 10.0,
    jobs: Optional[int] = 1,
) -> list[SpectrumSample]:
    """Evaluate one sum variant at every point, in input order.

    ``exponential`` and ``random`` need integer points; ``random`` seeds each
    point from ``(seed, N, l)`` so worker count never changes the result.
    """
    check_n(n)
    if variant not in SPECTRUM_VARIANTS:
        raise InvalidArgumentError(f"unknown spectrum variant {variant!r}")
    if variant in ("exponential", "random") and any(not p.is_integer() for p in points):
        raise InvalidArgumentError(f"{variant} sums are defined at integer arguments only")
    tasks = [(variant, n, xi, m, j, seed, m_max, width) for xi in points]
    amps = ordered_map(_eval_point, tasks, jobs)
    return [SpectrumSample(xi, a) for xi, a in zip(points, amps)]
