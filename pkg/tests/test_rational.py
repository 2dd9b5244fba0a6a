from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from gaussfactor import InvalidArgumentError, RangeError, ReducedFraction, grid, phase_mod, reduce
from gaussfactor.rational import mulmod


@pytest.mark.parametrize(
    "r, s, expected",
    [(13, 10, (13, 10)), (14, 10, (7, 5)), (21, 21, (1, 1))],
)
def test_reduce_examples(r, s, expected):
    f = reduce(r, s)
    assert (f.numerator, f.denominator) == expected


@pytest.mark.parametrize("r, s", [(0, 3), (3, 0), (-1, 2)])
def test_reduce_rejects_non_positive(r, s):
    with pytest.raises(InvalidArgumentError):
        reduce(r, s)


def test_caps_enforced_at_construction():
    ReducedFraction(10**18, 10**9)
    with pytest.raises(RangeError):
        ReducedFraction(10**18 + 1, 1)
    with pytest.raises(RangeError):
        ReducedFraction(1, 10**9 + 1)


@given(st.integers(1, 10**12), st.integers(1, 10**9))
def test_reduce_is_coprime_and_exact(r, s):
    f = reduce(r, s)
    assert gcd(f.numerator, f.denominator) == 1
    assert Fraction(f.numerator, f.denominator) == Fraction(r, s)


def test_ordering_and_hash():
    assert ReducedFraction(13, 10) < ReducedFraction(7, 5) < ReducedFraction(3)
    assert ReducedFraction(14, 10) == ReducedFraction(7, 5)
    assert len({ReducedFraction(2, 4), ReducedFraction(1, 2)}) == 1
    assert ReducedFraction(6, 3) == 2


def test_parse():
    assert ReducedFraction.parse("13/10") == ReducedFraction(13, 10)
    assert ReducedFraction.parse("1.4") == ReducedFraction(7, 5)
    assert ReducedFraction.parse(" 3 ") == ReducedFraction(3)
    for bad in ("0", "-1/2", "abc", "1/0"):
        with pytest.raises(InvalidArgumentError):
            ReducedFraction.parse(bad)


def test_phase_mod_examples():
    assert phase_mod(3, 91, ReducedFraction(7)) == 0
    assert phase_mod(1, 91, ReducedFraction(13, 10)) == 0
    assert phase_mod(1, 91, ReducedFraction(5)) == Fraction(1, 5)


def _brute_phase(m, n, r, s):
    # direct big-integer evaluation of frac(m^2 N s / r)
    value = Fraction(m * m * n * s, r)
    return value - (value.numerator // value.denominator)


def test_phase_mod_zero_iff_numerator_divides_n():
    for n in range(2, 301):
        for r in range(1, 31):
            for s in range(1, 31):
                if gcd(r, s) != 1:
                    continue
                xi = ReducedFraction(r, s)
                phases = [phase_mod(m, n, xi) for m in range(51)]
                assert phases[::5] == [_brute_phase(m, n, r, s) for m in range(0, 51, 5)]
                assert all(p == 0 for p in phases) == (n % r == 0)


@given(
    st.integers(0, 10**6),
    st.integers(2, 10**18),
    st.integers(1, 10**18),
    st.integers(1, 10**9),
)
def test_phase_mod_matches_big_integer_at_extremes(m, n, r, s):
    xi = ReducedFraction(r, s)
    assert phase_mod(m, n, xi) == _brute_phase(m, n, xi.numerator, xi.denominator)
    assert 0 <= phase_mod(m, n, xi) < 1


def test_phase_mod_range_errors():
    with pytest.raises(RangeError):
        phase_mod(10**6 + 1, 91, ReducedFraction(5))
    with pytest.raises(RangeError):
        phase_mod(1, 10**18 + 1, ReducedFraction(5))


def test_mulmod_refuses_wide_products():
    assert mulmod(10**18, 10**18, 7) == (10**36) % 7
    with pytest.raises(RangeError):
        mulmod(2**100, 2**40, 3)


def test_grid_examples():
    g = grid(10, ReducedFraction(1), ReducedFraction(3))
    assert len(g) == 20
    assert g[:3] == [ReducedFraction(11, 10), ReducedFraction(6, 5), ReducedFraction(13, 10)]
    assert g[-1] == ReducedFraction(3)
    assert grid(1, ReducedFraction(1), ReducedFraction(4)) == [ReducedFraction(k) for k in (2, 3, 4)]
    assert grid(2, ReducedFraction(1), ReducedFraction(2)) == [ReducedFraction(3, 2), ReducedFraction(2)]
    assert grid(3, ReducedFraction(2), ReducedFraction(2)) == []


@given(st.integers(1, 60), st.integers(1, 40), st.integers(1, 40), st.integers(1, 12), st.integers(1, 12))
def test_grid_properties(s0, a, b, da, db):
    lo, hi = ReducedFraction(a, da), ReducedFraction(b, db)
    g = grid(s0, lo, hi)
    assert all(x < y for x, y in zip(g, g[1:]))
    assert all(lo < x <= hi for x in g)
    assert all((x.as_fraction() * s0).denominator == 1 for x in g)
    if lo < hi:
        expected = (hi.as_fraction() * s0).__floor__() - (lo.as_fraction() * s0).__floor__()
        assert len(g) == expected
