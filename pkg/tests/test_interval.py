from fractions import Fraction

import mpmath
from hypothesis import given, settings, strategies as st

from gatesearch import interval as iv
from gatesearch.interval import Interval


def contains(x, value, dps=80):
    lo, hi = iv.fraction_bounds(x)
    with mpmath.workdps(dps):
        v = mpmath.mpf(value) if not callable(value) else value()
        return mpmath.mpf(lo.numerator) / lo.denominator <= v <= mpmath.mpf(hi.numerator) / hi.denominator


def test_exact_and_arithmetic():
    x = Interval.exact(Fraction(1, 3), 64)
    assert x.lo < x.hi
    assert contains(x * 3, 1)
    assert contains(x + x - x, lambda: mpmath.mpf(1) / 3)
    assert Interval.exact(5, 64).certified_ceil() == 5


def test_certified_ceil_refuses_when_ambiguous():
    # an interval straddling an integer cannot certify its ceiling
    x = Interval.exact(Fraction(2**70 + 1, 2**70), 32)
    assert x.certified_ceil() is None
    assert Interval.exact(Fraction(2**70 + 1, 2**70), 128).certified_ceil() == 2


def test_pi_and_transcendentals():
    with mpmath.workdps(80):
        assert contains(iv.pi(200), lambda: mpmath.pi)
        half = Interval.exact(Fraction(1, 2), 200)
        assert contains(iv.asin(half), lambda: mpmath.pi / 6)
        assert contains(iv.sin(iv.pi(200) / 6), Fraction(1, 2).__float__())
        assert contains(iv.log2(Interval.exact(10, 200)), lambda: mpmath.log(10, 2))
        assert contains(iv.sqrt(Interval.exact(2, 200)), lambda: mpmath.sqrt(2))


@settings(max_examples=200, deadline=None)
@given(st.fractions(Fraction(1, 10**9), 1))
def test_asin_sqrt_encloses(q):
    x = iv.asin(iv.sqrt(Interval.exact(q, 120)))
    with mpmath.workdps(60):
        ref = mpmath.asin(mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator))
        assert contains(x, lambda: ref)


@given(st.integers(1, 10**12), st.integers(1, 10**12))
def test_division_encloses(a, b):
    x = Interval.exact(a, 64) / Interval.exact(b, 64)
    lo, hi = iv.fraction_bounds(x)
    assert lo <= Fraction(a, b) <= hi
