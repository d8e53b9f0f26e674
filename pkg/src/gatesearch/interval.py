"""Outward-rounded interval arithmetic on MPFR floats.

Every operation returns an interval guaranteed to contain the exact real
result, relying on MPFR's correct rounding in the directed modes.  Only the
handful of functions the search bounds need are provided.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

__all__ = ["Interval", "asin", "ln", "log2", "pi", "sin", "sqrt"]


def _down(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundDown)


def _up(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundUp)


def _near(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundToNearest)


class Interval:
    """Closed interval ``[lo, hi]`` carried at ``prec`` bits."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec: int):
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    @classmethod
    def exact(cls, value, prec: int) -> Interval:
        """Enclose an int, Fraction or float (floats are exact binary rationals)."""
        if isinstance(value, Interval):
            return value
        if isinstance(value, float):
            value = Fraction(value)
        q = mpq(value.numerator, value.denominator) if isinstance(value, Fraction) else mpq(value)
        with _down(prec):
            lo = mpfr(q)
        with _up(prec):
            hi = mpfr(q)
        return cls(lo, hi, prec)

    def _coerce(self, other) -> Interval:
        if isinstance(other, Interval):
            return other
        return Interval.exact(other, self.prec)

    def __repr__(self) -> str:
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r}, prec={self.prec})"

    # arithmetic -------------------------------------------------------
    def __neg__(self) -> Interval:
        # gmpy2 rounds even negation to the active context precision.
        with _down(max(self.prec, self.hi.precision, self.lo.precision)):
            return Interval(-self.hi, -self.lo, self.prec)

    def __add__(self, other) -> Interval:
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        with _down(p):
            lo = self.lo + other.lo
        with _up(p):
            hi = self.hi + other.hi
        return Interval(lo, hi, p)

    __radd__ = __add__

    def __sub__(self, other) -> Interval:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Interval:
        return self._coerce(other) - self

    def __mul__(self, other) -> Interval:
        other = self._coerce(other)
        p = max(self.prec, other.prec)
        ends = [(self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi)]
        with _down(p):
            lo = min(x * y for x, y in ends)
        with _up(p):
            hi = max(x * y for x, y in ends)
        return Interval(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Interval:
        other = self._coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        p = max(self.prec, other.prec)
        ends = [(self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi)]
        with _down(p):
            lo = min(x / y for x, y in ends)
        with _up(p):
            hi = max(x / y for x, y in ends)
        return Interval(lo, hi, p)

    def __rtruediv__(self, other) -> Interval:
        return self._coerce(other) / self

    def __pow__(self, e: int) -> Interval:
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        if self.lo < 0:
            raise ValueError("powers of intervals reaching negative values are not needed here")
        with _down(self.prec):
            lo = self.lo**e
        with _up(self.prec):
            hi = self.hi**e
        return Interval(lo, hi, self.prec)

    def ldexp(self, e: int) -> Interval:
        """Multiply by ``2**e`` (exact in MPFR)."""
        with _down(self.prec):
            lo = gmpy2.mul_2exp(self.lo, e)
        with _up(self.prec):
            hi = gmpy2.mul_2exp(self.hi, e)
        return Interval(lo, hi, self.prec)

    # queries ----------------------------------------------------------
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def magnitude(self) -> int:
        """Binary exponent bound: ``|x| < 2**magnitude()`` for every x inside."""
        m = max(abs(self.lo), abs(self.hi))
        if m == 0:
            return 0
        return int(gmpy2.floor(gmpy2.log2(m))) + 2

    def certainly_lt(self, other) -> bool:
        return self.hi < self._coerce(other).lo

    def certainly_le(self, other) -> bool:
        return self.hi <= self._coerce(other).lo

    def certainly_gt(self, other) -> bool:
        return self.lo > self._coerce(other).hi

    def certainly_ge(self, other) -> bool:
        return self.lo >= self._coerce(other).hi

    def certified_ceil(self) -> int | None:
        """Ceiling shared by every point of the interval, or None if it varies."""
        (ln, ld), (hn, hd) = self.lo.as_integer_ratio(), self.hi.as_integer_ratio()
        j = -(-hn // hd)
        if ln > (j - 1) * ld:
            return int(j)
        return None

    def integer_inside(self) -> int | None:
        """The unique integer in the interval when there is exactly one."""
        (ln, ld), (hn, hd) = self.lo.as_integer_ratio(), self.hi.as_integer_ratio()
        a, b = -(-ln // ld), hn // hd
        return int(a) if a == b else None


def sqrt(x: Interval) -> Interval:
    if x.hi < 0:
        raise ValueError("square root of a negative interval")
    with _down(x.prec):
        lo = gmpy2.sqrt(max(x.lo, mpfr(0)))
    with _up(x.prec):
        hi = gmpy2.sqrt(x.hi)
    return Interval(lo, hi, x.prec)


def _centered(f, x: Interval, lipschitz) -> Interval:
    # One correctly rounded evaluation at the midpoint, widened by one ulp and
    # by L * radius; ``lipschitz`` bounds |f'| over the whole interval.
    p = x.prec
    with _near(p):
        m = (x.lo + x.hi) / 2
        y = f(m)
    with _up(p):
        radius = max(x.hi - m, m - x.lo)
    lo, hi = gmpy2.next_below(y), gmpy2.next_above(y)
    if radius > 0:
        with _up(p):
            spread = lipschitz * radius
        with _down(p):
            lo = lo - spread
        with _up(p):
            hi = hi + spread
    return Interval(lo, hi, p)


def asin(x: Interval) -> Interval:
    """Arcsine of an interval inside [0, 1] (clamped to that range)."""
    lo = max(x.lo, mpfr(0))
    hi = min(x.hi, mpfr(1))
    if lo > hi:
        raise ValueError("arcsine argument outside [0, 1]")
    x = Interval(lo, hi, x.prec)
    if hi < 0.75:
        with _up(64):
            sq = hi * hi
        with _down(64):
            root = gmpy2.sqrt(1 - sq)
        with _up(64):
            lip = 1 / root
        return _centered(gmpy2.asin, x, lip)
    with _down(x.prec):
        a = gmpy2.asin(lo)
    with _up(x.prec):
        b = gmpy2.asin(hi)
    return Interval(a, b, x.prec)


def sin(x: Interval) -> Interval:
    """Sine of an interval (|sin'| <= 1 makes the centered form valid anywhere)."""
    return _centered(gmpy2.sin, x, mpfr(1))


def log2(x: Interval) -> Interval:
    if x.lo <= 0:
        raise ValueError("log2 of a nonpositive interval")
    with _down(x.prec):
        lo = gmpy2.log2(x.lo)
    with _up(x.prec):
        hi = gmpy2.log2(x.hi)
    return Interval(lo, hi, x.prec)


def ln(x: Interval) -> Interval:
    if x.lo <= 0:
        raise ValueError("logarithm of a nonpositive interval")
    with _down(x.prec):
        lo = gmpy2.log(x.lo)
    with _up(x.prec):
        hi = gmpy2.log(x.hi)
    return Interval(lo, hi, x.prec)


def pi(prec: int) -> Interval:
    with _down(prec):
        lo = gmpy2.const_pi()
    with _up(prec):
        hi = gmpy2.const_pi()
    return Interval(lo, hi, prec)


def fraction_bounds(x: Interval) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints (MPFR values are dyadic rationals)."""
    return Fraction(*map(int, x.lo.as_integer_ratio())), Fraction(*map(int, x.hi.as_integer_ratio()))
