"""Scalar mathematics: round counts, iterated logarithms, parameter choices.

Success probabilities are represented symbolically (``Probability`` nodes)
so that they can be enclosed at whatever precision a certified ceiling
needs.  At simulation scale they are simply converted with ``float()``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Real

import gmpy2

from . import interval as iv
from .errors import CertificationError, ConfigurationError, DomainError, PreconditionError
from .interval import Interval

#: Hard cap for precision escalation (bits).
MAX_PRECISION = 1 << 24

#: Default working precision of schedule values in count-only mode.
SCHEDULE_PRECISION = 128


def bucket_precision(prec: int) -> int:
    """Round a working precision up to a coarse grid (1/32 of its binade).

    Nested probability enclosures ask for slightly more bits than their
    parents; snapping to the grid lets those requests share cache entries.
    """
    step = max(64, 1 << max(0, prec.bit_length() - 6))
    return -(-prec // step) * step


# ---------------------------------------------------------------------------
# exact integer helpers


def is_power_of_two(x: int) -> bool:
    return isinstance(x, int) and x > 0 and x & (x - 1) == 0


def log2_exact(x: int) -> int:
    """Binary logarithm of an exact power of two."""
    if not is_power_of_two(x):
        raise ConfigurationError(f"{x} is not a power of 2")
    return x.bit_length() - 1


def ceil_log2(x: int | Fraction) -> int:
    """Exact ``ceil(log2(x))`` for positive integers or rationals."""
    x = Fraction(x)
    if x <= 0:
        raise DomainError("logarithm of a nonpositive number")
    num, den = x.numerator, x.denominator
    # smallest e with 2**e >= num/den
    e = num.bit_length() - den.bit_length()
    while _pow2_frac(e) < x:
        e += 1
    while _pow2_frac(e - 1) >= x:
        e -= 1
    return e


def _pow2_frac(e: int) -> Fraction:
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


def surd_le(p, q, c) -> bool:
    """Decide ``p <= q * sqrt(c)`` exactly for rationals p, q and c >= 0."""
    p, q, c = Fraction(p), Fraction(q), Fraction(c)
    if c < 0:
        raise DomainError("negative radicand")
    # p^2 vs q^2 c, cross-multiplied to integers (no gcd reductions)
    mpz = gmpy2.mpz
    lhs = mpz(p.numerator) ** 2 * mpz(q.denominator) ** 2 * c.denominator
    rhs = mpz(q.numerator) ** 2 * c.numerator * mpz(p.denominator) ** 2
    if q >= 0:
        return p <= 0 or lhs <= rhs
    return p <= 0 and lhs >= rhs


def surd_ge(p, q, c) -> bool:
    """Decide ``p >= q * sqrt(c)`` exactly."""
    return surd_le(-Fraction(p), -Fraction(q), c)


# ---------------------------------------------------------------------------
# symbolic probabilities


class Probability:
    """A real number in [0, 1] known exactly through its construction."""

    @property
    def exact(self) -> Fraction | None:
        return None

    def enclose(self, prec: int) -> Interval:
        return _enclosure(self, prec)

    def _compute(self, prec: int) -> Interval:
        raise NotImplementedError

    def __float__(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return self.enclose(96).mid()

    def decimal(self, digits: int = 40) -> str:
        """Decimal rendering; exact when the value is a terminating fraction."""
        q = self.exact
        if q is not None:
            d = q.denominator
            twos, fives = (d & -d).bit_length() - 1, 0
            rest = d >> twos
            while rest % 5 == 0:
                rest //= 5
                fives += 1
            if rest == 1:
                scale = max(twos, fives)
                digits_int = q.numerator * 10**scale // d
                s = str(digits_int).rjust(scale + 1, "0")
                return s if scale == 0 else f"{s[:-scale]}.{s[-scale:]}"
        enc = self.enclose(4 * digits + 64)
        with gmpy2.context(precision=4 * digits + 64):
            return gmpy2.mpfr((enc.lo + enc.hi) / 2).__format__(f".{digits}g")


@dataclass(frozen=True)
class Rational(Probability):
    value: Fraction

    @property
    def exact(self) -> Fraction:
        return self.value

    def _compute(self, prec: int) -> Interval:
        return Interval.exact(self.value, prec)


@dataclass(frozen=True)
class Scaled(Probability):
    """``base * 2**-shift``."""

    base: Probability
    shift: int

    def _compute(self, prec: int) -> Interval:
        return self.base.enclose(prec).ldexp(-self.shift)


@dataclass(frozen=True)
class InverseLog2(Probability):
    """``1 / log2(n)``; used for the real-valued ``k = log log N`` recipe."""

    n: int

    @property
    def exact(self) -> Fraction | None:
        if is_power_of_two(self.n):
            return Fraction(1, self.n.bit_length() - 1)
        return None

    def _compute(self, prec: int) -> Interval:
        return 1 / iv.log2(Interval.exact(self.n, prec))


@dataclass(frozen=True)
class AmplifiedMarginal(Probability):
    """Probability that measuring the address wires after exact amplification
    from ``a`` to ``a_prime`` in ``rounds`` rounds yields the solution.

    The good set of the amplified algorithm also requires the fresh flag wire
    to read 0; the address alone is found with this larger probability
    ``a' + (1 - a') (a - a~) / (1 - a~)``.
    """

    a: Probability
    a_prime: Probability
    rounds: int

    def _compute(self, prec: int) -> Interval:
        # Children share the parent's precision so nested levels hit the same
        # cache entries; the few ulps lost per level are covered by the guard
        # bits compute_w starts with, and by its escalation otherwise.
        work = bucket_precision(prec)
        a = self.a.enclose(work)
        ap = self.a_prime.enclose(work)
        theta = _asin_sqrt(self.a_prime, work) / (2 * self.rounds + 1)
        s = iv.sin(theta)
        a_tilde = s * s
        result = ap + (1 - ap) * (a - a_tilde) / (1 - a_tilde)
        return Interval(result.lo, result.hi, prec)


@lru_cache(maxsize=4096)
def _enclosure(node: Probability, prec: int) -> Interval:
    return node._compute(prec)


@lru_cache(maxsize=256)
def _asin_sqrt(node: Probability, prec: int) -> Interval:
    return iv.asin(iv.sqrt(node.enclose(prec)))


def as_probability(x) -> Probability:
    if isinstance(x, Probability):
        return x
    if isinstance(x, str):
        return Rational(Fraction(x))
    if isinstance(x, (int, Fraction)):
        return Rational(Fraction(x))
    if isinstance(x, float):
        return Rational(Fraction(x))
    if isinstance(x, Real):
        return Rational(Fraction(float(x)))
    raise TypeError(f"cannot interpret {x!r} as a probability")


def scaled(p: Probability, shift: int) -> Probability:
    if shift == 0:
        return p
    if p.exact is not None:
        return Rational(p.exact / (1 << shift))
    if isinstance(p, Scaled):
        return Scaled(p.base, p.shift + shift)
    return Scaled(p, shift)


def amplified_marginal(a: Probability, a_prime: Probability, rounds: int) -> Probability:
    if rounds == 0:
        return a
    if a_prime.exact == 1:
        return Rational(Fraction(1))
    return AmplifiedMarginal(a, a_prime, rounds)


# ---------------------------------------------------------------------------
# amplification rounds


def _chebyshev_t(m: int, x: Fraction) -> Fraction:
    # fast doubling on the pair (T_j, T_{j+1})
    t0, t1 = Fraction(1), x
    for bit in bin(m)[2:]:
        if bit == "0":
            t0, t1 = 2 * t0 * t0 - 1, 2 * t0 * t1 - x
        else:
            t0, t1 = 2 * t0 * t1 - x, 2 * t1 * t1 - 1
    return t0


def _is_exact_round_count(a: Fraction, a_prime: Fraction, j: int) -> bool:
    """Whether arcsin(sqrt(a')) == (2j+1) arcsin(sqrt(a)) holds exactly."""
    if j < 0 or j > 4096:
        return False
    return a_prime == (1 - _chebyshev_t(2 * j + 1, 1 - 2 * a)) / 2


def _ratio(a: Probability, a_prime: Probability, prec: int) -> Interval:
    return _asin_sqrt(a_prime, prec) / (2 * _asin_sqrt(a, prec)) - Fraction(1, 2)


def _check_domain(a: Probability, a_prime: Probability) -> None:
    qa, qp = a.exact, a_prime.exact
    if qa is not None and qa <= 0:
        raise DomainError(f"success probability must be positive, got {qa}")
    if qp is not None and qp > 1:
        raise DomainError(f"target probability exceeds 1: {qp}")
    if qa is not None and qp is not None:
        if qa > qp:
            raise DomainError(f"cannot lower probability {qa} to {qp}")
        return
    ea, ep = a.enclose(64), a_prime.enclose(64)
    if ea.hi <= 0 or ep.lo > 1:
        raise DomainError("probabilities outside (0, 1]")
    if ea.certainly_gt(ep):
        raise DomainError(f"cannot lower probability {float(a)} to {float(a_prime)}")


def compute_w(a, a_prime, *, max_prec: int = MAX_PRECISION) -> int:
    """Number of amplification rounds taking success probability a to a'.

    Returns ``ceil(arcsin(sqrt(a')) / (2 arcsin(sqrt(a))) - 1/2)``, certified
    with interval arithmetic whose precision is raised until the ceiling is
    unambiguous.
    """
    a, a_prime = as_probability(a), as_probability(a_prime)
    _check_domain(a, a_prime)
    if a == a_prime:
        return 0
    prec = bucket_precision(max(64, _ratio(a, a_prime, 64).magnitude() + 48))
    while prec <= max_prec:
        v = _ratio(a, a_prime, prec)
        w = v.certified_ceil()
        if w is not None:
            if w < 0:
                raise DomainError("target probability below the input probability")
            return w
        j = v.integer_inside()
        if j is not None and a.exact is not None and a_prime.exact is not None:
            if _is_exact_round_count(a.exact, a_prime.exact, j):
                return j
        prec *= 2
    raise CertificationError(f"could not certify the round count within {max_prec} bits")


@dataclass(frozen=True)
class AmplificationSchedule:
    """Rounds and lowered probability for exact amplification of a to a'.

    ``theta`` and ``a_tilde`` are MPFR values at ``prec`` bits; ``a_tilde``
    underflows binary64 once a is below about 2**-1000.
    """

    a: Probability
    a_prime: Probability
    w: int
    theta: gmpy2.mpfr
    a_tilde: gmpy2.mpfr
    prec: int = SCHEDULE_PRECISION

    def rotation_ratio(self) -> float:
        """``a~ / a`` in binary64, the squared cosine of the flag rotation."""
        if self.w == 0:
            return 1.0
        work = self.prec + 32
        theta = _asin_sqrt(self.a_prime, work) / (2 * self.w + 1)
        s = iv.sin(theta)
        return min(1.0, ((s * s) / self.a.enclose(work)).mid())


def amplification_schedule(a, a_prime, *, prec: int = SCHEDULE_PRECISION) -> AmplificationSchedule:
    a, a_prime = as_probability(a), as_probability(a_prime)
    w = compute_w(a, a_prime)
    enc = _asin_sqrt(a_prime, prec + 32) / (2 * w + 1)
    with gmpy2.context(precision=prec):
        theta = gmpy2.mpfr((enc.lo + enc.hi) / 2)
        a_tilde = gmpy2.sin(theta) ** 2
    if w == 0 and a.exact is not None:
        with gmpy2.context(precision=prec):
            a_tilde = gmpy2.mpfr(gmpy2.mpq(a.exact.numerator, a.exact.denominator))
    return AmplificationSchedule(a, a_prime, w, theta, a_tilde, prec)


# ---------------------------------------------------------------------------
# iterated logarithms


def _log2_real(x) -> float:
    if isinstance(x, int) and is_power_of_two(x):
        return float(x.bit_length() - 1)
    return math.log2(x)


def log_star(value, given_as: str = "N") -> int:
    """``min{r >= 0 : log^(r) N <= 1}``; pass ``given_as="log N"`` to give n = log N."""
    if given_as == "log N":
        if value < 0:
            raise DomainError("log N must be nonnegative")
        return 0 if value == 0 else 1 + log_star(value)
    if given_as != "N":
        raise ValueError(f"given_as must be 'N' or 'log N', not {given_as!r}")
    if value <= 0:
        raise DomainError("log* is defined for N >= 1")
    r, x = 0, value
    while x > 1:
        x = _log2_real(x)
        r += 1
    return r


def iterated_log(N, s: int) -> float:
    """The s-fold binary logarithm of N."""
    if s < 0:
        raise DomainError("s must be nonnegative")
    x = N
    for _ in range(s):
        if x <= 0:
            raise DomainError("iterated logarithm reached a nonpositive value")
        x = _log2_real(x)
    return float(x)


def log_log(n: int) -> float:
    """``log log N`` for ``N = 2**n``."""
    return _log2_real(n)


# ---------------------------------------------------------------------------
# arithmetic facts used to drop ceilings


@dataclass(frozen=True)
class FactCheck:
    lhs: object
    rhs: object
    holds: bool


def check_fact_ceiling(k: int, alpha) -> FactCheck:
    """``ceil(alpha/2 (1 + 1/k) - 1/2) <= alpha/2 (1 + 2/k)`` for k >= 2, alpha >= k."""
    alpha = Fraction(alpha)
    if k < 2 or alpha < k:
        raise PreconditionError(f"requires k >= 2 and alpha >= k (k={k}, alpha={alpha})")
    lhs = math.ceil(alpha / 2 * (1 + Fraction(1, k)) - Fraction(1, 2))
    rhs = alpha / 2 * (1 + Fraction(2, k))
    return FactCheck(lhs, rhs, lhs <= rhs)


def check_fact_iterlog(k: int, i: int) -> FactCheck:
    """``(2i + 8) log k < k**(i+1)`` for k >= 3, i >= 2."""
    if k < 3 or i < 2:
        raise PreconditionError(f"requires k >= 3 and i >= 2 (k={k}, i={i})")
    rhs = k ** (i + 1)
    if is_power_of_two(k):
        lhs = (2 * i + 8) * log2_exact(k)
        return FactCheck(lhs, rhs, lhs < rhs)
    prec = 64
    while True:
        lhs = (2 * i + 8) * iv.log2(Interval.exact(k, prec))
        if lhs.certainly_lt(rhs):
            return FactCheck(lhs.mid(), rhs, True)
        if lhs.certainly_ge(rhs):
            return FactCheck(lhs.mid(), rhs, False)
        prec *= 2


# ---------------------------------------------------------------------------
# parameter selection


def _check_k_fits(k: int, n: int) -> None:
    # k <= log log N  <=>  2**k <= n
    if k > n.bit_length() or (1 << k) > n:
        raise ConfigurationError(f"k = {k} exceeds log log N = {log_log(n):.4g}")


def choose_k_fixed_r(log_star_n: int) -> tuple[int, Fraction]:
    """Smallest c1 in [1, 2] with k = (c1 * log* N)**2 a power of 2.

    c1 is taken rational, so sqrt(k) is itself a power of 2.  Returns (k, c1).
    """
    L = log_star_n
    if L < 1:
        raise ConfigurationError("log* N must be at least 1")
    root = 1 << (L - 1).bit_length()
    return root * root, Fraction(root, L)


def choose_k_eps(log_star_n: int, epsilon=None, *, log1p_epsilon=None) -> tuple[int, Fraction]:
    """Smallest c2 >= 4/ln(1+eps) with k = (c2 (log* N + 2))**2 a power of 2.

    ``log1p_epsilon`` may replace ``epsilon`` to give ln(1+eps) exactly (4 for
    eps = e**4 - 1, which no float represents).  Returns (k, c2).
    """
    if (epsilon is None) == (log1p_epsilon is None):
        raise TypeError("pass exactly one of epsilon and log1p_epsilon")
    target = 4 * (log_star_n + 2)

    def log1p(prec: int) -> Interval:
        if log1p_epsilon is not None:
            return Interval.exact(Fraction(log1p_epsilon), prec)
        eps = Fraction(epsilon)
        if eps <= 0:
            raise DomainError("epsilon must be positive")
        return iv.ln(Interval.exact(1 + eps, prec))

    j, prec = 0, 64
    while True:
        # sqrt(k) = 2**j >= 4 (log* N + 2) / ln(1 + eps)
        lhs = log1p(prec).ldexp(j)
        if lhs.certainly_ge(target):
            break
        if lhs.certainly_lt(target):
            j += 1
            if j > 4096:
                raise ConfigurationError("epsilon too small")
            continue
        prec *= 2
        if prec > MAX_PRECISION:
            raise CertificationError("cannot separate c2 from a power of 2")
    return 1 << (2 * j), Fraction(1 << j, log_star_n + 2)


def pick_k_fixed_r(n: int) -> int:
    """k for the fixed-r main result on N = 2**n; requires k <= log log N."""
    k, _ = choose_k_fixed_r(log_star(n, "log N"))
    _check_k_fits(k, n)
    return k


def pick_k_eps(n: int, epsilon=None, *, log1p_epsilon=None) -> int:
    """k for the fixed-epsilon main result on N = 2**n; requires k <= log log N."""
    k, _ = choose_k_eps(log_star(n, "log N"), epsilon, log1p_epsilon=log1p_epsilon)
    _check_k_fits(k, n)
    return k
