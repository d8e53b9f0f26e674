"""Exact query and gate counts at any scale, without building circuits.

Every step mirrors a builder in ``constructions``: the recurrences below are
the counts those builders produce gate by gate, so the two must agree as
integers wherever both run.  The inequality checkers decide each bound
exactly: surds by squaring, and expressions with pi or an irrational k
against the unfavourable end of a 256-bit-padded enclosure.
"""

from __future__ import annotations

import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import gmpy2

from . import interval as iv
from .errors import ConfigurationError, DomainError, PreconditionError
from .interval import Interval
from .numerics import (
    InverseLog2,
    Probability,
    Rational,
    amplified_marginal,
    as_probability,
    ceil_log2,
    choose_k_eps,
    choose_k_fixed_r,
    compute_w,
    is_power_of_two,
    log_star,
    scaled,
    surd_ge,
    surd_le,
)
from .schedule import RecursionSchedule, build_schedule, schedule_from_sequence

PI_GUARD_BITS = 256


# ---------------------------------------------------------------------------
# count state


@dataclass(frozen=True)
class CountState:
    """What the count recurrences need to know about an algorithm."""

    n: int  # address width
    wires: int  # every wire of the circuit, address and flags
    queries: int
    gates: int
    a_known: Probability  # good set: address = t and newest flag = 0
    p_address: Probability  # address = t, flags unconstrained


def hadamard_counts(n: int) -> CountState:
    p = Rational(Fraction(1, 1 << n))
    return CountState(n, n, 0, n, p, p)


def amplify_counts(state: CountState, a_prime) -> tuple[CountState, int]:
    """Counts after exact amplification of ``state`` to ``a_prime``.

    One flag wire is added.  Queries: (2w+1)Q + w.  Gates: the flag rotation
    joins A, then each round runs the signed query (2 gates), A'^-1, the
    reflection on all wires (4 n_tot + 3) and A'.
    """
    a_prime = as_probability(a_prime)
    w = compute_w(state.p_address, a_prime)
    q = (2 * w + 1) * state.queries + w
    e = (2 * w + 1) * (state.gates + 1) + 2 * w + w * (4 * state.wires + 3)
    p = amplified_marginal(state.p_address, a_prime, w)
    return CountState(state.n, state.wires + 1, q, e, a_prime, p), w


def prefix_counts(state: CountState, n: int) -> CountState:
    """Counts of H on n - m fresh prefix wires alongside the algorithm."""
    extra = n - state.n
    if extra <= 0:
        raise DomainError(f"lift needs n > m, got n={n}, m={state.n}")
    return CountState(
        n,
        state.wires + extra,
        state.queries,
        state.gates + extra,
        scaled(state.a_known, extra),
        scaled(state.p_address, extra),
    )


# ---------------------------------------------------------------------------
# bound checks


@dataclass(frozen=True)
class BoundCheck:
    """One inequality ``lhs <= rhs`` (or ``>=`` where ``relation`` says so).

    ``rhs`` is a short decimal rendering; the verdict ``holds`` is exact.
    ``holds`` is None when a precondition fails and no claim is made.
    """

    name: str
    lhs: int | Fraction
    rhs: str
    relation: str
    holds: bool | None
    preconditions: dict[str, bool] = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return all(self.preconditions.values())


def _fmt(x) -> str:
    if isinstance(x, Interval):
        return _fmt_mpfr((x.lo + x.hi) / 2)
    if isinstance(x, Fraction) and x.denominator != 1:
        return _fmt_mpfr(iv.Interval.exact(x, 64).lo)
    x = int(x)
    return str(x) if x.bit_length() <= 64 else _fmt_mpfr(iv.Interval.exact(x, 64).lo)


def _fmt_mpfr(v) -> str:
    with gmpy2.context(precision=64):
        text = format(gmpy2.mpfr(v), ".12g")
    return text[:-2] if text.endswith(".0") else text


def _surd_text(q: Fraction, c: Fraction) -> str:
    return _fmt(Interval.exact(q, 64) * iv.sqrt(Interval.exact(c, 64)))


def _surd_check(name, lhs, q, c, relation="<=", pre=None) -> BoundCheck:
    """``lhs <= q sqrt(c)`` (or >=), decided by squaring."""
    pre = pre or {}
    verdict = (surd_le if relation == "<=" else surd_ge)(lhs, q, c)
    return BoundCheck(name, lhs, _surd_text(Fraction(q), Fraction(c)), relation, verdict if all(pre.values()) else None, pre)


def _interval_check(name, lhs, rhs: Callable[[int], Interval], pre=None) -> BoundCheck:
    """``lhs <= rhs`` with rhs irrational: must hold against rhs's lower end.

    MPFR precision is relative, so 64 + 256 bits resolves rhs to 2**-256 of
    its size whatever its magnitude.
    """
    pre = pre or {}
    enc = rhs(64 + PI_GUARD_BITS)
    verdict = enc.certainly_ge(lhs)
    return BoundCheck(name, lhs, _fmt(enc), "<=", verdict if all(pre.values()) else None, pre)


def _sqrt_k(k, prec: int) -> Interval:
    return iv.sqrt(Interval.exact(k, prec)) if not isinstance(k, Probability) else 1 / iv.sqrt(k.enclose(prec))


def _k_value(k) -> Fraction | None:
    """Exact k when rational (an int, or 1/InverseLog2 of a power of two)."""
    if isinstance(k, Probability):
        q = k.exact
        return None if q is None else 1 / q
    return Fraction(k)


def check_amplification(w: int, q_in: int, e_in: int, n_tot: int, q_out: int, e_out: int) -> list[BoundCheck]:
    """Exact amplification: query recurrence and the gate total for w >= 1."""
    q_expected = (2 * w + 1) * q_in + w
    return [
        BoundCheck("queries = (2w+1)Q + w", q_out, _fmt(q_expected), "==", q_out == q_expected),
        BoundCheck(
            "gates <= w(4n+2E+8)+E",
            e_out,
            _fmt(w * (4 * n_tot + 2 * e_in + 8) + e_in),
            "<=",
            e_out <= w * (4 * n_tot + 2 * e_in + 8) + e_in if w >= 1 else None,
            {"w >= 1": w >= 1},
        ),
    ]


def check_c1(n1: int, k: int, q1: int, e1: int) -> list[BoundCheck]:
    """Bounds on the base algorithm amplifying H^n1 to exactly 1/k."""
    k = Fraction(k)
    big = {"N_1 >= k^10": (Fraction(1 << n1) >= k**10)}
    # ceil(x - 1/2) with x = sqrt(N1/k) (1 + 1/k) / 2 = sqrt(c)
    c = Fraction(1 << n1) / k * ((1 + 1 / k) / 2) ** 2
    ceiling = _ceil_sqrt_minus_half(c)
    return [
        BoundCheck("Q_1 <= ceil(sqrt(N)(1+1/k)/(2 sqrt k) - 1/2)", q1, _fmt(ceiling), "<=", q1 <= ceiling),
        BoundCheck("Q_1 >= k+2", q1, _fmt(k + 2), ">=", (q1 >= k + 2) if big["N_1 >= k^10"] else None, big),
        _surd_check("E_1 <= 4 sqrt(N_1/k)(1+3/k) n_1", e1, 4 * (1 + 3 / k) * n1, Fraction(1 << n1) / k, pre=big),
    ]


def _ceil_sqrt_minus_half(c: Fraction) -> int:
    """``ceil(sqrt(c) - 1/2)``: the least j >= 0 with (2j + 1)^2 >= 4c."""
    num, den = gmpy2.mpz(c.numerator), gmpy2.mpz(c.denominator)
    j = max(gmpy2.isqrt(num // den) - 1, 0)
    while (2 * j + 1) ** 2 * den < 4 * num:
        j += 1
    while j > 0 and (2 * j - 1) ** 2 * den >= 4 * num:
        j -= 1
    return int(j)


def lift_preconditions(m: int, n: int, k, q_g: int, a_known_g: Probability) -> dict[str, bool]:
    kv = _k_value(k)
    log_k_ok = kv is not None and is_power_of_two(kv.numerator) and kv.denominator == 1
    return {
        "k >= 4": _ge_k(k, 4),
        "n >= m + 2 log k": (n - m >= 2 * (kv.numerator.bit_length() - 1)) if log_k_ok else _gap_real(n - m, k),
        "Q_G >= k+2": _at_least_k_plus(q_g, k, 2),
        "a_G >= 1/k": _prob_ge_inverse(a_known_g, k),
    }


def _ge_k(k, bound) -> bool:
    kv = _k_value(k)
    if kv is not None:
        return kv >= bound
    return (1 / k.enclose(128)).certainly_ge(bound)


def _at_least_k_plus(q: int, k, extra: int) -> bool:
    kv = _k_value(k)
    if kv is not None:
        return q >= kv + extra
    return (1 / k.enclose(128) + extra).certainly_le(q)


def _gap_real(gap: int, k) -> bool:
    """``gap >= 2 log k`` for k given as the probability 1/k."""
    kk = 1 / k.enclose(128)
    return (kk * kk).certainly_le(Interval.exact(1, 128).ldexp(gap))


def _prob_ge_inverse(p: Probability, k) -> bool:
    inv = k if isinstance(k, Probability) else Rational(Fraction(1) / Fraction(k))
    if p == inv:
        return True
    if p.exact is not None and inv.exact is not None:
        return p.exact >= inv.exact
    return p.enclose(256).certainly_ge(inv.enclose(256))


def check_lift(m: int, n: int, k, q_g: int, e_g: int, q_out: int, e_out: int, a_known_g: Probability) -> list[BoundCheck]:
    """Lift bounds: Q' <= Q sqrt(N/M)(1+4/k) and
    E sqrt(N/M) <= E' <= (3n+E) sqrt(N/M)(1+3/k)."""
    pre = lift_preconditions(m, n, k, q_g, a_known_g)
    c = Fraction(1 << (n - m))
    kv = _k_value(k)
    if kv is None:
        inv = k

        def rhs_q(prec):
            return Interval.exact(q_g, prec) * iv.sqrt(Interval.exact(c, prec)) * (1 + 4 * inv.enclose(prec))

        def rhs_e(prec):
            return Interval.exact(3 * n + e_g, prec) * iv.sqrt(Interval.exact(c, prec)) * (1 + 3 * inv.enclose(prec))

        upper_q = _interval_check("Q' <= Q sqrt(N/M)(1+4/k)", q_out, rhs_q, pre)
        upper_e = _interval_check("E' <= (3n+E) sqrt(N/M)(1+3/k)", e_out, rhs_e, pre)
    else:
        upper_q = _surd_check("Q' <= Q sqrt(N/M)(1+4/k)", q_out, q_g * (1 + 4 / kv), c, pre=pre)
        upper_e = _surd_check("E' <= (3n+E) sqrt(N/M)(1+3/k)", e_out, (3 * n + e_g) * (1 + 3 / kv), c, pre=pre)
    lower_e = _surd_check("E' >= E sqrt(N/M)", e_out, e_g, c, ">=", pre)
    return [upper_q, lower_e, upper_e]


def check_boost(k, q_in: int, w: int, q_out: int) -> list[BoundCheck]:
    """Boost 1/k -> 1: w' <= (pi/4)(sqrt k + 1); Q <= (pi/2) Q sqrt k (1+2/sqrt k)^2."""

    def rhs_w(prec):
        return iv.pi(prec) / 4 * (_sqrt_k(k, prec) + 1)

    def rhs_q(prec):
        s = _sqrt_k(k, prec)
        return iv.pi(prec) / 2 * Interval.exact(q_in, prec) * s * (1 + 2 / s) ** 2

    kv = _k_value(k)
    if kv is not None:
        big = surd_ge(q_in, 1, kv)
    else:
        big = _sqrt_k(k, 128).certainly_le(q_in)
    return [
        _interval_check("w' <= (pi/4)(sqrt k + 1)", w, rhs_w),
        _interval_check("Q <= (pi/2) Q sqrt k (1+2/sqrt k)^2", q_out, rhs_q, {"Q >= sqrt k": big}),
    ]


def check_recursive(schedule: RecursionSchedule, q_r: int, e_r: int, gates: list[int]) -> list[BoundCheck]:
    """Whole-recursion bounds plus the per-level lower bound E_i >= sqrt(N_i/4k)."""
    k, r, n, n1 = Fraction(schedule.k), schedule.r, schedule.n, schedule.n_seq[0]
    pre = dict(schedule.preconditions)
    checks = [
        _surd_check("Q_r <= sqrt(N/4k)(1+4/k)^r", q_r, (1 + 4 / k) ** r, Fraction(1 << n) / (4 * k), pre=pre),
        _surd_check("E_r <= 4 sqrt(N/k)(1+6/k)^(2r-1) n_1", e_r, 4 * (1 + 6 / k) ** (2 * r - 1) * n1, Fraction(1 << n) / k, pre=pre),
    ]
    for i, (n_i, e_i) in enumerate(zip(schedule.n_seq, gates), start=1):
        checks.append(_surd_check(f"E_{i} >= sqrt(N_{i}/4k)", e_i, 1, Fraction(1 << n_i) / (4 * k), ">=", pre))
    lk = schedule.log_k
    for i in range(1, r):
        a, b = schedule.n_seq[i - 1], schedule.n_seq[i]
        checks.append(BoundCheck(f"n_{i} + 2 log k <= n_{i + 1}", a + 2 * lk, _fmt(b), "<=", (a + 2 * lk <= b) if all(pre.values()) else None, pre))
    return checks


def check_grover02(n: int, k: Probability, queries: int) -> BoundCheck:
    """Queries <= (pi/4) sqrt N (1 + 4/sqrt k)^4 with k = log log N."""

    def rhs(prec):
        s = _sqrt_k(k, prec)
        root_n = iv.sqrt(Interval.exact(1 << n, prec)) if n % 2 else Interval.exact(1 << (n // 2), prec)
        return iv.pi(prec) / 4 * root_n * (1 + 4 / s) ** 4

    return _interval_check("Q <= (pi/4) sqrt N (1+4/sqrt k)^4", queries, rhs, {"n >= 25": n >= 25})


def check_main(n: int, k: int, r: int, queries: int | None = None, epsilon=None, log1p_epsilon=None) -> list[BoundCheck]:
    """Main result: queries <= (pi/4) sqrt N (1+4/sqrt k)^(r+2), and in the
    fixed-epsilon mode (1+4/sqrt k)^(r+2) <= 1+eps."""
    checks = []
    if queries is not None:

        def rhs(prec):
            root_n = iv.sqrt(Interval.exact(1 << n, prec)) if n % 2 else Interval.exact(1 << (n // 2), prec)
            return iv.pi(prec) / 4 * root_n * (1 + 4 / _sqrt_k(k, prec)) ** (r + 2)

        checks.append(_interval_check("Q <= (pi/4) sqrt N (1+4/sqrt k)^(r+2)", queries, rhs))
    if epsilon is not None or log1p_epsilon is not None:
        checks.append(_eps_check(k, r, epsilon, log1p_epsilon))
    return checks


def _eps_check(k: int, r: int, epsilon, log1p_epsilon) -> BoundCheck:
    name = "(1+4/sqrt k)^(r+2) <= 1+eps"
    from math import isqrt

    root = isqrt(k)
    if root * root == k and epsilon is not None:
        lhs = (1 + Fraction(4, root)) ** (r + 2)
        rhs = 1 + Fraction(epsilon)
        return BoundCheck(name, lhs, _fmt(rhs), "<=", lhs <= rhs)
    # compare logarithms: (r+2) ln(1 + 4/sqrt k) <= ln(1+eps)
    prec = 256
    left = (r + 2) * iv.ln(1 + 4 / iv.sqrt(Interval.exact(k, prec)))
    right = Interval.exact(Fraction(log1p_epsilon), prec) if log1p_epsilon is not None else iv.ln(Interval.exact(1 + Fraction(epsilon), prec))
    return BoundCheck(name, Fraction(left.hi.as_integer_ratio()[0], left.hi.as_integer_ratio()[1]), _fmt(right), "<=", left.certainly_le(right))


BOUND_KINDS = {
    "thm21": check_amplification,
    "cor22": check_boost,
    "thm31": check_lift,
    "cor32": check_grover02,
    "thm33": check_recursive,
    "cor34": check_main,
}


def check_bounds(kind: str, **instance) -> list[BoundCheck]:
    """Run the named inequality family on keyword arguments describing an instance."""
    try:
        fn = BOUND_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown bound kind {kind!r}; expected one of {sorted(BOUND_KINDS)}") from None
    out = fn(**instance)
    return out if isinstance(out, list) else [out]


# ---------------------------------------------------------------------------
# estimates


@dataclass(frozen=True)
class ResourceEstimate:
    level: int | str
    n_i: int
    queries: int
    gates: int
    w: int
    wires: int
    a_known: Probability
    p_address: Probability
    checks: tuple[BoundCheck, ...] = ()
    preconditions: dict[str, bool] = field(default_factory=dict)

    def state(self) -> CountState:
        return CountState(self.n_i, self.wires, self.queries, self.gates, self.a_known, self.p_address)

    def failed(self) -> list[BoundCheck]:
        return [c for c in self.checks if c.holds is False]


def _estimate(level, state: CountState, w: int, checks, pre=None) -> ResourceEstimate:
    return ResourceEstimate(level, state.n, state.queries, state.gates, w, state.wires, state.a_known, state.p_address, tuple(checks), pre or {})


def _target(k) -> Probability:
    if isinstance(k, Probability):
        return k
    return Rational(Fraction(1) / Fraction(k))


def estimate_c1(n1: int, k, *, with_checks: bool = True) -> ResourceEstimate:
    base = hadamard_counts(n1)
    out, w = amplify_counts(base, _target(k))
    checks = []
    if with_checks:
        checks += check_amplification(w, 0, n1, n1, out.queries, out.gates)
        if not isinstance(k, Probability):
            checks += check_c1(n1, k, out.queries, out.gates)
    return _estimate(1, out, w, checks)


def estimate_lift(prev: CountState, n: int, k, level: int | str = "lift", *, with_checks: bool = True) -> ResourceEstimate:
    pre_state = prefix_counts(prev, n)
    out, w = amplify_counts(pre_state, _target(k))
    checks = []
    if with_checks:
        checks += check_amplification(w, pre_state.queries, pre_state.gates, pre_state.wires, out.queries, out.gates)
        checks += check_lift(prev.n, n, k, prev.queries, prev.gates, out.queries, out.gates, prev.a_known)
    return _estimate(level, out, w, checks, lift_preconditions(prev.n, n, k, prev.queries, prev.a_known))


def estimate_boost(prev: CountState, k, *, with_checks: bool = True) -> ResourceEstimate:
    if prev.a_known != _target(k) and not _same_value(prev.a_known, _target(k)):
        raise DomainError("boosting needs a success probability of exactly 1/k")
    out, w = amplify_counts(prev, Rational(Fraction(1)))
    checks = []
    if with_checks:
        checks += check_amplification(w, prev.queries, prev.gates, prev.wires, out.queries, out.gates)
        checks += check_boost(k, prev.queries, w, out.queries)
    return _estimate("boost", out, w, checks)


def _same_value(p: Probability, q: Probability) -> bool:
    return p.exact is not None and p.exact == q.exact


def resolve_schedule(n: int, k: int, r: int | None = None, n_seq=None) -> RecursionSchedule:
    if n_seq is not None:
        return schedule_from_sequence(n_seq, k)
    if r is None:
        raise ConfigurationError("give r or an explicit width sequence")
    return build_schedule(n, k, r)


def estimate_recursive(n: int | None, k: int, r: int | None = None, *, n_seq=None, with_checks: bool = True) -> list[ResourceEstimate]:
    """Per-level estimates for C(1), ..., C(r); the final level carries the
    whole-recursion bound checks."""
    schedule = resolve_schedule(n if n is not None else n_seq[-1], k, r, n_seq)
    return estimate_schedule(schedule, with_checks=with_checks)


def estimate_schedule(schedule: RecursionSchedule, *, with_checks: bool = True) -> list[ResourceEstimate]:
    k = schedule.k
    levels = [estimate_c1(schedule.n_seq[0], k, with_checks=with_checks)]
    for i, n_i in enumerate(schedule.n_seq[1:], start=2):
        levels.append(estimate_lift(levels[-1].state(), n_i, k, i, with_checks=with_checks))
    if with_checks:
        last = levels[-1]
        extra = check_recursive(schedule, last.queries, last.gates, [lv.gates for lv in levels])
        levels[-1] = ResourceEstimate(**{**last.__dict__, "checks": last.checks + tuple(extra), "preconditions": dict(schedule.preconditions)})
    return levels


# ---------------------------------------------------------------------------
# top-level recipes


@dataclass(frozen=True)
class Grover02Recipe:
    n: int
    k: Probability  # 1/k as a probability node; k = log2(n)
    m: int


def grover02_recipe(n: int, *, relaxed: bool = False) -> Grover02Recipe:
    """k = log log N (possibly irrational) and m = ceil(log(n^2 k^3))."""
    if n < 25 and not relaxed:
        raise ConfigurationError(f"the log log N recipe needs n >= 25, got n = {n}")
    if n < 3:
        raise ConfigurationError("n must be at least 3")
    inv_k = InverseLog2(n)
    if inv_k.exact is not None:
        m = ceil_log2(Fraction(n * n) / inv_k.exact**3)
    else:
        prec = 128
        while True:
            log_k = iv.log2(iv.log2(Interval.exact(n, prec)))
            m_iv = iv.log2(Interval.exact(n * n, prec)) + 3 * log_k
            m = m_iv.certified_ceil()
            if m is not None:
                break
            prec *= 2
    if m >= n:
        raise ConfigurationError(f"base width m = {m} is not below n = {n}")
    return Grover02Recipe(n, inv_k, m)


def estimate_grover02(n: int, *, relaxed: bool = False) -> list[ResourceEstimate]:
    recipe = grover02_recipe(n, relaxed=relaxed)
    c1 = estimate_c1(recipe.m, recipe.k)
    lifted = estimate_lift(c1.state(), n, recipe.k, 2)
    boosted = estimate_boost(lifted.state(), recipe.k)
    final = ResourceEstimate(**{**boosted.__dict__, "checks": boosted.checks + (check_grover02(n, recipe.k, boosted.queries),)})
    return [c1, lifted, final]


@dataclass(frozen=True)
class MainParameters:
    n: int
    k: int
    r: int
    c: Fraction | None  # c1 or c2 from the recipe; None when k was given
    mode: str
    preconditions: dict[str, bool]


def main_parameters(n: int, *, r: int | None = None, epsilon=None, log1p_epsilon=None, k: int | None = None) -> MainParameters:
    """k and r for the main result; problems with the recipe's k are recorded,
    not raised, so callers can report them."""
    ls = log_star(n, given_as="log N")
    if epsilon is not None or log1p_epsilon is not None:
        if r is not None:
            raise ConfigurationError("the fixed-epsilon mode sets r = log* N itself")
        mode, r = "fixed_eps", ls
        k_rec, c = choose_k_eps(ls, epsilon, log1p_epsilon=log1p_epsilon)
    else:
        if r is None:
            raise ConfigurationError("give r or epsilon")
        mode = "fixed_r"
        k_rec, c = choose_k_fixed_r(ls)
    if k is not None:
        if k != k_rec:
            c = None
        k_use = k
    else:
        k_use = k_rec
    pre = {
        "k from the recipe": k_use == k_rec,
        "k <= log log N": k_use <= n.bit_length() and (1 << k_use) <= n,
        "1 <= r <= log* N": 1 <= r <= ls,
    }
    return MainParameters(n, k_use, r, c, mode, pre)


def estimate_main(n: int, *, r: int | None = None, epsilon=None, log1p_epsilon=None, k: int | None = None) -> tuple[MainParameters, list[ResourceEstimate]]:
    params = main_parameters(n, r=r, epsilon=epsilon, log1p_epsilon=log1p_epsilon, k=k)
    schedule = build_schedule(n, params.k, params.r)
    levels = estimate_schedule(schedule)
    boosted = estimate_boost(levels[-1].state(), params.k)
    extra = check_main(n, params.k, params.r, boosted.queries, epsilon, log1p_epsilon)
    boosted = ResourceEstimate(**{**boosted.__dict__, "checks": boosted.checks + tuple(extra), "preconditions": dict(params.preconditions)})
    return params, levels + [boosted]


# ---------------------------------------------------------------------------
# reports

COLUMNS = ("level", "n_i", "Q_i", "E_i", "bound", "holds", "preconditions")


def exact_str(value: int) -> str:
    """Full decimal digits, however long (counts are printed exactly)."""
    if not hasattr(sys, "set_int_max_str_digits"):
        return str(value)
    old = sys.get_int_max_str_digits()
    sys.set_int_max_str_digits(0)
    try:
        return str(value)
    finally:
        sys.set_int_max_str_digits(old)


def report_rows(levels: list[ResourceEstimate]) -> list[dict]:
    rows = []
    for lv in levels:
        pre = "ok" if all(lv.preconditions.values()) else "unmet: " + "; ".join(k for k, v in lv.preconditions.items() if not v)
        checks = lv.checks or (None,)
        for c in checks:
            rows.append(
                {
                    "level": str(lv.level),
                    "n_i": lv.n_i,
                    "Q_i": exact_str(lv.queries),
                    "E_i": exact_str(lv.gates),
                    "bound": "" if c is None else f"{c.name} [{c.rhs}]",
                    "holds": "" if c is None else {True: "yes", False: "NO", None: "n/a"}[c.holds],
                    "preconditions": pre,
                }
            )
    return rows


def report_tsv(levels: list[ResourceEstimate]) -> str:
    buf = io.StringIO()
    buf.write("\t".join(COLUMNS) + "\n")
    for row in report_rows(levels):
        buf.write("\t".join(str(row[c]) for c in COLUMNS) + "\n")
    return buf.getvalue()


def report_json(levels: list[ResourceEstimate]) -> str:
    return json.dumps(report_rows(levels), indent=1, sort_keys=False) + "\n"
