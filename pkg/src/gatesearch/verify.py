"""Invariant suites behind the ``verify`` command.

Each suite returns the number of cases it ran and a description of every
failing case, with enough of its inputs to reproduce it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import estimator as est
from .circuit import counts, expand_zero_reflection, reflection_cost
from .constructions import amplify_exact, boost_to_one, build_recursive, hadamard_base
from .errors import ConfigurationError
from .numerics import check_fact_ceiling, check_fact_iterlog, compute_w, log_star
from .oracle import make_unique_database
from .schedule import build_schedule
from .simulator import GoodSet, good_probability, run, verify_reflection_equivalence

EXACT_ATOL = 1e-9


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(what)


def measured(alg, t: int, flags=None) -> float:
    db = make_unique_database(alg.n, t)
    state = run(alg.circuit, db)
    return good_probability(state, GoodSet(alg.address_wires, alg.good_flags() if flags is None else flags, db))


def positions(n: int, rng: random.Random, sample: int = 16) -> list[int]:
    """Every solution position for n <= 6, otherwise a random sample."""
    if n <= 6:
        return list(range(1 << n))
    return rng.sample(range(1 << n), sample)


def suite_facts(rng: random.Random, fault: bool = False) -> SuiteResult:
    res = SuiteResult("facts")
    for k in range(2, 65):
        alphas = {Fraction(k), Fraction(10**6)} | {Fraction(rng.randint(k * 1000, 10**9), 1000) for _ in range(12)}
        alphas |= {Fraction(a) for a in (k + 1, 2 * k, 1000, 12345)}
        for alpha in sorted(alphas):
            if alpha < k or alpha > 10**6:
                continue
            f = check_fact_ceiling(k, alpha)
            res.check(f.holds, f"ceiling fact k={k} alpha={alpha}")
    for k in range(3, 65):
        for i in range(2, 33):
            f = check_fact_iterlog(k, i)
            res.check(f.holds, f"iterated-log fact k={k} i={i}")
    return res


def suite_w_bound(rng: random.Random, fault: bool = False) -> SuiteResult:
    res = SuiteResult("w-bound")
    for n in range(1, 41):
        for k in range(2, 65):
            if (1 << n) < k:
                continue
            w = compute_w(Fraction(1, 1 << n), Fraction(1, k))
            c = Fraction(1 << n, k) * ((1 + Fraction(1, k)) / 2) ** 2
            bound = est._ceil_sqrt_minus_half(c)
            res.check(w <= bound, f"compute_w(2^-{n}, 1/{k}) = {w} > {bound}")
    return res


def suite_reflection(rng: random.Random, fault: bool = False) -> SuiteResult:
    res = SuiteResult("reflection")
    for m in range(1, 9):
        res.check(verify_reflection_equivalence(m), f"ladder differs from the reflection at m={m}")
        if m >= 2:
            got = counts(expand_zero_reflection(m)).gates
            res.check(got == reflection_cost(m) == 4 * m - 1, f"ladder for m={m} has {got} gates")
    return res


def suite_exactness(rng: random.Random, fault: bool = False, max_n: int = 10) -> SuiteResult:
    res = SuiteResult("exactness")
    for n in range(2, max_n + 1):
        base = hadamard_base(n)
        for a_prime in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1)):
            if a_prime < Fraction(1, 1 << n):
                continue
            alg = amplify_exact(base, a_prime)
            for t in positions(n, rng):
                p = measured(alg, t)
                res.check(abs(p - float(a_prime)) <= EXACT_ATOL, f"n={n} a'={a_prime} t={t}: measured {p!r}")
    _, levels = build_recursive(None, 4, n_seq=[4, 8])
    boosted = boost_to_one(levels[-1], 4)
    for t in positions(8, rng):
        res.check(abs(measured(levels[-1], t) - 0.25) <= EXACT_ATOL, f"lift [4,8] t={t}")
        res.check(abs(measured(boosted, t) - 1.0) <= EXACT_ATOL, f"boost [4,8] t={t}")
    return res


def suite_counts(rng: random.Random, fault: bool = False) -> SuiteResult:
    """Built circuits and count-only recurrences agree as integers."""
    res = SuiteResult("counts")
    off = 1 if fault else 0
    for seq, k in (([4, 8], 4), ([3, 6], 4), ([4, 7, 10], 4), ([6, 10], 8), ([5], 4)):
        _, built = build_recursive(None, k, n_seq=seq)
        estimated = est.estimate_recursive(None, k, n_seq=seq, with_checks=False)
        for b, e in zip(built, estimated):
            res.check(
                (b.counts.queries, b.counts.gates) == (e.queries + off, e.gates),
                f"widths {seq} k={k} level n={b.n}: built {b.counts} vs estimated ({e.queries}, {e.gates})",
            )
        bb = boost_to_one(built[-1], k)
        eb = est.estimate_boost(estimated[-1].state(), k, with_checks=False)
        res.check((bb.counts.queries, bb.counts.gates) == (eb.queries + off, eb.gates), f"boost of {seq} k={k}")
        for alg in built + [bb]:
            for c in alg.checks:
                res.check(c.holds is not False, f"{c.name} fails for widths {seq}: {c.lhs} vs {c.rhs}")
    return res


def suite_schedule(rng: random.Random, fault: bool = False, sizes=(1 << 10, 1 << 12, 1 << 16, 1 << 20)) -> SuiteResult:
    """Claims on the widths and E_i >= sqrt(N_i/4k) wherever preconditions hold."""
    res = SuiteResult("schedule")
    for n in sizes:
        for lk in range(2, 11):
            k = 1 << lk
            for r in range(1, log_star(n, "log N") + 1):
                try:
                    schedule = build_schedule(n, k, r)
                except ConfigurationError:
                    continue
                if not schedule.all_hold():
                    continue
                levels = est.estimate_schedule(schedule)
                for lv in levels:
                    for c in lv.checks:
                        res.check(c.holds is not False, f"n={n} k={k} r={r}: {c.name} fails")
    return res


def suite_bounds(rng: random.Random, fault: bool = False) -> SuiteResult:
    """Full-scale inequalities: N = 2^1024 recursion, the log log N recipe at
    N = 2^64 and the fixed-epsilon parameter choice."""
    res = SuiteResult("bounds")
    for r in (2, 3):
        for lv in est.estimate_recursive(1024, 4, r):
            for c in lv.checks:
                res.check(c.holds is not False, f"N=2^1024 k=4 r={r} level {lv.level}: {c.name}")
    for lv in est.estimate_grover02(64):
        for c in lv.checks:
            res.check(c.holds is not False, f"N=2^64 recipe level {lv.level}: {c.name}")
    params = est.main_parameters(1 << 4096, epsilon=1)
    for c in est.check_main(1 << 4096, params.k, params.r, epsilon=1):
        res.check(c.holds is True, f"fixed epsilon=1 at n=2^4096: {c.name}")
    return res


SUITES = {
    "facts": suite_facts,
    "w-bound": suite_w_bound,
    "reflection": suite_reflection,
    "exactness": suite_exactness,
    "counts": suite_counts,
    "schedule": suite_schedule,
    "bounds": suite_bounds,
}


def run_suites(only=None, seed: int = 0, fault: bool = False) -> list[SuiteResult]:
    names = list(SUITES) if not only else list(only)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigurationError(f"unknown suite(s) {unknown}; choose from {list(SUITES)}")
    results = []
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        results.append(SUITES[name](rng, fault=fault))
    return results
