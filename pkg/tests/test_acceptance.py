"""Acceptance criteria 1-9, each timed against its runtime limit.

Every test prints one ``criterion N: PASS/FAIL`` line straight to the
terminal (capture disabled), so ``pytest -v`` output doubles as the report.
"""

import random
import time
from fractions import Fraction

import pytest

from gatesearch import estimator as est
from gatesearch.circuit import counts, expand_zero_reflection
from gatesearch.constructions import amplify_exact, boost_to_one, build_recursive, hadamard_base
from gatesearch.numerics import check_fact_ceiling, check_fact_iterlog, compute_w, log_star
from gatesearch.oracle import make_unique_database
from gatesearch.schedule import build_schedule
from gatesearch.simulator import GoodSet, good_probability, run, verify_reflection_equivalence
from gatesearch.errors import ConfigurationError


def measured(alg, t):
    db = make_unique_database(alg.n, t)
    return good_probability(run(alg.circuit, db), GoodSet(alg.address_wires, alg.good_flags(), db))


@pytest.fixture
def criterion(capsys):
    """Run a check function, time it and print the verdict line."""

    def go(number, limit, body):
        start = time.perf_counter()
        problems = body()
        elapsed = time.perf_counter() - start
        if elapsed >= limit:
            problems.append(f"took {elapsed:.2f}s, limit {limit}s")
        verdict = "PASS" if not problems else "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {number}: {verdict} ({elapsed:.2f}s / {limit}s)")
            for p in problems[:10]:
                print(f"    {p}")
        assert not problems, problems

    return go


def test_criterion_1_exact_amplification(criterion):
    def body():
        rng = random.Random(1)
        bad = []
        for n in range(2, 11):
            base = hadamard_base(n)
            ts = range(1 << n) if n <= 6 else rng.sample(range(1 << n), 16)
            for a_prime in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1)):
                if a_prime < Fraction(1, 1 << n):
                    continue  # amplification cannot lower a probability
                alg = amplify_exact(base, a_prime)
                for t in ts:
                    p = measured(alg, t)
                    if abs(p - float(a_prime)) > 1e-9:
                        bad.append(f"n={n} a'={a_prime} t={t}: {p!r}")
        return bad

    criterion(1, 60, body)


def test_criterion_2_grover_four(criterion):
    def body():
        alg = amplify_exact(hadamard_base(2), 1)
        bad = [] if alg.counts.queries == 1 else [f"{alg.counts.queries} queries"]
        for t in range(4):
            p = measured(alg, t)
            if abs(p - 1.0) > 1e-12:
                bad.append(f"t={t}: {p!r}")
        return bad

    criterion(2, 1, body)


def test_criterion_3_desk_pipeline(criterion):
    def body():
        bad = []
        _, levels = build_recursive(None, 4, n_seq=[4, 8])
        lifted = levels[-1]
        boosted = boost_to_one(lifted, 4)
        if lifted.counts.queries != 7:
            bad.append(f"lift uses {lifted.counts.queries} queries")
        if boosted.counts.queries != 22:
            bad.append(f"boost uses {boosted.counts.queries} queries")
        for t in (0, 37, 128, 255):
            p, q = measured(lifted, t), measured(boosted, t)
            if abs(p - 0.25) > 1e-9 or abs(q - 1.0) > 1e-9:
                bad.append(f"t={t}: lift {p!r}, boost {q!r}")
        estimated = est.estimate_recursive(None, 4, n_seq=[4, 8], with_checks=False)
        eb = est.estimate_boost(estimated[-1].state(), 4, with_checks=False)
        built_counts = [(a.counts.queries, a.counts.gates) for a in levels + [boosted]]
        est_counts = [(e.queries, e.gates) for e in estimated + [eb]]
        if built_counts != est_counts:
            bad.append(f"built {built_counts} vs estimated {est_counts}")
        return bad

    criterion(3, 5, body)


def test_criterion_4_full_scale_counts(criterion):
    wanted = ("Q_r <= sqrt(N/4k)(1+4/k)^r", "E_r <= 4 sqrt(N/k)(1+6/k)^(2r-1) n_1")

    def body():
        bad = []
        for r, seq in ((2, [26, 1024]), (3, [20, 26, 1024])):
            levels = est.estimate_recursive(1024, 4, r)
            if [lv.n_i for lv in levels] != seq:
                bad.append(f"r={r}: schedule {[lv.n_i for lv in levels]}")
            final = {c.name: c for c in levels[-1].checks}
            for name in wanted:
                if name not in final or final[name].holds is not True:
                    bad.append(f"r={r}: {name} not certified")
        return bad

    criterion(4, 5, body)


def test_criterion_5_schedule_sweep(criterion):
    def body():
        bad, cases = [], 0
        for n in (1 << 10, 1 << 12, 1 << 16, 1 << 20):
            for lk in range(2, 11):
                k = 1 << lk
                for r in range(1, log_star(n, "log N") + 1):
                    try:
                        schedule = build_schedule(n, k, r)
                    except ConfigurationError:
                        continue
                    if not schedule.all_hold():
                        continue
                    cases += 1
                    seq = schedule.n_seq
                    if any(a + 2 * lk > b for a, b in zip(seq, seq[1:])):
                        bad.append(f"n={n} k={k} r={r}: gap fails for {seq}")
                    levels = est.estimate_schedule(schedule)
                    for c in levels[-1].checks:
                        if c.name.startswith("E_") and ">=" in c.name and c.holds is not True:
                            bad.append(f"n={n} k={k} r={r}: {c.name}")
        if cases == 0:
            bad.append("no case had passing preconditions")
        return bad

    criterion(5, 30, body)


def test_criterion_6_reflection(criterion):
    def body():
        bad = []
        for m in range(2, 9):
            if not verify_reflection_equivalence(m):
                bad.append(f"m={m}: ladder differs")
            g = counts(expand_zero_reflection(m)).gates
            if g != 4 * m - 1:
                bad.append(f"m={m}: {g} gates")
        return bad

    criterion(6, 30, body)


def test_criterion_7_w_bound_and_facts(criterion):
    def body():
        bad = []
        for n in range(1, 41):
            for k in range(2, 65):
                if (1 << n) < k:
                    continue
                w = compute_w(Fraction(1, 1 << n), Fraction(1, k))
                # ceil(x - 1/2) with x^2 = N (1+1/k)^2 / 4k, decided on integers
                bound = est._ceil_sqrt_minus_half(Fraction(1 << n, k) * ((1 + Fraction(1, k)) / 2) ** 2)
                if w > bound:
                    bad.append(f"n={n} k={k}: w={w} > {bound}")
        rng = random.Random(7)
        for k in range(2, 65):
            alphas = {Fraction(k), Fraction(10**6)} | {Fraction(rng.randint(k * 100, 10**8), 100) for _ in range(20)}
            for alpha in alphas:
                if not check_fact_ceiling(k, alpha).holds:
                    bad.append(f"ceiling fact k={k} alpha={alpha}")
        for k in range(3, 65):
            for i in range(2, 33):
                if not check_fact_iterlog(k, i).holds:
                    bad.append(f"iterated-log fact k={k} i={i}")
        return bad

    criterion(7, 30, body)


def test_criterion_8_log_log_recipe(criterion):
    def body():
        bad = []
        recipe = est.grover02_recipe(64)
        if recipe.k.exact != Fraction(1, 6) or recipe.m != 20:
            bad.append(f"k = 1/{recipe.k.exact}, m = {recipe.m}")
        final = est.estimate_grover02(64)[-1]
        checks = {c.name: c for c in final.checks}
        c = checks.get("Q <= (pi/4) sqrt N (1+4/sqrt k)^4")
        if c is None or c.holds is not True:
            bad.append(f"query bound not certified: {c}")
        return bad

    criterion(8, 5, body)


def test_criterion_9_fixed_epsilon(criterion):
    def body():
        n = 1 << 4096  # log N; log* N = 6 and k = 4096 <= log log N
        params = est.main_parameters(n, epsilon=1)
        bad = [f"unmet: {k}" for k, ok in params.preconditions.items() if not ok]
        checks = est.check_main(n, params.k, params.r, epsilon=1)
        if not checks or not all(c.holds is True for c in checks):
            bad.append(f"(1+4/sqrt k)^(r+2) <= 2 not certified: {checks}")
        return bad

    criterion(9, 5, body)
