from fractions import Fraction

import pytest

from gatesearch import estimator as est
from gatesearch.circuit import counts
from gatesearch.constructions import (
    amplify_exact,
    boost_to_one,
    build_c1,
    build_recursive,
    grover02,
    hadamard_base,
    lift,
)
from gatesearch.errors import ConfigurationError, DomainError
from gatesearch.numerics import Rational
from gatesearch.oracle import make_unique_database
from gatesearch.simulator import GoodSet, good_probability, run


def measured(alg, t, flags=None):
    db = make_unique_database(alg.n, t)
    state = run(alg.circuit, db)
    return good_probability(state, GoodSet(alg.address_wires, alg.good_flags() if flags is None else flags, db))


def test_hadamard_base():
    alg = hadamard_base(3)
    assert alg.counts.gates == 3 and alg.counts.queries == 0
    assert alg.a_known.exact == Fraction(1, 8)
    with pytest.raises(DomainError):
        hadamard_base(0)


def test_c1_small_is_exact():
    alg = build_c1(4, 4)
    assert alg.w == 1 and alg.counts.queries == 1
    for t in range(16):
        assert abs(measured(alg, t) - 0.25) < 1e-12


def test_c1_counts_without_building():
    # C1(20, 4): 268 rounds of one query each; only the estimator can afford it
    lv = est.estimate_c1(20, 4)
    assert lv.w == 268 and lv.queries == 268
    assert not lv.failed()


def test_c1_rejects_bad_k():
    with pytest.raises(ConfigurationError):
        build_c1(4, 6)
    with pytest.raises(DomainError):
        build_c1(1, 4)  # 1/2 cannot be lowered to 1/4


def test_amplify_exactness_over_targets():
    base = hadamard_base(5)
    for a_prime in (Fraction(1, 2), Fraction(1, 8), Fraction(3, 5), Fraction(1)):
        alg = amplify_exact(base, a_prime)
        for t in (0, 13, 31):
            assert abs(measured(alg, t) - float(a_prime)) < 1e-10


def test_no_rounds_when_target_is_current():
    alg = amplify_exact(hadamard_base(3), Fraction(1, 8))
    assert alg.w == 0 and alg.counts.queries == 0
    assert alg.counts.gates == 3 + 1  # the identity rotation is still a gate


def test_lift_and_boost_pipeline():
    c1 = build_c1(4, 4)
    lifted = lift(c1, 8, 4)
    assert lifted.w == 2 and lifted.counts.queries == 7 and lifted.counts.gates == 287
    boosted = boost_to_one(lifted, 4)
    assert boosted.w == 1 and boosted.counts.queries == 22 and boosted.num_wires == 11
    for t in (0, 37, 200, 255):
        assert abs(measured(lifted, t) - 0.25) < 1e-9
        assert abs(measured(boosted, t) - 1.0) < 1e-9


def test_lift_tracks_address_marginal():
    # the lifted base only sees the address, whose marginal exceeds 1/4
    c1 = build_c1(4, 4)
    assert c1.a_known.exact == Fraction(1, 4)
    assert abs(float(c1.p_address) - 0.2750139971) < 1e-9
    for t in (3, 9):
        assert abs(measured(c1, t, flags=()) - float(c1.p_address)) < 1e-12


def test_amplifying_good_set_probability_misses_target():
    # lowering from a_known rather than the address marginal overshoots 1/4
    c1 = build_c1(4, 4)
    naive = amplify_exact(
        type(c1)(**{**c1.__dict__, "p_address": c1.a_known}),
        Fraction(1, 4),
    )
    lifted = lift(c1, 8, 4)
    wrong = lift(type(c1)(**{**c1.__dict__, "p_address": c1.a_known}), 8, 4)
    assert abs(measured(lifted, 37) - 0.25) < 1e-9
    assert abs(measured(wrong, 37) - 0.25) > 1e-4
    assert naive.w == 0


def test_lift_preconditions_reported():
    lifted = lift(build_c1(4, 4), 8, 4)
    # Q_G = 3 < k + 2 and the widths are far below the recurrence
    assert lifted.unmet()
    with pytest.raises(DomainError):
        lift(build_c1(4, 4), 4, 4)


def test_boost_requires_exact_inverse_k():
    with pytest.raises(DomainError):
        boost_to_one(hadamard_base(3), 4)
    assert boost_to_one(build_c1(4, 4), 4).w == 1


def test_count_recurrences_match_estimator():
    for seq, k in (([4, 8], 4), ([3, 7], 4), ([4, 6, 9], 4)):
        _, built = build_recursive(None, k, n_seq=seq)
        estimated = est.estimate_recursive(None, k, n_seq=seq, with_checks=False)
        for b, e in zip(built, estimated):
            assert (b.counts.queries, b.counts.gates) == (e.queries, e.gates)
            assert counts(b.circuit) == b.counts
        q, e, w = built[0].counts.queries, built[0].counts.gates, built[1].w
        extra = seq[1] - seq[0]
        n_tot = built[0].num_wires + extra
        assert built[1].counts.queries == (2 * w + 1) * q + w
        assert built[1].counts.gates == (2 * w + 1) * (e + extra + 1) + 2 * w + w * (4 * n_tot + 3)


def test_grover02_needs_large_n():
    with pytest.raises(ConfigurationError):
        grover02(10)
    with pytest.raises(ConfigurationError):
        est.estimate_grover02(24)


def test_boost_with_rational_target():
    alg = amplify_exact(hadamard_base(4), Rational(Fraction(1, 4)))
    assert boost_to_one(alg, Rational(Fraction(1, 4))).w == 1
