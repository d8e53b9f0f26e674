"""Search algorithms as explicit circuits.

Wire layout: address wires first (wire 0 is the most significant address
bit, so a lift's uniform prefix sits in front of the inner address), then
one flag wire per amplification level in the order the levels were added.

Each algorithm carries two exactly tracked probabilities.  ``a_known`` is
the probability of its good set, the solution address with the newest flag
reading 0; amplification makes it exactly the requested target.
``p_address`` is the probability that the address alone reads the solution.
The next amplification's signed query only looks at the address and its own
fresh flag, so ``p_address`` is what that level actually amplifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import estimator as est
from .circuit import Circuit, CircuitBuilder, CountReport, OneQubit, Query, ZeroReflection, counts, invert, remap
from .errors import ConfigurationError, DomainError
from .numerics import Probability, Rational, amplification_schedule, amplified_marginal, as_probability, scaled
from .schedule import RecursionSchedule

__all__ = [
    "SearchAlgorithm",
    "amplify_exact",
    "boost_to_one",
    "build_c1",
    "build_recursive",
    "grover02",
    "hadamard_base",
    "lift",
    "main_result",
    "rotation_matrix",
]


@dataclass(frozen=True)
class SearchAlgorithm:
    circuit: Circuit
    n: int
    address_wires: tuple[int, ...]
    flag_wires: tuple[int, ...]
    a_known: Probability
    p_address: Probability
    counts: CountReport
    w: int = 0
    checks: tuple = ()
    preconditions: dict[str, bool] = field(default_factory=dict)

    @property
    def num_wires(self) -> int:
        return self.circuit.num_wires

    def count_state(self) -> est.CountState:
        return est.CountState(self.n, self.num_wires, self.counts.queries, self.counts.gates, self.a_known, self.p_address)

    def good_flags(self) -> tuple[int, ...]:
        """Flag wires constrained by the good set (only the newest one)."""
        return self.flag_wires[-1:]

    def unmet(self) -> list[str]:
        return [k for k, v in self.preconditions.items() if not v]


def hadamard_base(n: int) -> SearchAlgorithm:
    """H on each of n address wires; finds the solution with probability 2**-n."""
    if n < 1:
        raise DomainError("need at least one address wire")
    b = CircuitBuilder(n)
    for w in range(n):
        b.h(w)
    p = Rational(Fraction(1, 1 << n))
    return SearchAlgorithm(b.build(), n, tuple(range(n)), (), p, p, CountReport(0, n))


def rotation_matrix(ratio: float) -> np.ndarray:
    """Flag rotation |0> -> sqrt(r)|0> + sqrt(1-r)|1>, as a real rotation."""
    c = np.sqrt(ratio)
    s = np.sqrt(max(0.0, 1.0 - ratio))
    return np.array([[c, -s], [s, c]], dtype=complex)


def amplify_exact(alg: SearchAlgorithm, a_prime) -> SearchAlgorithm:
    """Amplify the solution probability to exactly ``a_prime``.

    A' = A with a flag rotation lowering the probability to a~ = sin^2(theta);
    then w rounds of Q = A' D (A')^-1 O', where O' is the signed query on the
    address and the fresh flag and D reflects through |0> on every wire.
    """
    a_prime = as_probability(a_prime)
    if alg.a_known.exact is not None and a_prime.exact is not None and alg.a_known.exact > a_prime.exact:
        raise DomainError(f"cannot lower success probability {alg.a_known.exact} to {a_prime.exact}")
    sched = amplification_schedule(alg.p_address, a_prime)
    n_tot = alg.num_wires
    flag = n_tot
    b = CircuitBuilder(n_tot + 1, ancilla_wires=alg.circuit.ancilla_wires)
    b.extend(alg.circuit)
    b.one_qubit(rotation_matrix(sched.rotation_ratio()), flag, "r")
    a_fwd = b.build()
    a_inv = invert(a_fwd)
    everything = tuple(range(n_tot + 1))
    for _ in range(sched.w):
        b._add(Query(alg.address_wires, flag, signed=True))
        b.extend(a_inv)
        b._add(ZeroReflection(everything))
        b.extend(a_fwd)
    circuit = b.build()
    return SearchAlgorithm(
        circuit,
        alg.n,
        alg.address_wires,
        alg.flag_wires + (flag,),
        a_prime,
        amplified_marginal(alg.p_address, a_prime, sched.w),
        counts(circuit),
        sched.w,
        tuple(est.check_amplification(sched.w, alg.counts.queries, alg.counts.gates, n_tot, *_qe(circuit))),
    )


def _qe(circuit: Circuit) -> tuple[int, int]:
    c = counts(circuit)
    return c.queries, c.gates


def _inverse_k(k) -> Probability:
    if isinstance(k, Probability):
        return k
    return Rational(Fraction(1) / Fraction(k))


def build_c1(n1: int, k) -> SearchAlgorithm:
    """Amplify the uniform superposition over 2**n1 addresses to exactly 1/k."""
    if not isinstance(k, Probability):
        if k < 2 or k & (k - 1):
            raise ConfigurationError(f"k = {k} must be a power of 2, at least 2")
    out = amplify_exact(hadamard_base(n1), _inverse_k(k))
    if not isinstance(k, Probability):
        out = replace(out, checks=out.checks + tuple(est.check_c1(n1, k, out.counts.queries, out.counts.gates)))
    return out


def lift(alg_g: SearchAlgorithm, n: int, k) -> SearchAlgorithm:
    """Turn an algorithm on m address bits into one on n > m bits.

    The n - m new wires form the high part of the address and get a Hadamard
    each; the inner algorithm's queries see the whole n-bit address.  The
    result is amplified to success probability exactly 1/k.
    """
    m = alg_g.n
    if n <= m:
        raise DomainError(f"lift needs n > m, got n={n}, m={m}")
    extra = n - m
    inner = alg_g.circuit
    mapping = [w + extra for w in range(inner.num_wires)]
    prefix = tuple(range(extra))
    moved = remap(inner, mapping, inner.num_wires + extra, query_prefix=prefix)
    b = CircuitBuilder(moved.num_wires, ancilla_wires=moved.ancilla_wires)
    for w in prefix:
        b.h(w)
    b.extend(moved)
    base = SearchAlgorithm(
        b.build(),
        n,
        prefix + tuple(mapping[w] for w in alg_g.address_wires),
        tuple(mapping[w] for w in alg_g.flag_wires),
        scaled(alg_g.a_known, extra),
        scaled(alg_g.p_address, extra),
        CountReport(alg_g.counts.queries, alg_g.counts.gates + extra),
    )
    target = _inverse_k(k)
    a_base = base.p_address
    if a_base.exact is not None and target.exact is not None and a_base.exact > target.exact:
        raise DomainError(f"lifted probability {a_base.exact} already exceeds 1/k")
    out = amplify_exact(base, target)
    pre = est.lift_preconditions(m, n, k, alg_g.counts.queries, alg_g.a_known)
    checks = est.check_lift(m, n, k, alg_g.counts.queries, alg_g.counts.gates, out.counts.queries, out.counts.gates, alg_g.a_known)
    return replace(out, checks=out.checks + tuple(checks), preconditions=pre)


def build_recursive(n: int | None, k: int, r: int | None = None, *, n_seq=None) -> tuple[RecursionSchedule, list[SearchAlgorithm]]:
    """C(1) on n_1 wires, then lifts to n_2, ..., n_r.  Returns every level."""
    schedule = est.resolve_schedule(n if n is not None else n_seq[-1], k, r, n_seq)
    levels = [build_c1(schedule.n_seq[0], k)]
    for n_i in schedule.n_seq[1:]:
        levels.append(lift(levels[-1], n_i, k))
    last = levels[-1]
    extra = est.check_recursive(schedule, last.counts.queries, last.counts.gates, [lv.counts.gates for lv in levels])
    levels[-1] = replace(last, checks=last.checks + tuple(extra), preconditions={**last.preconditions, **schedule.preconditions})
    return schedule, levels


def boost_to_one(alg: SearchAlgorithm, k) -> SearchAlgorithm:
    """Amplify an algorithm with success probability exactly 1/k to 1."""
    target = _inverse_k(k)
    same = alg.a_known == target or (alg.a_known.exact is not None and alg.a_known.exact == target.exact)
    if not same:
        raise DomainError("boosting needs a success probability of exactly 1/k")
    out = amplify_exact(alg, Rational(Fraction(1)))
    checks = est.check_boost(k, alg.counts.queries, out.w, out.counts.queries)
    return replace(out, checks=out.checks + tuple(checks))


def grover02(n: int, *, relaxed: bool = False) -> list[SearchAlgorithm]:
    """The log log N recipe: C(1) on m = ceil(log(n^2 k^3)) wires with
    target 1/k for k = log2(n), one lift to n wires, then the boost."""
    recipe = est.grover02_recipe(n, relaxed=relaxed)
    c1 = build_c1(recipe.m, recipe.k)
    lifted = lift(c1, n, recipe.k)
    boosted = boost_to_one(lifted, recipe.k)
    final = replace(boosted, checks=boosted.checks + (est.check_grover02(n, recipe.k, boosted.counts.queries),))
    return [c1, lifted, final]


def main_result(
    n: int, *, r: int | None = None, epsilon=None, log1p_epsilon=None, k: int | None = None, n_seq=None
) -> tuple[est.MainParameters | None, list[SearchAlgorithm]]:
    """Recursion then boost.  With ``n_seq`` the widths are taken as given
    (relaxed, for simulation) and ``k`` must be supplied."""
    if n_seq is not None:
        if k is None:
            raise ConfigurationError("an explicit width sequence needs an explicit k")
        _, levels = build_recursive(None, k, n_seq=n_seq)
        return None, levels + [boost_to_one(levels[-1], k)]
    params = est.main_parameters(n, r=r, epsilon=epsilon, log1p_epsilon=log1p_epsilon, k=k)
    _, levels = build_recursive(n, params.k, params.r)
    boosted = boost_to_one(levels[-1], params.k)
    extra = est.check_main(n, params.k, params.r, boosted.counts.queries, epsilon, log1p_epsilon)
    boosted = replace(boosted, checks=boosted.checks + tuple(extra), preconditions=dict(params.preconditions))
    return params, levels + [boosted]
