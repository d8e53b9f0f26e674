"""Searching four entries with one query.

With N = 4 the uniform superposition already has success probability 1/4,
and one amplification round rotates it by exactly the right angle, so the
flag rotation is the identity and a single query finds the marked entry
with certainty.
"""

from gatesearch.circuit import counts
from gatesearch.constructions import amplify_exact, hadamard_base
from gatesearch.oracle import make_unique_database
from gatesearch.simulator import GoodSet, good_probability, run


def main():
    alg = amplify_exact(hadamard_base(2), 1)
    print(f"rounds w = {alg.w}, counts = {counts(alg.circuit)}, wires = {alg.num_wires}")
    for t in range(4):
        db = make_unique_database(2, t)
        state = run(alg.circuit, db)
        p = good_probability(state, GoodSet(alg.address_wires, alg.good_flags(), db))
        print(f"marked entry {t} ({db.to_hex()}): success probability {p:.15f}")


if __name__ == "__main__":
    main()
