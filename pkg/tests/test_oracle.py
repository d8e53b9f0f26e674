import numpy as np
import pytest

from gatesearch.circuit import WireError, counts, invert
from gatesearch.oracle import (
    from_hex,
    make_unique_database,
    phase_query_fragment,
    signed_query_fragment,
    standard_query_gate,
)
from gatesearch.simulator import run
from gatesearch.circuit import Circuit

from reference import circuit_matrix


def test_make_unique_database():
    db = make_unique_database(2, 3)
    assert db.bits.tolist() == [0, 0, 0, 1]
    assert make_unique_database(1, 0).bits.tolist() == [1, 0]
    with pytest.raises(IndexError):
        make_unique_database(2, 4)


def test_from_hex():
    db = from_hex("0100")
    assert (db.n, db.solution) == (4, 7)
    assert db.to_hex() == "0100"
    with pytest.raises(ValueError):
        from_hex("010")  # 12 bits is not a power of 2
    with pytest.raises(ValueError):
        from_hex("0300")  # two marked entries


def test_standard_query():
    db = make_unique_database(2, 2)
    gate = standard_query_gate([0, 1], 2)
    c = Circuit(3, [gate])
    assert counts(c).queries == 1 and counts(c).gates == 0
    # |t=10, b=0> -> |10, 1>
    assert run(c, db, 0b100).amplitudes[0b101] == 1
    assert run(c, db, 0b010).amplitudes[0b010] == 1
    assert np.allclose(circuit_matrix(Circuit(3, [gate, gate]), db), np.eye(8))
    assert invert(c).gates == c.gates
    with pytest.raises(WireError):
        standard_query_gate([0, 1], 1)


def test_signed_fragment_truth_table():
    for n in range(1, 7):
        for t in {0, (1 << n) - 1, (1 << n) // 3}:
            db = make_unique_database(n, t)
            frag = signed_query_fragment(range(n), n)
            assert counts(frag).queries == 1 and counts(frag).gates == 2
            diag = np.diag(circuit_matrix(frag, db))
            for i in range(1 << n):
                for flag in (0, 1):
                    want = -1 if (i == t and flag == 0) else 1
                    assert np.isclose(diag[(i << 1) | flag], want, atol=1e-12)


def test_phase_fragment(rng):
    db = make_unique_database(3, 5)
    frag = phase_query_fragment(range(3), 3)
    assert counts(frag).queries == 1
    assert np.isclose(run(frag, db, 5 << 1).amplitudes[5 << 1], -1)
    assert np.isclose(run(frag, db, 4 << 1).amplitudes[4 << 1], 1)
    psi = np.zeros(16, dtype=complex)
    psi[0::2] = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    out = run(frag, db, psi).amplitudes
    assert abs(np.linalg.norm(out) - 1) < 1e-12
    assert np.allclose(out[1::2], 0, atol=1e-12)  # work wire back in |0>
