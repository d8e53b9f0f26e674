import numpy as np
import pytest

from gatesearch.circuit import (
    H,
    Circuit,
    CircuitBuilder,
    CountReport,
    ValidationError,
    WireError,
    append_one_qubit,
    append_query,
    append_zero_reflection,
    compose,
    counts,
    empty,
    expand_zero_reflection,
    invert,
    query_widths,
)
from gatesearch.errors import DomainError
from gatesearch.simulator import run

from reference import circuit_matrix, random_circuit


def test_append_one_qubit_counts():
    c = append_one_qubit(empty(1), H, 0, "h")
    assert counts(c) == CountReport(0, 1)
    # identity rotation (a~/a = 1) is still a gate
    c = append_one_qubit(c, np.eye(2), 0, "r")
    assert counts(c) == CountReport(0, 2)


def test_non_unitary_and_bad_wires_rejected():
    with pytest.raises(ValidationError):
        append_one_qubit(empty(1), np.sqrt(2) * np.eye(2), 0)
    with pytest.raises(IndexError):
        append_one_qubit(empty(1), H, 1)
    with pytest.raises(WireError):
        append_zero_reflection(empty(3), [0, 0])
    with pytest.raises(WireError):
        append_query(empty(3), [0, 1], 1)


def test_zero_reflection_costs():
    assert counts(append_zero_reflection(empty(3), [0, 1, 2])).gates == 11
    assert counts(append_zero_reflection(empty(1), [0])).gates == 1
    assert counts(append_zero_reflection(empty(22), range(22))).gates == 87
    c = append_query(append_zero_reflection(empty(23), range(22)), range(21), 22)
    assert counts(c) == CountReport(1, 87)


def test_counts_examples():
    b = CircuitBuilder(5)
    for w in range(5):
        b.h(w)
    assert counts(b.build()) == CountReport(0, 5)
    assert counts(CircuitBuilder(3).query([0, 1], 2, signed=True).build()) == CountReport(1, 2)


def test_expand_zero_reflection_shape():
    c = expand_zero_reflection(2)
    assert c.num_wires == 3 and c.ancilla_wires == (2,)
    assert len(c.gates) == 7 and counts(c).gates == 7
    for m in range(2, 9):
        assert counts(expand_zero_reflection(m)).gates == 4 * m - 1
    with pytest.raises(DomainError):
        expand_zero_reflection(1)


def test_invert_examples():
    c = CircuitBuilder(1).h(0).build()
    assert invert(c).equals(c)
    b = CircuitBuilder(3).h(0).toffoli(0, 1, 2).x(1)
    c = b.build()
    assert [type(g).__name__ for g in invert(c).gates] == ["OneQubit", "Toffoli", "OneQubit"]
    assert invert(c).gates[0].wire == 1


def test_invert_round_trip_and_counts(rng):
    for _ in range(20):
        c = random_circuit(rng, 6, 40)
        assert invert(invert(c)).equals(c, atol=1e-12)
        assert counts(invert(c)) == counts(c)


def test_invert_undoes_circuit(rng):
    for _ in range(10):
        c = random_circuit(rng, 6, 30)
        both = compose(c, invert(c))
        for start in rng.integers(0, 64, size=4):
            out = run(both, None, int(start)).amplitudes
            expected = np.zeros(64)
            expected[start] = 1
            assert np.allclose(out, expected, atol=1e-10)


def test_count_additivity(rng):
    for _ in range(10):
        a, b = random_circuit(rng, 5, 20), random_circuit(rng, 5, 25)
        assert counts(compose(a, b)) == counts(a) + counts(b)


def test_counts_are_deterministic(rng):
    c = random_circuit(rng, 6, 50)
    assert counts(c) == counts(Circuit(c.num_wires, c.gates))


def test_circuit_is_frozen():
    c = empty(2)
    with pytest.raises(AttributeError):
        c.num_wires = 3


def test_query_audit():
    c = CircuitBuilder(5).query([0, 1, 2], 4).query([1, 2], 3, signed=True).build()
    assert query_widths(c) == [3, 2]


def test_unitary_matches_reference(rng):
    # the same random circuit through the simulator and the dense reference
    c = random_circuit(rng, 4, 25)
    u = circuit_matrix(c)
    for start in range(16):
        assert np.allclose(run(c, None, start).amplitudes, u[:, start], atol=1e-12)
