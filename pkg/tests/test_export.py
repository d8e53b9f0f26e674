from gatesearch.constructions import build_c1
from gatesearch.export import algorithm_extension, dumps_circuit, loads_circuit, read_circuit, write_circuit

from reference import random_circuit


def test_round_trip(tmp_path):
    alg = build_c1(4, 4)
    ext = algorithm_extension(alg)
    path = tmp_path / "c1.jsonl"
    write_circuit(path, alg.circuit, ext)
    back, back_ext = read_circuit(path)
    assert back.equals(alg.circuit) and back_ext == ext
    assert ext["address_wires"] == [0, 1, 2, 3] and ext["flag_wires"] == [4]


def test_byte_stable(rng):
    c = random_circuit(rng, 5, 40, with_queries=True, n_address=3)
    text = dumps_circuit(c)
    again, ext = loads_circuit(text)
    assert ext is None
    assert dumps_circuit(again) == text
    assert text.splitlines()[0] == '{"wires":5,"ancilla":[]}'
