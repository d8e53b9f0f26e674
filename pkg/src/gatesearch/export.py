"""Line-oriented JSON circuit files.

Line 1 is a header ``{"wires": n, "ancilla": [...]}``; an optional record
``{"a_known": ..., "address_wires": ..., "flag_wires": ...}`` follows for
search algorithms; then one record per gate.  Keys are written in a fixed
order with compact separators and floats in shortest round-trip form, so the
same circuit always produces the same bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .circuit import H, Circuit, OneQubit, Query, Toffoli, ZeroReflection, _check_unitary

OPS = ("h", "u", "toffoli", "query", "squery", "refl0")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def gate_record(gate) -> dict:
    if isinstance(gate, OneQubit):
        if gate.name == "h" and np.array_equal(gate.matrix, H):
            return {"op": "h", "wires": [gate.wire]}
        m = [[float(z.real), float(z.imag)] for z in np.asarray(gate.matrix).ravel()]
        return {"op": "u", "wires": [gate.wire], "matrix": m}
    if isinstance(gate, Toffoli):
        return {"op": "toffoli", "wires": list(gate.wires)}
    if isinstance(gate, Query):
        return {"op": "squery" if gate.signed else "query", "wires": list(gate.wires)}
    if isinstance(gate, ZeroReflection):
        return {"op": "refl0", "wires": list(gate.wires)}
    raise TypeError(f"cannot export {gate!r}")


def gate_from_record(rec: dict):
    op, wires = rec["op"], [int(w) for w in rec["wires"]]
    if op == "h":
        return OneQubit(_check_unitary(H), wires[0], "h")
    if op == "u":
        m = np.array([complex(re, im) for re, im in rec["matrix"]]).reshape(2, 2)
        return OneQubit(_check_unitary(m), wires[0], "u")
    if op == "toffoli":
        return Toffoli(*wires)
    if op in ("query", "squery"):
        return Query(tuple(wires[:-1]), wires[-1], op == "squery")
    if op == "refl0":
        return ZeroReflection(tuple(wires))
    raise ValueError(f"unknown op {op!r}; expected one of {OPS}")


def algorithm_extension(alg) -> dict:
    return {
        "a_known": alg.a_known.decimal(40),
        "address_wires": list(alg.address_wires),
        "flag_wires": list(alg.flag_wires),
    }


def dumps_circuit(circuit: Circuit, extension: dict | None = None) -> str:
    lines = [_dump({"wires": circuit.num_wires, "ancilla": list(circuit.ancilla_wires)})]
    if extension is not None:
        lines.append(_dump({key: extension[key] for key in ("a_known", "address_wires", "flag_wires")}))
    lines.extend(_dump(gate_record(g)) for g in circuit.gates)
    return "\n".join(lines) + "\n"


def loads_circuit(text: str) -> tuple[Circuit, dict | None]:
    records = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not records or "wires" not in records[0] or "op" in records[0]:
        raise ValueError("missing header record")
    header, rest = records[0], records[1:]
    extension = None
    if rest and "a_known" in rest[0]:
        extension, rest = rest[0], rest[1:]
    gates = [gate_from_record(r) for r in rest]
    return Circuit(int(header["wires"]), gates, header.get("ancilla", [])), extension


def write_circuit(path: str | Path, circuit: Circuit, extension: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_circuit(circuit, extension))


def read_circuit(path: str | Path) -> tuple[Circuit, dict | None]:
    return loads_circuit(Path(path).read_text(encoding="utf-8"))
