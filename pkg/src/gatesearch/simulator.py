"""Dense state-vector execution of circuits against a database.

Amplitudes live in one complex128 array of length 2**num_wires, viewed as a
tensor with one axis per wire; wire 0 is the most significant index bit.
Gates act through basic slicing of that view, so every update is in place.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .circuit import Circuit, OneQubit, Query, Toffoli, ZeroReflection, expand_zero_reflection
from .errors import ResourceError
from .oracle import Database

DEFAULT_MAX_WIRES = 26
NORM_ATOL = 1e-12


@dataclass
class StateVector:
    num_wires: int
    amplitudes: np.ndarray

    @classmethod
    def basis(cls, num_wires: int, index: int = 0) -> StateVector:
        amps = np.zeros(1 << num_wires, dtype=np.complex128)
        amps[index] = 1.0
        return cls(num_wires, amps)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.num_wires)

    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def dump(self, path: str | Path, gate_count: int | None = None) -> None:
        """Write little-endian (re, im) float64 pairs plus a ``.json`` sidecar."""
        path = Path(path)
        self.amplitudes.astype("<c16").tofile(path)
        header = {"wires": self.num_wires, "gates": gate_count}
        path.with_name(path.name + ".json").write_text(json.dumps(header, sort_keys=True) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> StateVector:
        path = Path(path)
        header = json.loads(path.with_name(path.name + ".json").read_text())
        amps = np.fromfile(path, dtype="<c16").astype(np.complex128)
        return cls(header["wires"], amps)


def _index(num_wires: int, fixed: dict[int, int]) -> tuple:
    idx = [slice(None)] * num_wires
    for w, b in fixed.items():
        idx[w] = b
    return tuple(idx)


def _bits(value: int, width: int) -> list[int]:
    return [(value >> (width - 1 - j)) & 1 for j in range(width)]


def apply_one_qubit(psi: np.ndarray, u: np.ndarray, wire: int) -> None:
    """In-place 2x2 update on a (2,)*W tensor view."""
    lo = psi[_index(psi.ndim, {wire: 0})]
    hi = psi[_index(psi.ndim, {wire: 1})]
    a0 = lo.copy()
    lo *= u[0, 0]
    lo += u[0, 1] * hi
    hi *= u[1, 1]
    hi += u[1, 0] * a0


def _swap(psi: np.ndarray, fixed: dict[int, int], target: int) -> None:
    i0 = _index(psi.ndim, {**fixed, target: 0})
    i1 = _index(psi.ndim, {**fixed, target: 1})
    tmp = psi[i0].copy()
    psi[i0] = psi[i1]
    psi[i1] = tmp


def apply_gate(psi: np.ndarray, gate, database: Database | None) -> None:
    if isinstance(gate, OneQubit):
        apply_one_qubit(psi, gate.matrix, gate.wire)
    elif isinstance(gate, Toffoli):
        _swap(psi, {gate.control1: 1, gate.control2: 1}, gate.target)
    elif isinstance(gate, Query):
        if database is None:
            raise ValueError("circuit queries the database but none was supplied")
        width = len(gate.address_wires)
        if width != database.n:
            raise ValueError(f"query addresses {width} bits, database has n = {database.n}")
        fixed = dict(zip(gate.address_wires, _bits(database.solution, width)))
        if gate.signed:
            psi[_index(psi.ndim, {**fixed, gate.target_wire: 0})] *= -1
        else:
            _swap(psi, fixed, gate.target_wire)
    elif isinstance(gate, ZeroReflection):
        psi *= -1
        psi[_index(psi.ndim, {w: 0 for w in gate.wires})] *= -1
    else:
        raise TypeError(f"unknown gate {gate!r}")


def run(
    circuit: Circuit,
    database: Database | None = None,
    initial: int | np.ndarray | StateVector = 0,
    *,
    max_wires: int = DEFAULT_MAX_WIRES,
    check_norm: bool = False,
) -> StateVector:
    """Apply ``circuit`` to ``initial`` (a basis index or an amplitude vector)."""
    w = circuit.num_wires
    if w > max_wires:
        raise ResourceError(f"circuit needs {w} wires, above the simulation cap of {max_wires}; use count mode")
    if isinstance(initial, StateVector):
        amps = initial.amplitudes.astype(np.complex128, copy=True)
    elif isinstance(initial, np.ndarray):
        amps = initial.astype(np.complex128, copy=True)
    else:
        amps = np.zeros(1 << w, dtype=np.complex128)
        amps[initial] = 1.0
    if amps.shape != (1 << w,):
        raise ValueError(f"initial state has {amps.shape[0]} amplitudes, expected {1 << w}")
    state = StateVector(w, amps)
    psi = state.tensor()
    for pos, gate in enumerate(circuit.gates):
        apply_gate(psi, gate, database)
        if check_norm and abs(state.norm2() - 1.0) > NORM_ATOL:
            raise ArithmeticError(f"norm drifted to {state.norm2()!r} after gate {pos}")
    return state


@dataclass(frozen=True)
class GoodSet:
    """Basis states whose address decodes to the solution and whose listed
    flag wires all read 0."""

    address_wires: tuple[int, ...]
    flag_wires: tuple[int, ...]
    database: Database


def good_probability(state: StateVector, good: GoodSet) -> float:
    fixed = dict(zip(good.address_wires, _bits(good.database.solution, len(good.address_wires))))
    fixed.update({f: 0 for f in good.flag_wires})
    block = state.tensor()[_index(state.num_wires, fixed)]
    return float(np.sum(np.abs(block) ** 2))


def reflection_phase(m: int) -> complex | None:
    """Global phase taking the semantic reflection on m wires to its ladder
    expansion, or None if the two differ beyond a phase or leave ancillas dirty."""
    if m == 1:
        return 1.0 + 0j
    ladder = expand_zero_reflection(m)
    semantic = Circuit(ladder.num_wires, [ZeroReflection(tuple(range(m)))])
    phase = None
    for x in range(1 << m):
        start = x << (m - 1)  # ancillas are the low m-1 bits
        got = run(ladder, None, start).amplitudes
        want = run(semantic, None, start).amplitudes
        nz = np.flatnonzero(np.abs(got) > 1e-12)
        if nz.tolist() != [start]:
            return None
        ratio = got[start] / want[start]
        if phase is None:
            phase = ratio
        if abs(ratio - phase) > 1e-12 or not np.allclose(got, phase * want, atol=1e-12):
            return None
    return complex(phase)


def verify_reflection_equivalence(m: int) -> bool:
    if m > 8:
        raise ValueError("exhaustive check is limited to m <= 8")
    return reflection_phase(m) is not None
