"""The searched database and the query fragments built on it.

Circuits only hold a query slot; the database is handed to the simulator at
run time so one circuit can be checked against every solution position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .circuit import H, X, Circuit, CircuitBuilder, Query, WireError

# gate matrices in time order around the signed query: HX before, XH after
FLAG_IN = H @ X
FLAG_OUT = X @ H


@dataclass(frozen=True)
class Database:
    """An N = 2**n bit string with a unique marked index."""

    n: int
    solution: int
    bits: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("database needs n >= 1")
        if self.bits.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} bits, got {self.bits.shape}")
        marked = np.flatnonzero(self.bits)
        if marked.tolist() != [self.solution]:
            raise ValueError("database must have exactly one marked index")

    @property
    def size(self) -> int:
        return 1 << self.n

    def __getitem__(self, i: int) -> int:
        return int(self.bits[i])

    def to_hex(self) -> str:
        """Bits packed most significant first, four per hex digit."""
        if self.n < 2:
            raise ValueError("hex form needs at least 4 bits")
        return "".join(format(int("".join(map(str, self.bits[i : i + 4])), 2), "x") for i in range(0, self.size, 4))


def make_unique_database(n: int, t: int) -> Database:
    if n < 1:
        raise ValueError("database needs n >= 1")
    if not 0 <= t < (1 << n):
        raise IndexError(f"solution {t} outside [0, {1 << n})")
    bits = np.zeros(1 << n, dtype=np.uint8)
    bits[t] = 1
    bits.setflags(write=False)
    return Database(n, t, bits)


def from_hex(text: str) -> Database:
    """Parse a bit string given in hex; its length must be a power of 2 bits."""
    text = text.strip().lower().removeprefix("0x")
    size = 4 * len(text)
    if size == 0 or size & (size - 1):
        raise ValueError(f"hex database of {size} bits is not a power-of-2 size")
    try:
        value = int(text, 16)
    except ValueError:
        raise ValueError(f"not a hex string: {text!r}") from None
    bits = np.array([(value >> (size - 1 - i)) & 1 for i in range(size)], dtype=np.uint8)
    marked = np.flatnonzero(bits)
    if len(marked) != 1:
        raise ValueError(f"database must mark exactly one index, found {len(marked)}")
    bits.setflags(write=False)
    return Database(size.bit_length() - 1, int(marked[0]), bits)


def _distinct(wires: Sequence[int]) -> None:
    if len(set(wires)) != len(wires):
        raise WireError(f"wire collision in {list(wires)}")


def standard_query_gate(address_wires: Sequence[int], target_wire: int) -> Query:
    """|i, b> -> |i, b xor x_i>; one query, no elementary gates."""
    _distinct([*address_wires, target_wire])
    return Query(tuple(address_wires), target_wire)


def signed_query_fragment(address_wires: Sequence[int], flag_wire: int, num_wires: int | None = None) -> Circuit:
    """Phase -1 on states with x_i = 1 and flag = 0, written out as three gates.

    Counts as one query plus two one-qubit gates.  Constructions use the
    fused ``Query(..., signed=True)`` form, which the simulator applies
    directly and which costs the same.
    """
    wires = [*address_wires, flag_wire]
    _distinct(wires)
    b = CircuitBuilder(num_wires or max(wires) + 1)
    b.one_qubit(FLAG_IN, flag_wire, "hx")
    b.query(address_wires, flag_wire)
    b.one_qubit(FLAG_OUT, flag_wire, "xh")
    return b.build()


def phase_query_fragment(address_wires: Sequence[int], work_wire: int, num_wires: int | None = None) -> Circuit:
    """Phase kickback: |i>|0> -> (-1)^{x_i} |i>|0> through a |-> work state."""
    wires = [*address_wires, work_wire]
    _distinct(wires)
    b = CircuitBuilder(num_wires or max(wires) + 1, ancilla_wires=[work_wire])
    b.x(work_wire).h(work_wire)
    b.query(address_wires, work_wire)
    b.h(work_wire).x(work_wire)
    return b.build()
