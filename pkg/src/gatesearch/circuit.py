"""Gate-level circuit representation and count accounting.

The gate set is the Toffoli gate plus arbitrary one-qubit unitaries, with
two macro gates: the database query (standard or signed) and the reflection
through the all-zeros state of a wire group.  Queries cost no elementary
gates; a signed query carries its two flag-qubit gates; a reflection on m
wires costs ``4m - 1`` (``1`` when m = 1), the size of its Toffoli-ladder
expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

UNITARY_ATOL = 1e-10

SQRT_HALF = 1 / np.sqrt(2.0)
H = np.array([[SQRT_HALF, SQRT_HALF], [SQRT_HALF, -SQRT_HALF]], dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
MINUS_Z = -Z
I2 = np.eye(2, dtype=complex)


class ValidationError(ValueError):
    """A gate matrix is not unitary or a gate is malformed."""


class WireError(IndexError):
    """Wire index out of range or repeated within one gate."""


# ---------------------------------------------------------------------------
# counts


@dataclass(frozen=True)
class CountReport:
    queries: int = 0
    gates: int = 0

    def __add__(self, other: CountReport) -> CountReport:
        return CountReport(self.queries + other.queries, self.gates + other.gates)

    def __mul__(self, times: int) -> CountReport:
        return CountReport(self.queries * times, self.gates * times)

    __rmul__ = __mul__


def reflection_cost(m: int) -> int:
    """Elementary gates in the expanded reflection through |0^m>."""
    if m < 1:
        raise DomainError("reflection needs at least one wire")
    return 1 if m == 1 else 4 * m - 1


# ---------------------------------------------------------------------------
# gates


@dataclass(frozen=True, eq=False)
class OneQubit:
    matrix: np.ndarray
    wire: int
    name: str = "u"

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.wire,)

    def cost(self) -> CountReport:
        return CountReport(0, 1)

    def inverse(self) -> OneQubit:
        name = self.name if self.name in ("h", "x", "z", "-z") else "u"
        return OneQubit(self.matrix.conj().T, self.wire, name)

    def remap(self, m: Sequence[int]) -> OneQubit:
        return OneQubit(self.matrix, m[self.wire], self.name)

    def same_as(self, other, atol: float = 1e-12) -> bool:
        return (
            isinstance(other, OneQubit)
            and self.wire == other.wire
            and np.allclose(self.matrix, other.matrix, rtol=0, atol=atol)
        )


@dataclass(frozen=True)
class Toffoli:
    control1: int
    control2: int
    target: int

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.control1, self.control2, self.target)

    def cost(self) -> CountReport:
        return CountReport(0, 1)

    def inverse(self) -> Toffoli:
        return self

    def remap(self, m: Sequence[int]) -> Toffoli:
        return Toffoli(m[self.control1], m[self.control2], m[self.target])

    def same_as(self, other, atol: float = 1e-12) -> bool:
        return self == other


@dataclass(frozen=True)
class Query:
    """The database oracle on ``address_wires`` (most significant first).

    Standard style XORs x_i into the target; signed style is the
    flag-sandwiched variant that negates basis states with x_i = 1 and
    target = 0 and is costed with its two flag gates.
    """

    address_wires: tuple[int, ...]
    target_wire: int
    signed: bool = False

    @property
    def wires(self) -> tuple[int, ...]:
        return (*self.address_wires, self.target_wire)

    def cost(self) -> CountReport:
        return CountReport(1, 2 if self.signed else 0)

    def inverse(self) -> Query:
        return self

    def remap(self, m: Sequence[int], prefix: tuple[int, ...] = ()) -> Query:
        return Query((*prefix, *(m[w] for w in self.address_wires)), m[self.target_wire], self.signed)

    def same_as(self, other, atol: float = 1e-12) -> bool:
        return self == other


@dataclass(frozen=True)
class ZeroReflection:
    """``2|0..0><0..0| - I`` on ``wires``."""

    wires: tuple[int, ...]

    def cost(self) -> CountReport:
        return CountReport(0, reflection_cost(len(self.wires)))

    def inverse(self) -> ZeroReflection:
        return self

    def remap(self, m: Sequence[int]) -> ZeroReflection:
        return ZeroReflection(tuple(m[w] for w in self.wires))

    def same_as(self, other, atol: float = 1e-12) -> bool:
        return self == other


Gate = OneQubit | Toffoli | Query | ZeroReflection


def _check_unitary(matrix) -> np.ndarray:
    u = np.asarray(matrix, dtype=complex)
    if u.shape != (2, 2):
        raise ValidationError(f"one-qubit gate needs a 2x2 matrix, got shape {u.shape}")
    if not np.allclose(u.conj().T @ u, I2, rtol=0, atol=UNITARY_ATOL):
        raise ValidationError("matrix is not unitary within 1e-10")
    u.setflags(write=False)
    return u


def _check_wires(gate, num_wires: int) -> None:
    ws = gate.wires
    if len(set(ws)) != len(ws):
        raise WireError(f"repeated wire in {gate}")
    for w in ws:
        if not 0 <= w < num_wires:
            raise WireError(f"wire {w} outside range [0, {num_wires})")


# ---------------------------------------------------------------------------
# circuits


class Circuit:
    """Immutable ordered gate list over ``num_wires`` wires.

    ``ancilla_wires`` must start and end in |0>.  Wire 0 is the most
    significant bit of a basis-state index.
    """

    __slots__ = ("num_wires", "gates", "ancilla_wires")

    def __init__(self, num_wires: int, gates: Iterable = (), ancilla_wires: Iterable[int] = ()):
        if num_wires < 1:
            raise ValueError("a circuit needs at least one wire")
        gates = tuple(gates)
        for g in gates:
            _check_wires(g, num_wires)
        self._set(num_wires, gates, tuple(sorted(set(ancilla_wires))))

    def _set(self, num_wires, gates, ancilla):
        object.__setattr__(self, "num_wires", num_wires)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "ancilla_wires", ancilla)

    @classmethod
    def _trusted(cls, num_wires: int, gates: tuple, ancilla: tuple = ()) -> Circuit:
        c = object.__new__(cls)
        c._set(num_wires, gates, ancilla)
        return c

    def __setattr__(self, name, value):
        raise AttributeError("Circuit is immutable")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __repr__(self) -> str:
        return f"Circuit(num_wires={self.num_wires}, gates={len(self.gates)})"

    def __add__(self, other: Circuit) -> Circuit:
        return compose(self, other)

    def counts(self) -> CountReport:
        return counts(self)

    def equals(self, other: Circuit, atol: float = 1e-12) -> bool:
        """Gate-for-gate equality, one-qubit matrices compared within atol."""
        return (
            self.num_wires == other.num_wires
            and self.ancilla_wires == other.ancilla_wires
            and len(self.gates) == len(other.gates)
            and all(a.same_as(b, atol) for a, b in zip(self.gates, other.gates))
        )


class CircuitBuilder:
    """Mutable accumulator producing a frozen ``Circuit``."""

    def __init__(self, num_wires: int, ancilla_wires: Iterable[int] = ()):
        self.num_wires = num_wires
        self.ancilla_wires = tuple(ancilla_wires)
        self._gates: list = []

    def _add(self, gate) -> CircuitBuilder:
        _check_wires(gate, self.num_wires)
        self._gates.append(gate)
        return self

    def one_qubit(self, matrix, wire: int, name: str = "u") -> CircuitBuilder:
        return self._add(OneQubit(_check_unitary(matrix), wire, name))

    def h(self, wire: int) -> CircuitBuilder:
        return self._add(OneQubit(_H, wire, "h"))

    def x(self, wire: int) -> CircuitBuilder:
        return self._add(OneQubit(_X, wire, "x"))

    def toffoli(self, c1: int, c2: int, target: int) -> CircuitBuilder:
        return self._add(Toffoli(c1, c2, target))

    def query(self, address_wires: Sequence[int], target: int, signed: bool = False) -> CircuitBuilder:
        return self._add(Query(tuple(address_wires), target, signed))

    def zero_reflection(self, wires: Sequence[int]) -> CircuitBuilder:
        if len(wires) < 1:
            raise WireError("reflection needs at least one wire")
        return self._add(ZeroReflection(tuple(wires)))

    def extend(self, circuit: Circuit | Iterable) -> CircuitBuilder:
        gates = circuit.gates if isinstance(circuit, Circuit) else tuple(circuit)
        if isinstance(circuit, Circuit) and circuit.num_wires > self.num_wires:
            raise WireError("sub-circuit is wider than the builder")
        self._gates.extend(gates)
        return self

    def build(self) -> Circuit:
        return Circuit._trusted(self.num_wires, tuple(self._gates), tuple(sorted(set(self.ancilla_wires))))


_H = _check_unitary(H)
_X = _check_unitary(X)
_MINUS_Z = _check_unitary(MINUS_Z)


def empty(num_wires: int) -> Circuit:
    return Circuit._trusted(num_wires, ())


def append_one_qubit(circuit: Circuit, matrix, wire: int, name: str = "u") -> Circuit:
    gate = OneQubit(_check_unitary(matrix), wire, name)
    _check_wires(gate, circuit.num_wires)
    return Circuit._trusted(circuit.num_wires, circuit.gates + (gate,), circuit.ancilla_wires)


def append_toffoli(circuit: Circuit, c1: int, c2: int, target: int) -> Circuit:
    gate = Toffoli(c1, c2, target)
    _check_wires(gate, circuit.num_wires)
    return Circuit._trusted(circuit.num_wires, circuit.gates + (gate,), circuit.ancilla_wires)


def append_query(circuit: Circuit, address_wires: Sequence[int], target: int, signed: bool = False) -> Circuit:
    gate = Query(tuple(address_wires), target, signed)
    _check_wires(gate, circuit.num_wires)
    return Circuit._trusted(circuit.num_wires, circuit.gates + (gate,), circuit.ancilla_wires)


def append_zero_reflection(circuit: Circuit, wires: Sequence[int]) -> Circuit:
    if len(wires) < 1:
        raise WireError("reflection needs at least one wire")
    gate = ZeroReflection(tuple(wires))
    _check_wires(gate, circuit.num_wires)
    return Circuit._trusted(circuit.num_wires, circuit.gates + (gate,), circuit.ancilla_wires)


def compose(*circuits: Circuit) -> Circuit:
    """Run the circuits in order on the widest wire set among them."""
    width = max(c.num_wires for c in circuits)
    gates = tuple(g for c in circuits for g in c.gates)
    ancilla = tuple(sorted({w for c in circuits for w in c.ancilla_wires}))
    return Circuit._trusted(width, gates, ancilla)


def invert(circuit: Circuit) -> Circuit:
    """Reverse the gate order and conjugate-transpose one-qubit matrices."""
    gates = tuple(g.inverse() for g in reversed(circuit.gates))
    return Circuit._trusted(circuit.num_wires, gates, circuit.ancilla_wires)


def counts(circuit: Circuit) -> CountReport:
    q = e = 0
    for g in circuit.gates:
        c = g.cost()
        q += c.queries
        e += c.gates
    return CountReport(q, e)


def query_widths(circuit: Circuit) -> list[int]:
    """Audit: number of address wires each query touches, in gate order."""
    return [len(g.address_wires) for g in circuit.gates if isinstance(g, Query)]


def expand_zero_reflection(m: int) -> Circuit:
    """Toffoli-ladder realisation of the reflection through |0^m>.

    Wires ``0..m-1`` carry the input; wires ``m..2m-2`` are ancillas that
    collect the running AND of the flipped inputs and are restored to |0>.
    """
    if m < 2:
        raise DomainError("the ladder needs m >= 2; use a single Z for m = 1")
    anc = list(range(m, 2 * m - 1))
    b = CircuitBuilder(2 * m - 1, ancilla_wires=anc)
    for w in range(m):
        b.x(w)
    ladder = [Toffoli(0, 1, anc[0])]
    for j in range(2, m):
        ladder.append(Toffoli(anc[j - 2], j, anc[j - 1]))
    b.extend(ladder)
    b._add(OneQubit(_MINUS_Z, anc[-1], "-z"))
    b.extend(reversed(ladder))
    for w in range(m):
        b.x(w)
    return b.build()


def remap(circuit: Circuit, mapping: Sequence[int], num_wires: int, query_prefix: tuple[int, ...] = ()) -> Circuit:
    """Relabel wires; ``query_prefix`` is prepended to every query's address."""
    gates = []
    for g in circuit.gates:
        if isinstance(g, Query):
            gates.append(g.remap(mapping, query_prefix))
        else:
            gates.append(g.remap(mapping))
    ancilla = tuple(mapping[w] for w in circuit.ancilla_wires)
    return Circuit(num_wires, gates, ancilla)
