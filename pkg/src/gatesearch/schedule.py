"""Address widths n_1 <= ... <= n_r for the recursive search."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConfigurationError
from .numerics import ceil_log2, is_power_of_two, log_star


@dataclass(frozen=True)
class RecursionSchedule:
    """Widths per level plus a named report of the checks they satisfy.

    ``relaxed`` marks sequences supplied by hand for small simulations; their
    report still lists every check, but failures there are expected.
    """

    n: int
    k: int
    r: int
    n_seq: tuple[int, ...]
    preconditions: dict[str, bool] = field(compare=False)
    relaxed: bool = False

    @property
    def log_k(self) -> int:
        return self.k.bit_length() - 1

    def unmet(self) -> list[str]:
        return [name for name, ok in self.preconditions.items() if not ok]

    def all_hold(self) -> bool:
        return not self.unmet()


def next_width(n_i: int, i: int, k: int) -> int:
    """``n_{i-1} = max((2i+6) log k, ceil(log(n_i^2 k^3)))`` for power-of-2 k."""
    log_k = k.bit_length() - 1
    return max((2 * i + 6) * log_k, ceil_log2(n_i * n_i * k**3))


def _checks(n_seq: Sequence[int], k: int) -> dict[str, bool]:
    n, r = n_seq[-1], len(n_seq)
    report = {
        "k is a power of 2": k >= 1 and is_power_of_two(k),
        "k >= 4": k >= 4,
        "k <= log log N": _fits(k, n),
        "r <= log* N": 1 <= r <= log_star(n, given_as="log N"),
    }
    if not report["k is a power of 2"]:
        return report
    log_k = k.bit_length() - 1
    report["n_1 >= 10 log k"] = n_seq[0] >= 10 * log_k
    report["n_(i-1) + 2 log k <= n_i"] = all(a + 2 * log_k <= b for a, b in zip(n_seq, n_seq[1:]))
    report["(2r+6) log k <= ceil(log(n^2 k^3))"] = (2 * r + 6) * log_k <= ceil_log2(n * n * k**3)
    report["log(2 n^2 k^5) <= n"] = ceil_log2(2 * n * n * k**5) <= n
    return report


def _fits(k: int, n: int) -> bool:
    """``k <= log2(n)``, decided on integers."""
    return k <= n.bit_length() and (1 << k) <= n


def build_schedule(n: int, k: int, r: int) -> RecursionSchedule:
    """Widths from ``n_r = n`` downward; n is log N."""
    if n < 1:
        raise ConfigurationError("n = log N must be positive")
    if k < 4 or not is_power_of_two(k):
        raise ConfigurationError(f"k = {k} must be a power of 2 with k >= 4")
    if not _fits(k, n):
        raise ConfigurationError(f"k = {k} exceeds log log N = log2({n})")
    ls = log_star(n, given_as="log N")
    if not 1 <= r <= ls:
        raise ConfigurationError(f"r = {r} outside [1, log* N = {ls}]")
    seq = [n]
    for i in range(r, 1, -1):
        seq.append(next_width(seq[-1], i, k))
    seq.reverse()
    report = _checks(seq, k)
    return RecursionSchedule(n, k, r, tuple(seq), report)


def schedule_from_sequence(n_seq: Sequence[int], k: int) -> RecursionSchedule:
    """Hand-written widths, for simulation-scale runs; always relaxed."""
    seq = tuple(int(v) for v in n_seq)
    if not seq or any(v < 1 for v in seq):
        raise ConfigurationError("widths must be positive")
    if any(a >= b for a, b in zip(seq, seq[1:])):
        raise ConfigurationError(f"widths must strictly increase: {list(seq)}")
    if k < 2 or not is_power_of_two(k):
        raise ConfigurationError(f"k = {k} must be a power of 2")
    report = _checks(seq, k)
    report["widths follow the recurrence"] = all(
        seq[i - 1] == next_width(seq[i], i + 1, k) for i in range(1, len(seq))
    )
    return RecursionSchedule(seq[-1], k, len(seq), seq, report, relaxed=True)
