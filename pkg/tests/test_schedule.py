import pytest
from hypothesis import given, settings, strategies as st

from gatesearch.errors import ConfigurationError
from gatesearch.numerics import ceil_log2, log_star
from gatesearch.schedule import build_schedule, next_width, schedule_from_sequence


def test_examples():
    assert build_schedule(1024, 4, 2).n_seq == (26, 1024)
    assert build_schedule(1024, 4, 3).n_seq == (20, 26, 1024)
    assert build_schedule(1 << 20, 4, 6).n_seq == (20, 24, 28, 32, 46, 1 << 20)
    assert build_schedule(1024, 4, 1).n_seq == (1024,)
    assert build_schedule(1024, 4, 3).all_hold()


def test_next_width():
    # ceil(log(1024^2 * 64)) = 26 beats (2*3+6)*2 = 24
    assert next_width(1024, 3, 4) == 26
    # (2*2+6)*2 = 20 beats ceil(log(26^2 * 64)) = 16
    assert next_width(26, 2, 4) == 20


def test_domain_errors():
    with pytest.raises(ConfigurationError):
        build_schedule(1024, 6, 2)
    with pytest.raises(ConfigurationError):
        build_schedule(1024, 2, 2)
    with pytest.raises(ConfigurationError):
        build_schedule(1024, 16, 2)  # 16 > log log N = 10
    with pytest.raises(ConfigurationError):
        build_schedule(1024, 4, 6)  # log* N = 5


def test_relaxed_sequence():
    s = schedule_from_sequence([4, 8], 4)
    assert s.relaxed and s.n_seq == (4, 8) and s.k == 4
    assert "widths follow the recurrence" in s.unmet()
    with pytest.raises(ConfigurationError):
        schedule_from_sequence([8, 4], 4)
    with pytest.raises(ConfigurationError):
        schedule_from_sequence([4, 8], 3)


@settings(max_examples=100, deadline=None)
@given(st.integers(16, 1 << 40), st.integers(2, 5), st.integers(1, 5))
def test_recurrence_and_gap(n, lk, r):
    k = 1 << lk
    try:
        s = build_schedule(n, k, r)
    except ConfigurationError:
        return
    seq = s.n_seq
    assert len(seq) == r and seq[-1] == n and r <= log_star(n, "log N")
    for i in range(2, r + 1):
        assert seq[i - 2] == max((2 * i + 6) * lk, ceil_log2(seq[i - 1] ** 2 * k**3))
    if s.all_hold():
        assert all(a + 2 * lk <= b for a, b in zip(seq, seq[1:]))
