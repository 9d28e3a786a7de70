"""Closed forms against the rewriting oracle, plus frozen rows."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonkit.errors import OutOfRangeError
from bosonkit.operator_algebra import MonomialSpec
from bosonkit.stirling import (
    BellValue,
    bell,
    lah,
    stirling,
    stirling_rr_closed,
    stirling_table,
)

# Classical Bell numbers B(0)..B(10), the r = s = 1 row sums.
BELL_CLASSIC = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


def test_classical_triangle_recurrence():
    # S(n+1, k) = k S(n, k) + S(n, k-1); S(n, 0) = 0 for n >= 1.
    for n in range(1, 8):
        row = stirling_table(MonomialSpec(1, 1, n)).values
        nxt = stirling_table(MonomialSpec(1, 1, n + 1)).values
        for k in range(1, n + 2):
            expected = k * row.get(k, 0) + row.get(k - 1, 0)
            assert nxt[k] == expected


def test_rr_closed_row_two_two():
    assert {k: stirling_rr_closed(2, 2, k) for k in (2, 3, 4)} == {2: 2, 3: 4, 4: 1}


def test_rr_closed_matches_oracle():
    for r in (1, 2, 3):
        for n in (1, 2, 3, 4, 5):
            spec = MonomialSpec(r, r, n)
            oracle = stirling_table(spec, from_oracle=True).values
            for k in range(r, r * n + 1):
                assert stirling_rr_closed(r, n, k) == oracle[k]


def test_lah_matches_oracle():
    for n in range(1, 7):
        spec = MonomialSpec(2, 1, n)
        oracle = stirling_table(spec, from_oracle=True).values
        for k in range(1, n + 1):
            assert lah(n, k) == oracle[k]


def test_lah_frozen_row_four():
    assert [lah(4, k) for k in (1, 2, 3, 4)] == [24, 36, 12, 1]


def test_oracle_only_family():
    spec = MonomialSpec(3, 1, 2)
    assert stirling_table(spec).values == {1: 3, 2: 1}
    assert stirling(spec, 1) == 3


@given(st.integers(1, 3), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_dispatch_equals_oracle(s, n):
    for r in range(s, 4):
        spec = MonomialSpec(r, s, n)
        assert stirling_table(spec).values == stirling_table(spec, from_oracle=True).values


def test_k_range_enforced():
    spec = MonomialSpec(2, 2, 3)
    with pytest.raises(OutOfRangeError):
        stirling(spec, 1)
    with pytest.raises(OutOfRangeError):
        stirling(spec, 7)
    with pytest.raises(OutOfRangeError):
        stirling_rr_closed(2, 3, 1)
    with pytest.raises(OutOfRangeError):
        lah(4, 5)
    with pytest.raises(OutOfRangeError):
        lah(4, 0)


def test_table_needs_positive_n():
    with pytest.raises(OutOfRangeError):
        stirling_table(MonomialSpec(2, 1, 0))
    with pytest.raises(OutOfRangeError):
        stirling(MonomialSpec(2, 1, 0), 1)


def test_bell_row_sums():
    for n, target in enumerate(BELL_CLASSIC):
        assert int(bell(MonomialSpec(1, 1, n))) == target


def test_bell_quadratic_family():
    # B_{2,2}(0..6)
    targets = [1, 1, 7, 87, 1657, 43833, 1515903]
    for n, target in enumerate(targets):
        assert int(bell(MonomialSpec(2, 2, n))) == target


def test_bell_lah_family():
    # B_{2,1}(0..8)
    targets = [1, 1, 3, 13, 73, 501, 4051, 37633, 394353]
    for n, target in enumerate(targets):
        assert int(bell(MonomialSpec(2, 1, n))) == target


def test_bell_spot_values():
    assert int(bell(MonomialSpec(3, 1, 2))) == 4
    assert int(bell(MonomialSpec(3, 1, 3))) == 25
    assert int(bell(MonomialSpec(3, 2, 2))) == 13
    assert int(bell(MonomialSpec(3, 2, 3))) == 355
    assert int(bell(MonomialSpec(3, 2, 4))) == 16333
    assert int(bell(MonomialSpec(3, 3, 2))) == 34
    assert int(bell(MonomialSpec(4, 2, 2))) == 21


def test_bell_value_is_indexable():
    b = bell(MonomialSpec(1, 1, 3))
    assert isinstance(b, BellValue)
    assert int(b) == 5
    assert list(range(10))[b] == 5


def test_row_and_row_sum_consistency():
    table = stirling_table(MonomialSpec(2, 2, 3))
    assert table.row() == [table.values[k] for k in sorted(table.values)]
    assert table.row_sum() == sum(table.row())
    assert table.row_sum() == int(bell(MonomialSpec(2, 2, 3)))
