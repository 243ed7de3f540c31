from __future__ import annotations

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from window_lab.linalg import in_span, normalize, nullspace, rank, rref

small_ints = st.integers(-4, 4)
matrices = st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=1, max_size=6))


def test_rref_known():
    red, piv = rref([[2, 4], [1, 2], [0, 3]])
    assert piv == [0, 1]
    assert red == [[1, 0], [0, 1]]
    assert rank([[1, 2, 3], [2, 4, 6]]) == 1


def test_normalize():
    assert normalize([Fraction(-1, 2), Fraction(1, 3)]) == (3, -2)
    assert normalize([0, -4, 6]) == (0, 2, -3)
    assert normalize([0, 0]) == (0, 0)


@given(matrices)
def test_nullspace_annihilates(rows):
    ncols = len(rows[0])
    ns = nullspace(rows, ncols)
    assert len(ns) == ncols - rank(rows)
    for x in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(r, x)) == 0 for r in rows)


@given(matrices)
def test_rows_in_own_span(rows):
    red, piv = rref(rows)
    assert all(in_span(r, red, piv) for r in rows)


@given(st.lists(small_ints, min_size=1, max_size=8))
def test_normalize_idempotent(v):
    once = normalize(v)
    assert normalize(once) == once
