from __future__ import annotations

import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from window_lab import (
    BudgetExceeded,
    CountVector,
    InvariantViolation,
    SweepReport,
    append_bit,
    count_windows,
    exhaustive_verify,
    pair_differences,
    random_sequence,
    reverse,
    rotate,
    verify_delta,
    verify_theorem1,
)
from window_lab.bitseq import complement
from window_lab.theorem import common_difference

from .conftest import all_texts, brute_counts, bit_strings, seq

PAIRS = [("0100", "0010"), ("1101", "1011"), ("1010", "0101"), ("0011", "1100")]


def oracle_diffs(text: str) -> tuple[int, ...]:
    c = brute_counts(text, 4)
    return tuple(c[a] - c[b] for a, b in PAIRS)


def test_pair_difference_examples():
    assert pair_differences(count_windows(seq("0101"), 4)).values == (0, 0, 0, 0)
    assert pair_differences(count_windows(seq("0110100"), 4)).values == (1, 1, 1, 1)
    import numpy as np

    assert pair_differences(CountVector(4, 0, np.zeros(16))).values == (0, 0, 0, 0)
    with pytest.raises(ValueError, match="defined for order 4"):
        pair_differences(count_windows(seq("0101"), 3))


def test_verify_examples():
    r = verify_theorem1(seq("0011"))
    assert r.holds and r.t == 0
    r = verify_theorem1(seq("0110100"))
    assert r.holds and r.t == 1
    assert verify_theorem1(seq("0000000")).t == 0


@given(bit_strings)
def test_theorem_matches_oracle(text):
    r = verify_theorem1(seq(text))
    d = oracle_diffs(text)
    assert r.diffs.values == d
    assert r.holds == (len(set(d)) == 1)
    assert r.holds
    assert all(abs(x) <= len(text) for x in d)


@settings(max_examples=50)
@given(st.integers(1, 5000), st.integers(0, 2**64 - 1))
def test_theorem_on_random_sequences(length, s):
    assert verify_theorem1(random_sequence(length, s)).holds


def test_verify_delta_examples():
    # d_{n-3..n-1} = 001 and d_{0..2} = 011
    for text in ("0110001", "0111001", "011010110001"):
        assert verify_delta(seq(text), 0) == 1
    assert verify_delta(seq("101101"), 0) == 0
    assert verify_delta(seq("0000"), 0) == 0


@pytest.mark.parametrize("n", range(4, 11))
def test_delta_matches_context_exhaustive(n):
    for text in all_texts(n):
        for b in (0, 1):
            expected = oracle_diffs(text + str(b))[0] - oracle_diffs(text)[0]
            assert verify_delta(seq(text), b) == expected


def test_common_difference_raises_with_counterexample(monkeypatch):
    import window_lab.theorem as th

    fake = th.PairDifferences(1, 0, 0, 0)
    monkeypatch.setattr(th, "pair_differences", lambda cv: fake)
    with pytest.raises(InvariantViolation, match="invariant violated") as info:
        common_difference(seq("0110"))
    assert info.value.counterexample == seq("0110")


def test_sweep_examples():
    r = exhaustive_verify(4, 4)
    assert (r.total_checked, r.violations, r.t_histogram) == (16, [], {0: 16})
    r = exhaustive_verify(1, 3)
    assert r.total_checked == 14 and not r.violations
    r = exhaustive_verify(7, 7)
    assert r.total_checked == 128 and not r.violations and r.t_histogram[1] > 0
    assert verify_theorem1(seq("0110100")).t == 1


def test_sweep_agrees_with_per_sequence_checks():
    r = exhaustive_verify(1, 10)
    expected = {n: Counter(verify_theorem1(seq(t)).t for t in all_texts(n)) for n in range(1, 11)}
    assert r.per_n == {n: dict(sorted(h.items())) for n, h in expected.items()}
    assert r.total_checked == sum(2**n for n in range(1, 11))


def test_sweep_independent_of_workers():
    a = exhaustive_verify(1, 17, workers=1)
    b = exhaustive_verify(1, 17, workers=4)
    assert a.to_json() == b.to_json()


def test_sweep_histograms_symmetric():
    r = exhaustive_verify(1, 14)
    for h in r.per_n.values():
        assert all(h.get(-t, 0) == c for t, c in h.items())


def test_sweep_budget_refusal():
    with pytest.raises(BudgetExceeded, match="would enumerate"):
        exhaustive_verify(1, 30)
    with pytest.raises(ValueError):
        exhaustive_verify(5, 4)


def test_sweep_json_roundtrip():
    r = exhaustive_verify(3, 8)
    obj = json.loads(r.to_json())
    assert set(obj) >= {"n_min", "n_max", "checked", "violations", "t_histogram"}
    back = SweepReport.from_dict(obj)
    assert back.to_json() == r.to_json()


@given(bit_strings, st.integers(-30, 30))
def test_t_symmetries(text, r):
    s = seq(text)
    t = verify_theorem1(s).t
    assert verify_theorem1(rotate(s, r)).t == t
    assert verify_theorem1(reverse(s)).t == -t
    assert verify_theorem1(complement(s)).t == -t


@given(st.text(alphabet="01", min_size=4, max_size=60), st.integers(0, 1))
def test_delta_is_t_change(text, b):
    s = seq(text)
    assert verify_delta(s, b) == verify_theorem1(append_bit(s, b)).t - verify_theorem1(s).t
