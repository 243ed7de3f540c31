from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from window_lab import SequenceError, complement, parse_sequence, random_sequence, reverse, rotate, window_at
from window_lab.bitseq import CircularBitSeq, check_order, complement_pattern, pattern_id, reverse_pattern

from .conftest import bit_strings, seq


def splitmix_reference(seed: int, count: int):
    # Scalar transcription of the generator, one output at a time.
    mask = (1 << 64) - 1
    s = seed
    for _ in range(count):
        s = (s + 0x9E3779B97F4A7C15) & mask
        z = s
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        yield z ^ (z >> 31)


def test_parse_examples():
    s = parse_sequence("0101")
    assert s.n == 4 and [s[i] for i in range(4)] == [0, 1, 0, 1]
    assert parse_sequence("0110100").n == 7
    assert parse_sequence("0110100\n").to_text() == "0110100"


@pytest.mark.parametrize("text,message", [("01a1", "invalid digit at position 2"), ("", "empty sequence"), ("  \n", "empty sequence"), ("0 1", "invalid digit at position 1")])
def test_parse_errors(text, message):
    with pytest.raises(SequenceError, match=message):
        parse_sequence(text)


def test_random_single_digit_is_bit_zero_of_first_output():
    first = next(splitmix_reference(0, 1))
    assert random_sequence(1, 0).to_text() == str(first & 1)


@pytest.mark.parametrize("length,seed", [(1, 0), (64, 42), (65, 43), (200, 2**64 - 1), (1000, 7)])
def test_random_matches_scalar_generator(length, seed):
    digits = []
    for z in splitmix_reference(seed, -(-length // 64)):
        digits.extend((z >> j) & 1 for j in range(64))
    assert random_sequence(length, seed).to_text() == "".join(map(str, digits[:length]))


def test_random_is_deterministic_and_seed_sensitive():
    assert random_sequence(64, 42) == random_sequence(64, 42)
    assert random_sequence(64, 42) != random_sequence(64, 43)
    with pytest.raises(SequenceError, match="empty sequence"):
        random_sequence(0, 1)


def test_window_at_examples():
    assert window_at(seq("0100"), 3, 4) == 0b0010
    assert window_at(seq("0"), 0, 4) == 0
    assert window_at(seq("0110100"), 6, 4) == 0b0011


def test_symmetry_examples():
    assert rotate(seq("0110100"), 0) == seq("0110100")
    assert rotate(seq("0110100"), 2).to_text() == "1010001"
    assert reverse(seq("0011")) == seq("1100")
    assert complement(seq("0101")) == seq("1010")


def test_equality_is_positional():
    a, b = seq("0011"), seq("0110")
    assert a != b
    assert len({a, seq("0011")}) == 1


def test_pattern_helpers():
    assert pattern_id("0100") == 4
    assert reverse_pattern(0b0100, 4) == 0b0010
    assert complement_pattern(0b0100, 4) == 0b1011
    with pytest.raises(ValueError):
        check_order(25)
    with pytest.raises(ValueError):
        check_order(0)


def test_from_value_orders_d0_most_significant():
    assert CircularBitSeq.from_value(0b0110, 4).to_text() == "0110"
    assert CircularBitSeq.from_value(1, 3).to_text() == "001"


@given(bit_strings, st.integers(0, 500), st.integers(1, 8))
def test_window_cyclicity(text, i, k):
    s = seq(text)
    assert window_at(s, i, k) == window_at(s, i + s.n, k)


@given(bit_strings)
def test_parse_render_roundtrip(text):
    assert parse_sequence(text).to_text() == text
    assert str(seq(text)) == text


@given(bit_strings, st.integers(-100, 100), st.integers(-100, 100))
def test_rotation_composes(text, a, b):
    s = seq(text)
    assert rotate(rotate(s, a), b) == rotate(s, a + b)


@given(bit_strings)
def test_involutions(text):
    s = seq(text)
    assert reverse(reverse(s)) == s
    assert complement(complement(s)) == s


@given(bit_strings, st.integers(-50, 50))
def test_rotate_moves_digit_i_to_i_minus_r(text, r):
    s = seq(text)
    rot = rotate(s, r)
    assert all(rot[(i - r) % s.n] == s[i] for i in range(s.n))
