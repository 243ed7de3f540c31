"""Immutable circular binary sequences and order-k pattern helpers.

Digits are stored bit-packed, LSB-first within little-endian 64-bit words,
so digit ``i`` lives at bit ``i % 64`` of word ``i // 64``. Pattern ids are
MSB-first: the first digit of a window is its most significant bit, which
makes ``"0100"`` id 4 and lets pattern ids sort like their text.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import SequenceError

MAX_ORDER = 24

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def check_order(k: int) -> int:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= MAX_ORDER:
        raise ValueError(f"order k must be an integer in 1..{MAX_ORDER}, got {k!r}")
    return int(k)


def pattern_text(p: int, k: int) -> str:
    return format(p, f"0{k}b")


def pattern_id(text: str) -> int:
    if not text or set(text) - {"0", "1"}:
        raise SequenceError(f"not a binary pattern: {text!r}")
    return int(text, 2)


def reverse_pattern(p: int, k: int) -> int:
    return int(pattern_text(p, k)[::-1], 2)


def complement_pattern(p: int, k: int) -> int:
    return p ^ ((1 << k) - 1)


class CircularBitSeq:
    """A finite binary sequence whose indices are read modulo its length.

    Equality is positional: rotations of one another compare unequal even
    though their window counts agree.
    """

    __slots__ = ("_data", "_n")

    def __init__(self, data: bytes, n: int):
        if n < 1:
            raise SequenceError("empty sequence")
        if len(data) * 8 < n or len(data) % 8:
            raise ValueError("packed data must be whole 64-bit words covering n digits")
        self._data = bytes(data)
        self._n = int(n)

    @classmethod
    def from_digits(cls, digits: Iterable[int] | np.ndarray) -> CircularBitSeq:
        arr = np.asarray(list(digits) if not isinstance(digits, np.ndarray) else digits)
        if arr.size == 0:
            raise SequenceError("empty sequence")
        if arr.ndim != 1 or np.any((arr != 0) & (arr != 1)):
            raise SequenceError("digits must be 0 or 1")
        return cls._pack(arr.astype(np.uint8))

    @classmethod
    def from_words(cls, words: np.ndarray, n: int) -> CircularBitSeq:
        nwords = -(-n // 64)
        w = np.ascontiguousarray(words[:nwords], dtype="<u8").copy()
        if n % 64:
            w[-1] &= np.uint64((1 << (n % 64)) - 1)
        return cls(w.tobytes(), n)

    @classmethod
    def from_value(cls, value: int, n: int) -> CircularBitSeq:
        """Sequence whose digit string, read as a binary number with d_0 most
        significant, equals ``value``. This is the enumeration order of sweeps."""
        return parse_sequence(format(value, f"0{n}b"))

    @classmethod
    def _pack(cls, digits: np.ndarray) -> CircularBitSeq:
        n = digits.size
        packed = np.packbits(digits, bitorder="little")
        pad = (-packed.size) % 8
        if pad:
            packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
        return cls(packed.tobytes(), n)

    @property
    def n(self) -> int:
        return self._n

    def __len__(self) -> int:
        return self._n

    def __getitem__(self, i: int) -> int:
        i %= self._n
        return (self._data[i >> 3] >> (i & 7)) & 1

    def words(self) -> np.ndarray:
        """Read-only view of the packed uint64 words."""
        return np.frombuffer(self._data, dtype="<u8")

    def digits(self) -> np.ndarray:
        raw = np.frombuffer(self._data, dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self._n]

    def to_text(self) -> str:
        return self.digits().tobytes().translate(bytes.maketrans(b"\x00\x01", b"01")).decode()

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        if self._n <= 64:
            return f"CircularBitSeq('{self.to_text()}')"
        return f"CircularBitSeq(<{self._n} digits>)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, CircularBitSeq):
            return NotImplemented
        return self._n == other._n and self._data == other._data

    def __hash__(self) -> int:
        return hash((self._n, self._data))


def parse_sequence(text: str) -> CircularBitSeq:
    s = text.strip()
    if not s:
        raise SequenceError("empty sequence")
    raw = np.frombuffer(s.encode("ascii", errors="replace"), dtype=np.uint8)
    bad = np.flatnonzero((raw != ord("0")) & (raw != ord("1")))
    if bad.size:
        raise SequenceError(f"invalid digit at position {int(bad[0])}")
    return CircularBitSeq._pack(raw - ord("0"))


def _splitmix_outputs(seed: int, count: int) -> np.ndarray:
    steps = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = steps * np.uint64(_GAMMA) + np.uint64(seed % (1 << 64))
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
    return z


def random_sequence(length: int, seed: int) -> CircularBitSeq:
    """Deterministic pseudo-random sequence from a SplitMix64 stream.

    Each 64-bit output supplies 64 digits, least-significant bit first, which
    is exactly the packed storage layout, so outputs become words directly.
    """
    if length < 1:
        raise SequenceError("empty sequence")
    if not 0 <= seed < (1 << 64):
        raise ValueError("seed must be a 64-bit unsigned integer")
    return CircularBitSeq.from_words(_splitmix_outputs(seed, -(-length // 64)), length)


def window_at(seq: CircularBitSeq, i: int, k: int) -> int:
    w = 0
    for j in range(k):
        w = (w << 1) | seq[i + j]
    return w


def rotate(seq: CircularBitSeq, r: int) -> CircularBitSeq:
    """Digit at index i moves to index (i - r) mod n."""
    return CircularBitSeq._pack(np.roll(seq.digits(), -(r % seq.n)))


def reverse(seq: CircularBitSeq) -> CircularBitSeq:
    return CircularBitSeq._pack(seq.digits()[::-1].copy())


def complement(seq: CircularBitSeq) -> CircularBitSeq:
    return CircularBitSeq._pack(seq.digits() ^ 1)
