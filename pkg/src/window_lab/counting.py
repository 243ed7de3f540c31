"""Circular window counts: naive oracle, rolling counter, append-a-bit deltas."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from .bitseq import CircularBitSeq, check_order, pattern_id, pattern_text, window_at
from .errors import SequenceError

# The four reversal pairs in the fixed order (0100-0010, 1101-1011, 1010-0101, 0011-1100).
THEOREM_PAIRS: tuple[tuple[int, int], ...] = ((0b0100, 0b0010), (0b1101, 0b1011), (0b1010, 0b0101), (0b0011, 0b1100))
TRACKED: tuple[int, ...] = tuple(p for pair in THEOREM_PAIRS for p in pair)


class CountVector:
    """Occurrence counts of every order-k pattern over the n circular windows."""

    __slots__ = ("k", "n", "counts")

    def __init__(self, k: int, n: int, counts: np.ndarray):
        counts = np.asarray(counts, dtype=np.int64)
        if counts.shape != (1 << k,):
            raise ValueError(f"expected {1 << k} counts for k={k}, got shape {counts.shape}")
        counts.setflags(write=False)
        self.k = k
        self.n = n
        self.counts = counts

    def __getitem__(self, pattern: int | str) -> int:
        if isinstance(pattern, str):
            if len(pattern) != self.k:
                raise KeyError(pattern)
            pattern = pattern_id(pattern)
        return int(self.counts[pattern])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CountVector):
            return NotImplemented
        return self.k == other.k and self.n == other.n and np.array_equal(self.counts, other.counts)

    __hash__ = None

    def __repr__(self) -> str:
        nz = {pattern_text(int(p), self.k): int(self.counts[p]) for p in np.flatnonzero(self.counts)[:8]}
        more = ", ..." if np.count_nonzero(self.counts) > 8 else ""
        return f"CountVector(k={self.k}, n={self.n}, {nz}{more})"

    def nonzero(self) -> dict[str, int]:
        return {pattern_text(int(p), self.k): int(self.counts[p]) for p in np.flatnonzero(self.counts)}

    def to_json(self) -> str:
        counts = {pattern_text(p, self.k): int(c) for p, c in enumerate(self.counts)}
        return json.dumps({"k": self.k, "n": self.n, "counts": counts})

    def to_tsv(self) -> str:
        lines = ["pattern\tcount"]
        lines += [f"{pattern_text(p, self.k)}\t{int(c)}" for p, c in enumerate(self.counts)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, text: str) -> CountVector:
        obj = json.loads(text)
        k = int(obj["k"])
        counts = np.zeros(1 << k, dtype=np.int64)
        for pat, c in obj["counts"].items():
            counts[pattern_id(pat)] = c
        return cls(k, int(obj["n"]), counts)


@njit(nogil=True, cache=True)
def _naive_kernel(d, k, counts):
    n = d.shape[0]
    for i in range(n):
        w = 0
        for j in range(k):
            w = (w << 1) | d[(i + j) % n]
        counts[w] += 1


@njit(nogil=True, cache=True)
def _rolling_kernel(ext, start, stop, k, counts):
    # Counts windows starting at positions [start, stop) of the extended stream.
    one = np.uint64(1)
    mask = (one << np.uint64(k)) - one
    w = np.uint64(0)
    for pos in range(start, start + k - 1):
        w = (w << one) | ((ext[pos >> 6] >> np.uint64(pos & 63)) & one)
    pos = start + k - 1
    end = stop + k - 1
    while pos < end:
        b0 = pos & 63
        take = min(64 - b0, end - pos)
        x = ext[pos >> 6] >> np.uint64(b0)
        for _ in range(take):
            w = ((w << one) | (x & one)) & mask
            x >>= one
            counts[w] += 1
        pos += take


def count_windows(seq: CircularBitSeq, k: int) -> CountVector:
    """Reference counter: reads every window digit-by-digit with mod-n indexing."""
    k = check_order(k)
    counts = np.zeros(1 << k, dtype=np.int64)
    _naive_kernel(seq.digits(), k, counts)
    return CountVector(k, seq.n, counts)


def _extended_words(seq: CircularBitSeq, k: int) -> np.ndarray:
    # Stream d_0..d_{n-1} followed by k-1 wrap digits, so the hot loop never takes a modulus.
    n = seq.n
    ext = np.zeros(-(-(n + k - 1) // 64), dtype=np.uint64)
    words = seq.words()
    ext[: words.size] = words
    for j in range(k - 1):
        pos = n + j
        if seq[j]:
            ext[pos >> 6] |= np.uint64(1 << (pos & 63))
    return ext


def count_windows_rolling(seq: CircularBitSeq, k: int, workers: int = 1, chunks: int | None = None) -> CountVector:
    """Rolling counter over packed words.

    The start positions are split into ``chunks`` contiguous ranges (default:
    one per worker); each range primes its own window from the k-1 digits
    before its first full window, so ranges are independent and their counts
    add up to the same vector for any split.
    """
    k = check_order(k)
    n = seq.n
    ext = _extended_words(seq, k)
    chunks = max(1, min(chunks or workers, n))
    bounds = [n * c // chunks for c in range(chunks + 1)]

    def run(c: int) -> np.ndarray:
        counts = np.zeros(1 << k, dtype=np.int64)
        _rolling_kernel(ext, bounds[c], bounds[c + 1], k, counts)
        return counts

    if workers > 1 and chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(chunks)))
    else:
        parts = [run(c) for c in range(chunks)]
    return CountVector(k, n, np.sum(parts, axis=0))


def count_matrix_all(n: int, k: int, lo: int = 0, hi: int | None = None) -> np.ndarray:
    """Count vectors of every length-n sequence with value in [lo, hi).

    Row r belongs to the sequence whose digit string, d_0 most significant,
    is the integer ``lo + r``. Vectorised across sequences; used by sweeps.
    """
    hi = (1 << n) if hi is None else hi
    v = np.arange(lo, hi, dtype=np.int64)
    shifts = (n - 1 - np.arange(n, dtype=np.int64))[:, None]
    d = (v[None, :] >> shifts) & 1
    idx = np.arange(n)
    win = np.zeros_like(d)
    for j in range(k):
        win = (win << 1) | d[(idx + j) % n]
    m = v.size
    flat = (np.arange(m, dtype=np.int64)[None, :] << k) + win
    return np.bincount(flat.ravel(), minlength=m << k).reshape(m, 1 << k)


def append_bit(seq: CircularBitSeq, b: int) -> CircularBitSeq:
    if b not in (0, 1):
        raise SequenceError("appended digit must be 0 or 1")
    return CircularBitSeq.from_digits(np.append(seq.digits(), np.uint8(b)))


@dataclass(frozen=True)
class BoundaryContext:
    p: tuple[int, ...]
    appended: int

    def __post_init__(self):
        if len(self.p) != 6 or any(x not in (0, 1) for x in self.p) or self.appended not in (0, 1):
            raise SequenceError("context needs six binary digits and one appended digit")

    @classmethod
    def parse(cls, text: str, appended: int) -> BoundaryContext:
        text = text.strip()
        if len(text) != 6 or set(text) - {"0", "1"}:
            raise SequenceError(f"context must be six binary digits, got {text!r}")
        return cls(tuple(int(c) for c in text), appended)

    @property
    def text(self) -> str:
        return "".join(map(str, self.p))

    @property
    def spliced(self) -> str:
        """The seven digits d_{n-3} d_{n-2} d_{n-1} d_n d_0 d_1 d_2."""
        t = self.text
        return t[:3] + str(self.appended) + t[3:]


@dataclass(frozen=True)
class WindowDelta:
    context: BoundaryContext
    lost: tuple[int, ...]
    gained: tuple[int, ...]
    net: tuple[int, ...]  # indexed by pattern id, all 16 order-4 patterns
    pair_deltas: tuple[int, ...]
    delta_difference: int | None  # None marks disagreeing pair deltas

    def to_dict(self) -> dict:
        return {
            "context": self.context.text,
            "bit": self.context.appended,
            "spliced": self.context.spliced,
            "lost": [pattern_text(p, 4) for p in self.lost],
            "gained": [pattern_text(p, 4) for p in self.gained],
            "net": {pattern_text(p, 4): v for p, v in enumerate(self.net) if v},
            "pair_deltas": list(self.pair_deltas),
            "delta_difference": self.delta_difference,
        }


def context_of(seq: CircularBitSeq, b: int) -> BoundaryContext:
    n = seq.n
    if n < 6:
        raise SequenceError("context undefined below length 6")
    return BoundaryContext(tuple(seq[i] for i in (n - 3, n - 2, n - 1, 0, 1, 2)), b)


def _windows_of(text: str) -> tuple[int, ...]:
    return tuple(int(text[i : i + 4], 2) for i in range(len(text) - 3))


def pair_deltas_of(net) -> tuple[int, ...]:
    return tuple(net[a] - net[b] for a, b in THEOREM_PAIRS)


def delta_from_context(ctx: BoundaryContext) -> WindowDelta:
    lost = _windows_of(ctx.text)
    gained = _windows_of(ctx.spliced)
    net = [0] * 16
    for p in gained:
        net[p] += 1
    for p in lost:
        net[p] -= 1
    deltas = pair_deltas_of(net)
    common = deltas[0] if len(set(deltas)) == 1 else None
    return WindowDelta(ctx, lost, gained, tuple(net), deltas, common)


def incremental_recount(seq: CircularBitSeq, b: int, k: int = 4, base: CountVector | None = None) -> CountVector:
    """Counts of ``append_bit(seq, b)`` from the counts of ``seq`` plus a local change.

    For k=4 and n >= 6 the change comes from the boundary-context table;
    otherwise the k-1 windows touching the seam are replaced positionally,
    which needs n >= k so that no window start repeats.
    """
    k = check_order(k)
    n = seq.n
    if n < k:
        raise SequenceError(f"incremental path requires n ≥ {k}")
    base = count_windows(seq, k) if base is None else base
    counts = base.counts.copy()
    if k == 4 and n >= 6:
        counts += np.asarray(delta_from_context(context_of(seq, b)).net, dtype=np.int64)
    else:
        grown = append_bit(seq, b)
        for i in range(n - k + 1, n):
            counts[window_at(seq, i, k)] -= 1
        for i in range(n - k + 1, n + 1):
            counts[window_at(grown, i, k)] += 1
    return CountVector(k, n + 1, counts)
