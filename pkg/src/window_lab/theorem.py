"""Equal pair differences for the four reversed 4-window pairs, as a machine check."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bitseq import CircularBitSeq
from .counting import (
    THEOREM_PAIRS,
    CountVector,
    append_bit,
    context_of,
    count_matrix_all,
    count_windows,
    delta_from_context,
)
from .errors import BudgetExceeded, InvariantViolation, SequenceError

DEFAULT_BUDGET = 1 << 25
_CHUNK = 1 << 16


@dataclass(frozen=True)
class PairDifferences:
    d1: int  # N(0100) - N(0010)
    d2: int  # N(1101) - N(1011)
    d3: int  # N(1010) - N(0101)
    d4: int  # N(0011) - N(1100)

    @property
    def values(self) -> tuple[int, int, int, int]:
        return (self.d1, self.d2, self.d3, self.d4)

    @property
    def coincide(self) -> bool:
        return self.d1 == self.d2 == self.d3 == self.d4


@dataclass(frozen=True)
class TheoremReport:
    holds: bool
    t: int | None
    diffs: PairDifferences
    subject: CircularBitSeq

    def to_dict(self, max_subject: int = 4096) -> dict:
        out = {"holds": self.holds, "t": self.t, "diffs": list(self.diffs.values), "n": self.subject.n}
        if self.subject.n <= max_subject:
            out["subject"] = self.subject.to_text()
        return out


@dataclass
class SweepReport:
    n_min: int
    n_max: int
    total_checked: int = 0
    violations: list[str] = field(default_factory=list)
    t_histogram: dict[int, int] = field(default_factory=dict)
    per_n: dict[int, dict[int, int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        def hist(h):
            return {str(t): c for t, c in sorted(h.items())}

        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "checked": self.total_checked,
            "violations": list(self.violations),
            "t_histogram": hist(self.t_histogram),
            "per_n": {str(n): hist(h) for n, h in sorted(self.per_n.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> SweepReport:
        return cls(
            n_min=obj["n_min"],
            n_max=obj["n_max"],
            total_checked=obj["checked"],
            violations=list(obj["violations"]),
            t_histogram={int(t): c for t, c in obj["t_histogram"].items()},
            per_n={int(n): {int(t): c for t, c in h.items()} for n, h in obj.get("per_n", {}).items()},
        )


def pair_differences(cv: CountVector) -> PairDifferences:
    if cv.k != 4:
        raise ValueError("pair differences defined for order 4")
    return PairDifferences(*(cv[a] - cv[b] for a, b in THEOREM_PAIRS))


def verify_theorem1(seq: CircularBitSeq) -> TheoremReport:
    diffs = pair_differences(count_windows(seq, 4))
    holds = diffs.coincide
    return TheoremReport(holds, diffs.d1 if holds else None, diffs, seq)


def common_difference(seq: CircularBitSeq) -> int:
    report = verify_theorem1(seq)
    if not report.holds:
        raise InvariantViolation("invariant violated", seq)
    return report.t


def verify_delta(seq: CircularBitSeq, b: int) -> int:
    """Change in the common difference when digit ``b`` is appended.

    For n >= 6 the observed change must match the boundary-context
    prediction; a mismatch raises ``InvariantViolation``.
    """
    if seq.n < 4:
        raise SequenceError("delta check requires n ≥ 4")
    grown = append_bit(seq, b)
    delta = common_difference(grown) - common_difference(seq)
    if seq.n >= 6:
        predicted = delta_from_context(context_of(seq, b)).delta_difference
        if predicted != delta:
            raise InvariantViolation(f"invariant violated: context predicts {predicted}, recount gives {delta}", seq)
    return delta


def sweep_size(n_min: int, n_max: int) -> int:
    return sum(1 << n for n in range(n_min, n_max + 1))


def _sweep_chunk(n: int, lo: int, hi: int) -> tuple[list[str], Counter]:
    counts = count_matrix_all(n, 4, lo, hi)
    diffs = np.stack([counts[:, a] - counts[:, b] for a, b in THEOREM_PAIRS], axis=1)
    ok = (diffs == diffs[:, :1]).all(axis=1)
    bad = [format(lo + int(r), f"0{n}b") for r in np.flatnonzero(~ok)]
    ts, cs = np.unique(diffs[ok, 0], return_counts=True)
    return bad, Counter(dict(zip(map(int, ts), map(int, cs))))


def exhaustive_verify(n_min: int, n_max: int, workers: int = 1, budget: int = DEFAULT_BUDGET) -> SweepReport:
    """Check the equal-differences property on every sequence with n_min <= n <= n_max.

    Sequences are enumerated by length, then by the integer value of their
    digit string (d_0 most significant); violations come back in that order
    whatever the worker count.
    """
    if n_min < 1 or n_min > n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    needed = sweep_size(n_min, n_max)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    jobs = [(n, lo, min(lo + _CHUNK, 1 << n)) for n in range(n_min, n_max + 1) for lo in range(0, 1 << n, _CHUNK)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: _sweep_chunk(*job), jobs))
    else:
        results = [_sweep_chunk(*job) for job in jobs]

    report = SweepReport(n_min, n_max, total_checked=needed)
    total: Counter = Counter()
    for (n, _, _), (bad, hist) in zip(jobs, results):
        report.violations.extend(bad)
        report.per_n.setdefault(n, Counter()).update(hist)
        total.update(hist)
    report.t_histogram = dict(sorted(total.items()))
    report.per_n = {n: dict(sorted(h.items())) for n, h in report.per_n.items()}
    return report
