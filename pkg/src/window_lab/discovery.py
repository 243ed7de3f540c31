"""All linear relations among window counts that hold for every circular sequence.

The windows of a circular sequence trace a closed walk on the order-(k-1)
de Bruijn graph, so each node's in-count equals its out-count. Those
conservation rows span every vanishing functional; ``empirical_basis``
recovers the same space independently by brute-force enumeration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .bitseq import check_order, parse_sequence, pattern_id, pattern_text, reverse_pattern
from .counting import count_matrix_all, count_windows
from .errors import BudgetExceeded
from .linalg import in_span, normalize, nullspace, reduce_against, rref

DEFAULT_BUDGET = 1 << 22


@dataclass(frozen=True)
class LinearFunctional:
    k: int
    coeffs: tuple[int, ...]  # dense, indexed by pattern id

    @classmethod
    def from_terms(cls, k: int, terms: dict[str, int]) -> LinearFunctional:
        coeffs = [0] * (1 << k)
        for pat, c in terms.items():
            if len(pat) != k:
                raise ValueError(f"pattern {pat!r} is not of order {k}")
            coeffs[pattern_id(pat)] += c
        return cls(k, tuple(coeffs))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, c in enumerate(self.coeffs) if c)

    def normalized(self) -> LinearFunctional:
        return LinearFunctional(self.k, normalize(self.coeffs))

    def evaluate(self, counts) -> int:
        return int(np.dot(np.asarray(self.coeffs, dtype=np.int64), np.asarray(counts, dtype=np.int64)))

    def terms(self) -> dict[str, int]:
        return {pattern_text(p, self.k): self.coeffs[p] for p in self.support}

    def to_dict(self) -> dict:
        return {"coeffs": self.terms()}

    def sort_key(self):
        return (len(self.support), [pattern_text(p, self.k) for p in self.support], self.coeffs)

    def __str__(self) -> str:
        parts = []
        for pat, c in self.terms().items():
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {mag}N({pat})")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __neg__(self) -> LinearFunctional:
        return LinearFunctional(self.k, tuple(-c for c in self.coeffs))

    def __add__(self, other: LinearFunctional) -> LinearFunctional:
        return LinearFunctional(self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: LinearFunctional) -> LinearFunctional:
        return self + (-other)


@dataclass
class InvariantBasis:
    k: int
    functionals: list[LinearFunctional]
    method: str

    @property
    def rank(self) -> int:
        return len(self.functionals)

    def rows(self) -> list[tuple[int, ...]]:
        return [f.coeffs for f in self.functionals]

    def same_span(self, other: InvariantBasis) -> bool:
        if self.k != other.k:
            return False
        a = rref(self.rows())[0]
        b = rref(other.rows())[0]
        return a == b

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "rank": self.rank,
            "method": self.method,
            "functionals": [f.to_dict() for f in self.functionals],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> InvariantBasis:
        k = obj["k"]
        fs = [LinearFunctional.from_terms(k, f["coeffs"]) for f in obj["functionals"]]
        return cls(k, fs, obj["method"])


def _finish(k: int, vectors, method: str) -> InvariantBasis:
    fs = sorted({LinearFunctional(k, normalize(v)) for v in vectors}, key=LinearFunctional.sort_key)
    return InvariantBasis(k, fs, method)


def conservation_rows(k: int) -> list[list[int]]:
    """One row per (k-1)-digit node: out-edges minus in-edges."""
    rows = []
    for w in range(1 << (k - 1)):
        row = [0] * (1 << k)
        for b in (0, 1):
            row[(w << 1) | b] += 1
            row[(b << (k - 1)) | w] -= 1
        rows.append(row)
    return rows


def constructive_basis(k: int) -> InvariantBasis:
    k = check_order(k)
    if k > 12:
        raise ValueError("constructive basis supports k <= 12")
    kept: list[list[int]] = []
    red, piv = [], []
    for row in conservation_rows(k):
        if any(reduce_against(row, red, piv)):
            kept.append(row)
            red, piv = rref(kept)
    return _finish(k, kept, "constructive")


@lru_cache(maxsize=None)
def _span(k: int):
    return rref(constructive_basis(k).rows())


def empirical_size(max_len: int) -> int:
    return (1 << (max_len + 1)) - 2


def empirical_basis(k: int, max_len: int | None = None, budget: int = DEFAULT_BUDGET) -> InvariantBasis:
    """Left annihilator of the count vectors of every sequence up to ``max_len``.

    The null space of the stacked count matrix C equals that of the Gram
    matrix C^T C (exact integers), which keeps the rational elimination at
    2^k columns no matter how many sequences were enumerated.

    With ``max_len >= 2^(k-1)`` every simple de Bruijn cycle is enumerated
    and the result is exactly the vanishing space. A shorter enumeration
    can only return a superspace of it, so a shorter run whose rank already
    equals the constructive rank is still a sound cross-check.
    """
    k = check_order(k)
    max_len = (1 << (k - 1)) if max_len is None else max_len
    if max_len < 1:
        raise ValueError("max_len must be positive")
    needed = empirical_size(max_len)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    size = 1 << k
    gram = np.zeros((size, size), dtype=object)
    for n in range(1, max_len + 1):
        for lo in range(0, 1 << n, 1 << 16):
            c = count_matrix_all(n, k, lo, min(lo + (1 << 16), 1 << n))
            # per-chunk entries <= 2^16 * n^2, far inside int64
            gram += (c.T @ c).astype(object)
    return _finish(k, nullspace(gram.tolist(), size), "empirical")


def is_vanishing(f: LinearFunctional) -> bool:
    red, piv = _span(f.k)
    return in_span(f.coeffs, red, piv)


def pair_functional(k: int, a: int, b: int) -> LinearFunctional:
    coeffs = [0] * (1 << k)
    coeffs[a] += 1
    coeffs[b] -= 1
    return LinearFunctional(k, tuple(coeffs))


@dataclass
class Counterexample:
    claim: str
    functional: LinearFunctional
    witness: str | None
    value: int | None

    def to_dict(self) -> dict:
        return {"claim": self.claim, "functional": self.functional.terms(), "witness": self.witness, "value": self.value}


@dataclass
class ReversalReport:
    k: int
    search_len: int
    identical_pairs: list[tuple[int, int]] = field(default_factory=list)
    classes: list[list[tuple[int, int]]] = field(default_factory=list)
    counterexamples: list[Counterexample] = field(default_factory=list)

    def text_pair(self, pair) -> list[str]:
        return [pattern_text(pair[0], self.k), pattern_text(pair[1], self.k)]

    def check_consistency(self) -> list[str]:
        """Problems found by re-deriving every claim; empty when the report is sound."""
        k = self.k
        problems = []
        seen: list[frozenset] = []
        for a, b in self.identical_pairs + [p for cls in self.classes for p in cls]:
            if a == b or reverse_pattern(a, k) != b:
                problems.append(f"{self.text_pair((a, b))} is not a reversal pair")
            seen.append(frozenset((a, b)))
        expected = {frozenset((p, reverse_pattern(p, k))) for p in range(1 << k) if p != reverse_pattern(p, k)}
        if len(seen) != len(set(seen)) or set(seen) != expected:
            problems.append("non-palindromic pairs are not partitioned exactly once")
        for c in self.counterexamples:
            if c.witness is None:
                problems.append(f"no witness within length {self.search_len} for claim {c.claim}")
                continue
            value = c.functional.evaluate(count_windows(parse_sequence(c.witness), k).counts)
            if value == 0 or value != c.value:
                problems.append(f"witness {c.witness} does not refute {c.claim}")
        return problems

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "search_len": self.search_len,
            "identical_pairs": [self.text_pair(p) for p in self.identical_pairs],
            "classes": [[self.text_pair(p) for p in cls] for cls in self.classes],
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "consistent": not self.check_consistency(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _find_witnesses(k: int, funcs: list[LinearFunctional], search_len: int) -> list[tuple[str, int] | None]:
    found: list[tuple[str, int] | None] = [None] * len(funcs)
    if not funcs:
        return found
    mat = np.array([f.coeffs for f in funcs], dtype=np.int64).T
    for n in range(1, search_len + 1):
        for lo in range(0, 1 << n, 1 << 16):
            vals = count_matrix_all(n, k, lo, min(lo + (1 << 16), 1 << n)) @ mat
            for j in range(len(funcs)):
                if found[j] is None:
                    hits = np.flatnonzero(vals[:, j])
                    if hits.size:
                        r = int(hits[0])
                        found[j] = (format(lo + r, f"0{n}b"), int(vals[r, j]))
        if all(found):
            break
    return found


def reversal_pair_report(k: int, search_len: int = 12, budget: int = DEFAULT_BUDGET) -> ReversalReport:
    """Classify reversal pairs (p, rev p) by how their count differences behave.

    A pair whose difference always vanishes is identical; the rest are
    grouped into classes whose (oriented) differences always coincide. The
    first pair of a class is written larger pattern first, and later members
    are oriented to agree with it.
    """
    k = check_order(k)
    if not 2 <= k <= 8:
        raise ValueError("reversal report supports 2 <= k <= 8")
    needed = empirical_size(search_len)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    report = ReversalReport(k, search_len)
    pairs = [(p, reverse_pattern(p, k)) for p in range(1 << k) if p < reverse_pattern(p, k)]
    for p, q in pairs:
        if is_vanishing(pair_functional(k, p, q)):
            report.identical_pairs.append((p, q))
            continue
        for cls in report.classes:
            a, b = cls[0]
            rep = pair_functional(k, a, b)
            if is_vanishing(rep - pair_functional(k, p, q)):
                cls.append((p, q))
                break
            if is_vanishing(rep - pair_functional(k, q, p)):
                cls.append((q, p))
                break
        else:
            report.classes.append([(q, p)])

    def name(a, b):
        return f"N({pattern_text(a, k)})-N({pattern_text(b, k)})"

    claims: list[tuple[str, LinearFunctional]] = []
    for cls in report.classes:
        for a, b in cls:
            claims.append((f"{name(a, b)} = 0", pair_functional(k, a, b)))
    for i, ci in enumerate(report.classes):
        for cj in report.classes[i + 1 :]:
            fi, fj = pair_functional(k, *ci[0]), pair_functional(k, *cj[0])
            claims.append((f"{name(*ci[0])} = {name(*cj[0])}", fi - fj))
            claims.append((f"{name(*ci[0])} = -({name(*cj[0])})", fi + fj))
    witnesses = _find_witnesses(k, [f for _, f in claims], search_len)
    for (claim, f), hit in zip(claims, witnesses):
        report.counterexamples.append(Counterexample(claim, f, *(hit or (None, None))))
    return report
