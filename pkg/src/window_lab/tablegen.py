"""Regenerate the basis and induction tables for the order-4 pairs and audit them.

Every table is computed from window enumeration alone. ``validate_tables``
then cross-checks the tables against each other, against full recounts of
concrete sequences realising each boundary, and against the published
cells kept in ``data/published_tables.json``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .bitseq import CircularBitSeq, pattern_text
from .counting import (
    TRACKED,
    BoundaryContext,
    append_bit,
    count_windows,
    delta_from_context,
)
from .errors import InvariantViolation
from .theorem import pair_differences

TABLE_NAMES = ("basis", "lost", "adjoined0", "adjoined1", "delta0", "delta1")
COLUMNS = tuple(pattern_text(p, 4) for p in TRACKED)


@dataclass(frozen=True)
class TableRow:
    key: str
    cells: tuple[int, ...]
    difference: int | None = None


@dataclass(frozen=True)
class PaperTable:
    name: str
    key_label: str
    rows: tuple[TableRow, ...]
    difference_label: str | None = None

    @property
    def header(self) -> list[str]:
        cols = [self.key_label, *COLUMNS]
        return cols + [self.difference_label] if self.difference_label else cols

    def row(self, key: str) -> TableRow:
        for r in self.rows:
            if r.key == key:
                return r
        raise KeyError(key)

    def _records(self):
        for r in self.rows:
            vals = [str(c) for c in r.cells]
            if self.difference_label:
                vals.append(str(r.difference))
            yield [r.key, *vals]

    def to_tsv(self) -> str:
        lines = ["\t".join(self.header)] + ["\t".join(rec) for rec in self._records()]
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        head = self.header
        lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
        lines += ["| " + " | ".join(rec) + " |" for rec in self._records()]
        return "\n".join(lines) + "\n"


def _tracked(windows) -> tuple[int, ...]:
    return tuple(sum(1 for w in windows if w == p) for p in TRACKED)


def _contexts(b: int):
    # Keys ascend as binary integers; for a fixed b the spliced key order matches P order.
    for v in range(64):
        yield BoundaryContext(tuple(int(c) for c in format(v, "06b")), b)


def gen_basis_table() -> PaperTable:
    rows = []
    for v in range(16):
        cv = count_windows(CircularBitSeq.from_value(v, 4), 4)
        diffs = pair_differences(cv)
        if not diffs.coincide:
            raise InvariantViolation("pair differences disagree", format(v, "04b"))
        rows.append(TableRow(format(v, "04b"), tuple(cv[p] for p in TRACKED), diffs.d1))
    return PaperTable("basis", "Sequence", tuple(rows), "Difference")


def gen_lost_table() -> PaperTable:
    rows = [TableRow(ctx.text, _tracked(delta_from_context(ctx).lost)) for ctx in _contexts(0)]
    return PaperTable("lost", "P", tuple(rows))


def gen_adjoined_table(b: int) -> PaperTable:
    rows = [TableRow(ctx.spliced, _tracked(delta_from_context(ctx).gained)) for ctx in _contexts(b)]
    return PaperTable(f"adjoined{b}", "P'" if b == 0 else "P''", tuple(rows))


def gen_delta_table(b: int) -> PaperTable:
    rows = []
    for ctx in _contexts(b):
        d = delta_from_context(ctx)
        if d.delta_difference is None:
            raise InvariantViolation(f"induction invariant violated at row {ctx.spliced}", d.pair_deltas)
        rows.append(TableRow(ctx.spliced, tuple(d.net[p] for p in TRACKED), d.delta_difference))
    return PaperTable(f"delta{b}", "P'" if b == 0 else "P''", tuple(rows), "ΔDifference")


def all_tables() -> dict[str, PaperTable]:
    return {
        "basis": gen_basis_table(),
        "lost": gen_lost_table(),
        "adjoined0": gen_adjoined_table(0),
        "adjoined1": gen_adjoined_table(1),
        "delta0": gen_delta_table(0),
        "delta1": gen_delta_table(1),
    }


def load_published() -> dict[str, dict[str, list[str]]]:
    """Published cells as transcribed text, e.g. ``"1-1"`` in the delta tables."""
    with resources.files("window_lab").joinpath("data/published_tables.json").open() as fh:
        return json.load(fh)


def cell_value(text: str) -> int:
    """Evaluate a published cell such as ``"2-1"`` or ``"+1"``."""
    terms = re.findall(r"[+-]?\d+", text.replace(" ", ""))
    if not terms or "".join(terms) != text.replace(" ", ""):
        raise ValueError(f"unparseable cell {text!r}")
    return sum(int(t) for t in terms)


def realizations(ctx: BoundaryContext):
    """Length-7 sequences whose seam context is ``ctx``: d_4 d_5 d_6 = p1 p2 p3,
    d_0 d_1 d_2 = p4 p5 p6, and the free digit d_3 taking both values."""
    t = ctx.text
    for fill in "01":
        yield CircularBitSeq.from_value(int(t[3:] + fill + t[:3], 2), 7)


def validate_tables(tables: dict[str, PaperTable] | None = None) -> dict:
    """Cross-check regenerated tables.

    ``consistency`` and ``oracle`` mismatches are bugs; ``published``
    entries list cells where the transcribed fixture disagrees with the
    regenerated value and are informational.
    """
    tables = tables or all_tables()
    consistency, oracle, published = [], [], []
    lost = {r.key: r for r in tables["lost"].rows}
    realized = 0
    for b in (0, 1):
        adj = {r.key: r for r in tables[f"adjoined{b}"].rows}
        for row in tables[f"delta{b}"].rows:
            p = row.key[:3] + row.key[4:]
            expect = tuple(g - l for g, l in zip(adj[row.key].cells, lost[p].cells))
            if expect != row.cells:
                consistency.append({"table": f"delta{b}", "key": row.key, "expected": list(expect), "got": list(row.cells)})
        for ctx in _contexts(b):
            predicted = delta_from_context(ctx)
            for seq in realizations(ctx):
                before = count_windows(seq, 4)
                after = count_windows(append_bit(seq, b), 4)
                diff = tuple(int(x) for x in after.counts - before.counts)
                realized += 1
                if diff != predicted.net:
                    oracle.append({"context": ctx.text, "bit": b, "sequence": seq.to_text(), "predicted": list(predicted.net), "recount": list(diff)})

    fixture = load_published()
    for name in TABLE_NAMES:
        table = tables[name]
        pub_rows = fixture[name]
        for row in table.rows:
            cells = pub_rows.get(row.key)
            if cells is None:
                published.append({"table": name, "key": row.key, "column": None, "published": None, "regenerated": None})
                continue
            ours = list(row.cells) + ([row.difference] if table.difference_label else [])
            for col, pub, val in zip(table.header[1:], cells, ours):
                if cell_value(pub) != val:
                    published.append({"table": name, "key": row.key, "column": col, "published": pub, "regenerated": val})
    return {
        "realizations_checked": realized,
        "consistency_mismatches": consistency,
        "oracle_mismatches": oracle,
        "published_discrepancies": published,
    }


def write_tables(out_dir: str | Path, fmt: str = "tsv", tables: dict[str, PaperTable] | None = None) -> list[Path]:
    if fmt not in ("tsv", "md"):
        raise ValueError(f"unknown table format {fmt!r}")
    tables = tables or all_tables()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in TABLE_NAMES:
        path = out / f"{name}.{fmt}"
        text = tables[name].to_tsv() if fmt == "tsv" else tables[name].to_markdown()
        path.write_text(text, encoding="utf-8", newline="\n")
        paths.append(path)
    return paths
