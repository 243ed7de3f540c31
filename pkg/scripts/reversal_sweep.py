"""Reversal-pair classification for a range of window orders.

For each k this prints the rank of the vanishing space, the pairs whose
counts always agree, and the classes of pairs with a shared difference.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from window_lab import constructive_basis, reversal_pair_report


@dataclass
class SweepConfig:
    k_min: int = 2
    k_max: int = 6
    search_len: int = 14


def main(cfg: SweepConfig) -> None:
    for k in range(cfg.k_min, cfg.k_max + 1):
        t0 = time.perf_counter()
        basis = constructive_basis(k)
        report = reversal_pair_report(k, search_len=cfg.search_len, budget=1 << (cfg.search_len + 2))
        d = report.to_dict()
        unrefuted = sum(c["witness"] is None for c in d["counterexamples"])
        print(f"k={k}  rank={basis.rank}  identical={len(d['identical_pairs'])}  classes={len(d['classes'])}"
              f"  unrefuted_claims={unrefuted}  consistent={d['consistent']}  ({time.perf_counter() - t0:.2f}s)")
        for a, b in d["identical_pairs"]:
            print(f"    N({a}) = N({b})")
        for cls in d["classes"]:
            if len(cls) > 1:
                print("    " + " = ".join(f"N({a})-N({b})" for a, b in cls))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-min", type=int, default=SweepConfig.k_min)
    ap.add_argument("--k-max", type=int, default=SweepConfig.k_max)
    ap.add_argument("--search-len", type=int, default=SweepConfig.search_len)
    main(SweepConfig(**vars(ap.parse_args())))
