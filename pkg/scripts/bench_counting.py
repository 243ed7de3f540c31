"""Time the naive and rolling window counters on one long random sequence."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from window_lab import count_windows, count_windows_rolling, random_sequence


@dataclass
class BenchConfig:
    length: int = 10**8
    seed: int = 7
    k: int = 4
    repeats: int = 3
    workers: int = 1


def best_of(fn, repeats: int):
    best, result = float("inf"), None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(cfg: BenchConfig) -> dict:
    warm = random_sequence(4096, 0)
    count_windows(warm, cfg.k)
    count_windows_rolling(warm, cfg.k)  # JIT compile outside the timed region

    seq = random_sequence(cfg.length, cfg.seed)
    naive_s, naive = best_of(lambda: count_windows(seq, cfg.k), cfg.repeats)
    rolling_s, rolling = best_of(lambda: count_windows_rolling(seq, cfg.k, workers=cfg.workers), cfg.repeats)
    return {
        "config": asdict(cfg),
        "naive_s": round(naive_s, 4),
        "rolling_s": round(rolling_s, 4),
        "speedup": round(naive_s / rolling_s, 2),
        "equal": naive == rolling,
    }


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(BenchConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    print(json.dumps(main(BenchConfig(**vars(ap.parse_args()))), indent=2))
