"""Table of lower and upper bounds for i = 2, w = 3.

Upper bounds come from the even/odd partition constructions, rebuilt and
verified for every n up to ``verify_max``.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from jel.bounds import bounds_report, theorem3_upper


@dataclass
class TableConfig:
    n_min: int = 9
    n_max: int = 30
    verify_max: int = 16


def rows(cfg: TableConfig):
    for n in range(cfg.n_min, cfg.n_max + 1):
        rep = bounds_report(2, n, 3)
        if n <= cfg.verify_max:
            theorem3_upper(n, verify=True)
        lows = ", ".join(f"{v} ({s})" for v, s in rep.lower_bounds)
        yield n, rep.best_lower, rep.best_upper, lows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description="bounds on the negative count of V_2 in J(n,3)")
    ap.add_argument("--n-min", type=int, default=TableConfig.n_min)
    ap.add_argument("--n-max", type=int, default=TableConfig.n_max)
    ap.add_argument("--verify-max", type=int, default=TableConfig.verify_max)
    cfg = TableConfig(**vars(ap.parse_args()))
    print(f"{'n':>4} {'lower':>6} {'upper':>6}  lower-bound sources")
    for n, lo, hi, lows in rows(cfg):
        print(f"{n:>4} {lo:>6} {hi:>6}  {lows}")
