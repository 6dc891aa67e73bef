"""Exhaustive and randomized searches for the minimum negative count.

Runs the exhaustive search on every small scheme under the cap and the
randomized search on a few larger ones, writing witnesses as JSON.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from jel.bounds import bounds_report
from jel.search import min_negatives_exhaustive, random_upper_search, witness_json


@dataclass
class SearchConfig:
    exhaustive: list = field(default_factory=lambda: [(1, 4, 2), (1, 5, 2), (1, 6, 2), (1, 7, 2), (2, 5, 2), (2, 6, 2), (2, 7, 2)])
    randomized: list = field(default_factory=lambda: [(1, 6, 3), (2, 8, 3), (2, 9, 3), (2, 10, 3)])
    iterations: int = 1000
    seed: int = 0
    out_dir: Path = Path("results/witnesses")


def run(cfg: SearchConfig) -> list[dict]:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    report = []
    jobs = [("exhaustive", t) for t in cfg.exhaustive] + [("randomized", t) for t in cfg.randomized]
    for mode, (i, n, w) in jobs:
        t0 = time.perf_counter()
        if mode == "exhaustive":
            res = min_negatives_exhaustive(i, n, w)
        else:
            res = random_upper_search(i, n, w, cfg.iterations, cfg.seed)
        rep = bounds_report(i, n, w)
        if res.witness is not None:
            (cfg.out_dir / f"{mode}_i{i}_n{n}_w{w}.json").write_text(witness_json(res.witness, i) + "\n")
        report.append({
            "mode": mode, "i": i, "n": n, "w": w, "value": res.value, "status": res.status,
            "best_lower": rep.best_lower, "best_upper": rep.best_upper,
            "lp_calls": res.lp_calls, "seconds": round(time.perf_counter() - t0, 2),
        })
    return report


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--iterations", type=int, default=SearchConfig.iterations)
    ap.add_argument("--seed", type=int, default=SearchConfig.seed)
    ap.add_argument("--out-dir", type=Path, default=SearchConfig.out_dir)
    a = ap.parse_args()
    for row in run(SearchConfig(iterations=a.iterations, seed=a.seed, out_dir=a.out_dir)):
        print(json.dumps(row))
