"""Closed-form minimum-support scan with a tie/violation summary.

    python scripts/run_scan.py --n-max 600 --out results/scan.csv
"""

from __future__ import annotations

import argparse
import csv
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from jel.minsupport import SCAN_COLUMNS, conjecture_scan


@dataclass
class ScanConfig:
    n_min: int = 6
    n_max: int = 600
    threads: int = 1
    out: Path = Path("results/scan.csv")


def main(cfg: ScanConfig) -> dict:
    t0 = time.perf_counter()
    res = conjecture_scan(cfg.n_min, cfg.n_max, threads=cfg.threads)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    with cfg.out.open("w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(SCAN_COLUMNS)
        wr.writerows(r.as_record() for r in res.rows)
    summary = res.summary() | {"seconds": round(time.perf_counter() - t0, 2)}
    # pairs where the two-valued class wins, grouped by w
    two_valued = {}
    for r in res.rows:
        if "TwoValued" in r.winner:
            two_valued.setdefault(r.w, []).append(r.n)
    summary["two_valued_wins"] = {str(w): ns for w, ns in sorted(two_valued.items())}
    return summary


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=ScanConfig.n_min)
    ap.add_argument("--n-max", type=int, default=ScanConfig.n_max)
    ap.add_argument("--threads", type=int, default=ScanConfig.threads)
    ap.add_argument("--out", type=Path, default=ScanConfig.out)
    cfg = ScanConfig(**vars(ap.parse_args()))
    print(json.dumps({"config": {k: str(v) for k, v in asdict(cfg).items()}, "summary": main(cfg)}, indent=2))
