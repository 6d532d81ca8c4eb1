"""Conjecture sweep over 4 <= N <= n_max; writes the record CSV and a summary JSON."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from rrl.conjectures import sweep, worker_count, write_csv


@dataclass
class SweepConfig:
    n_min: int = 4
    n_max: int = 2000
    workers: int | None = None
    out_dir: Path = Path("results")


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=SweepConfig.n_min)
    p.add_argument("--n-max", type=int, default=SweepConfig.n_max)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out-dir", type=Path, default=SweepConfig.out_dir)
    cfg = SweepConfig(**vars(p.parse_args(argv)))
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    records, summary = sweep(cfg.n_min, cfg.n_max, workers=worker_count(cfg.workers))
    with open(cfg.out_dir / f"sweep_{cfg.n_min}_{cfg.n_max}.csv", "w", newline="") as fh:
        write_csv(records, fh)
    doc = summary.as_dict()
    doc["supplementary_contradiction_examples"] = [list(p) for p in summary.supplementary_contradictions[:20]]
    (cfg.out_dir / f"sweep_{cfg.n_min}_{cfg.n_max}_summary.json").write_text(json.dumps(doc, indent=2) + "\n")
    print(json.dumps(doc, indent=2))
    print(f"runtime {summary.runtime_s:.1f} s", file=sys.stderr)
    if summary.conj1_counterexamples or summary.conj2_counterexamples:
        print("WARNING: counterexamples found, see summary", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
