"""Fitted consensus rate against sigma(R) for a grid of ring lattices."""
from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass

from rrl import consensus
from rrl.core import RRLGraph, admissible_orders
from rrl.spectral import essential_spectral_radius


@dataclass
class RateConfig:
    n_min: int = 5
    n_max: int = 30
    seed: int = 0
    max_steps: int = 20000


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=RateConfig.n_min)
    p.add_argument("--n-max", type=int, default=RateConfig.n_max)
    p.add_argument("--seed", type=int, default=RateConfig.seed)
    p.add_argument("--max-steps", type=int, default=RateConfig.max_steps)
    cfg = RateConfig(**vars(p.parse_args(argv)))
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["N", "m", "steps", "sigma", "rate", "relative_deviation", "status"])
    for N in range(cfg.n_min, cfg.n_max + 1):
        for m in admissible_orders(N):
            g = RRLGraph(N, m)
            sigma = essential_spectral_radius(g)
            steps = 200 if sigma >= 1 - 1e-12 else min(cfg.max_steps, int(math.log(1e-14) / math.log(sigma)) + 10)
            try:
                rep = consensus.rate_report(consensus.run(g, steps, cfg.seed))
            except consensus.RateFitError as exc:
                w.writerow([N, m, steps, format(sigma, ".15g"), "", "", f"no fit: {exc}"])
                continue
            w.writerow([N, m, steps, format(sigma, ".15g"), format(rep.rate, ".15g"),
                        format(rep.relative_deviation, ".3g"), rep.status])
    return 0


if __name__ == "__main__":
    sys.exit(main())
