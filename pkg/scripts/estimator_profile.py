"""Histogram of |j* - estimate| for the interpolating estimator, for several alpha values."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from rrl.conjectures import compare_alphas


@dataclass
class ProfileConfig:
    n_min: int = 4
    n_max: int = 1000
    alphas: list = field(default_factory=lambda: [0.0, 0.1313, 0.25, 0.5])


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=ProfileConfig.n_min)
    p.add_argument("--n-max", type=int, default=ProfileConfig.n_max)
    p.add_argument("--alphas", type=float, nargs="+", default=ProfileConfig().alphas)
    cfg = ProfileConfig(**vars(p.parse_args(argv)))
    rows = []
    for prof in compare_alphas(cfg.n_min, cfg.n_max, cfg.alphas):
        rows.append(
            {
                "alpha": prof.alpha,
                "pairs": prof.count,
                "mean_error": round(prof.mean, 6),
                "max_error": prof.max,
                "histogram": {str(k): v for k, v in prof.histogram.items()},
            }
        )
    print(json.dumps(rows, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
