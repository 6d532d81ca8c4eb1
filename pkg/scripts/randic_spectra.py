"""Randic eigenvalues of C_N^m for small N as long-format CSV (plot data only)."""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

from rrl.core import MatrixKind, RRLGraph, admissible_orders
from rrl.spectral import essential_spectral_radius, full_spectrum


@dataclass
class SpectraConfig:
    n_min: int = 4
    n_max: int = 11


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=SpectraConfig.n_min)
    p.add_argument("--n-max", type=int, default=SpectraConfig.n_max)
    cfg = SpectraConfig(**vars(p.parse_args(argv)))
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["N", "m", "j", "lambda_randic", "sigma"])
    for N in range(cfg.n_min, cfg.n_max + 1):
        for m in admissible_orders(N):
            g = RRLGraph(N, m)
            sigma = essential_spectral_radius(g)
            for j, v in enumerate(full_spectrum(g, MatrixKind.RANDIC).values):
                w.writerow([N, m, j, format(float(v), ".15g"), format(sigma, ".15g")])
    return 0


if __name__ == "__main__":
    sys.exit(main())
