"""Linear average consensus x(t+1) = R x(t) with the Randic matrix of a ring lattice.

R is doubly stochastic, so the mean is conserved and ||x(t) - mean|| decays
like sigma(R)^t, sigma being the essential spectral radius.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import spectral
from .core import MatrixKind, RRLGraph, matrix_view

UNDERFLOW_FLOOR = 1e-13
MIN_WINDOW = 10


class RateFitError(ValueError):
    """Not enough usable error samples to fit a rate."""


@dataclass(frozen=True)
class ConsensusRun:
    g: RRLGraph
    initial_state: np.ndarray
    steps: int
    seed: int | None
    trajectory_errors: np.ndarray
    mean_drift: float

    @property
    def consensus_value(self) -> float:
        return float(np.mean(self.initial_state))


def _average_step(x: np.ndarray, m: int) -> np.ndarray:
    acc = np.zeros_like(x)
    for s in range(1, m + 1):
        acc += np.roll(x, s)
        acc += np.roll(x, -s)
    return acc / (2 * m)


def _dense_step_matrix(g: RRLGraph) -> np.ndarray:
    c = matrix_view(g, MatrixKind.RANDIC)
    idx = (np.arange(g.N)[None, :] - np.arange(g.N)[:, None]) % g.N
    return c.generator[idx]


def run(g: RRLGraph, steps: int, seed: int | None = 0, initial_state=None, dense: bool = False) -> ConsensusRun:
    """Iterate neighbour averaging for ``steps`` rounds.

    The initial state is uniform on [0, 1] from ``default_rng(seed)`` unless given.
    ``dense=True`` multiplies by the materialised matrix instead; it exists as a
    reference for the O(N m) generator path.
    """
    if isinstance(steps, bool) or int(steps) != steps or steps < 1:
        raise ValueError(f"steps must be a positive integer, got {steps!r}")
    steps = int(steps)
    if initial_state is None:
        x = np.random.default_rng(seed).uniform(0.0, 1.0, g.N)
    else:
        x = np.array(initial_state, dtype=float)
        if x.shape != (g.N,):
            raise ValueError(f"initial state must have length {g.N}, got shape {x.shape}")
    x0 = x.copy()
    mean = float(np.mean(x0))
    # iterate on the deviation from the mean: R fixes constants, so this is the same
    # trajectory shifted by mean * 1, without a rounding floor at |mean| * eps
    y = x0 - mean
    R = _dense_step_matrix(g) if dense else None
    errors = np.empty(steps + 1)
    errors[0] = np.linalg.norm(y)
    drift = 0.0
    for t in range(1, steps + 1):
        y = R @ y if dense else _average_step(y, g.m)
        errors[t] = np.linalg.norm(y)
        drift = max(drift, abs(float(np.mean(y))))
    x0.setflags(write=False)
    errors.setflags(write=False)
    return ConsensusRun(g, x0, steps, seed, errors, drift)


def usable_window(run: ConsensusRun) -> int:
    """Number of leading error samples strictly above the underflow floor."""
    below = np.flatnonzero(run.trajectory_errors <= UNDERFLOW_FLOOR)
    return int(below[0]) if len(below) else len(run.trajectory_errors)


def empirical_rate(run: ConsensusRun) -> float:
    """Geometric decay rate from a least-squares fit of log error over the last half of the usable window."""
    k = usable_window(run)
    if k == 0:
        raise RateFitError("error underflowed before the window start")
    if k < MIN_WINDOW:
        raise RateFitError(f"window too short: {k} usable steps, need {MIN_WINDOW}")
    t = np.arange(k // 2, k)
    slope = np.polyfit(t, np.log(run.trajectory_errors[t]), 1)[0]
    return float(np.exp(slope))


@dataclass(frozen=True)
class RateReport:
    N: int
    m: int
    steps: int
    seed: int | None
    sigma: float
    rate: float
    relative_deviation: float
    convergent: bool
    status: str


def rate_report(run: ConsensusRun) -> RateReport:
    """Fitted rate against sigma(R).

    When sigma(R) = 1 (even N, m = 1) the alternating mode never decays and no
    fit is attempted; the report says "rate=1, non-convergent".
    """
    g = run.g
    sigma = spectral.essential_spectral_radius(g)
    if sigma >= 1.0 - 1e-12:
        return RateReport(g.N, g.m, run.steps, run.seed, sigma, 1.0, abs(1.0 - sigma) / sigma, False,
                          f"rate=1, non-convergent, sigma={sigma:.15g}")
    rate = empirical_rate(run)
    dev = abs(rate - sigma) / sigma
    return RateReport(g.N, g.m, run.steps, run.seed, sigma, rate, dev, True,
                      f"rate={rate:.6g}, sigma={sigma:.15g}")


def alternating_floor(run: ConsensusRun) -> float:
    """Norm of the projection of the centred initial state on (+1, -1, ...); zero for odd N."""
    if run.g.N % 2:
        return 0.0
    alt = np.where(np.arange(run.g.N) % 2 == 0, 1.0, -1.0)
    return abs(float(alt @ (run.initial_state - run.consensus_value))) / math.sqrt(run.g.N)
