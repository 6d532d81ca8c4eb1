"""Closed forms versus oracles over whole (N, m) ranges."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import oracle, spectral
from .core import MatrixKind, RRLGraph, admissible_orders, matrix_view

KINDS = tuple(MatrixKind)
_DENSE_BATCH = 16


@dataclass(frozen=True)
class Worst:
    deviation: float = 0.0
    N: int = 0
    m: int = 0
    j: int = -1
    kind: str = ""

    def __lt__(self, other):
        return self.deviation < other.deviation


@dataclass
class VerificationReport:
    n_min: int
    n_max: int
    tol: float
    dense_tol: float
    dense_max: int
    pairs: int = 0
    dft_worst: Worst = field(default_factory=Worst)
    dense_worst: Worst = field(default_factory=Worst)
    dft_failures: int = 0
    dense_failures: int = 0
    first_failure: Worst | None = None
    runtime_s: float = 0.0

    @property
    def ok(self) -> bool:
        return self.dft_failures == 0 and self.dense_failures == 0

    def merge(self, other: "VerificationReport"):
        self.pairs += other.pairs
        self.dft_worst = max(self.dft_worst, other.dft_worst)
        self.dense_worst = max(self.dense_worst, other.dense_worst)
        self.dft_failures += other.dft_failures
        self.dense_failures += other.dense_failures
        if self.first_failure is None:
            self.first_failure = other.first_failure

    def as_dict(self) -> dict:
        def w(x: Worst):
            return {"deviation": x.deviation, "N": x.N, "m": x.m, "j": x.j, "kind": x.kind}

        return {
            "ok": self.ok,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "tol": self.tol,
            "dense_tol": self.dense_tol,
            "dense_max": self.dense_max,
            "pairs": self.pairs,
            "dft_failures": self.dft_failures,
            "dense_failures": self.dense_failures,
            "dft_worst": w(self.dft_worst),
            "dense_worst": w(self.dense_worst),
            "first_failure": None if self.first_failure is None else w(self.first_failure),
        }


def _dense_stack(G: np.ndarray) -> np.ndarray:
    N = G.shape[1]
    idx = (np.arange(N)[None, :] - np.arange(N)[:, None]) % N
    return G[:, idx]


def verify_order(N: int, tol: float = 1e-9, dense_tol: float = 1e-8, dense: bool = True) -> VerificationReport:
    """Check every m and every matrix kind at one N."""
    rep = VerificationReport(N, N, tol, dense_tol, N if dense else 0)
    ms = list(admissible_orders(N))
    rep.pairs = len(ms)
    for kind in KINDS:
        graphs = [RRLGraph(N, m) for m in ms]
        closed = np.stack([spectral.full_spectrum(g, kind).values for g in graphs])
        G = np.stack([matrix_view(g, kind).generator for g in graphs])
        dft = oracle.circulant_spectra_dft(G)
        dev = np.abs(closed - dft)
        r, j = np.unravel_index(np.argmax(dev), dev.shape)
        rep.dft_worst = max(rep.dft_worst, Worst(float(dev[r, j]), N, ms[r], int(j), kind.value))
        bad = np.argwhere(dev > tol)
        rep.dft_failures += len(bad)
        if len(bad) and rep.first_failure is None:
            r0, j0 = bad[0]
            rep.first_failure = Worst(float(dev[r0, j0]), N, ms[r0], int(j0), kind.value)
        if not dense:
            continue
        # symmetric generators give symmetric, reflection-invariant circulants
        assert np.array_equal(G[:, 1:], G[:, :0:-1])
        closed_sorted = np.sort(closed, axis=1)
        for lo in range(0, len(ms), _DENSE_BATCH):
            ev = oracle.dense_reflection_eigenvalues(_dense_stack(G[lo : lo + _DENSE_BATCH]), check=False)
            ddev = np.abs(closed_sorted[lo : lo + _DENSE_BATCH] - ev).max(axis=1)
            k = int(np.argmax(ddev))
            rep.dense_worst = max(rep.dense_worst, Worst(float(ddev[k]), N, ms[lo + k], -1, kind.value))
            nbad = int(np.sum(ddev > dense_tol))
            rep.dense_failures += nbad
            if nbad and rep.first_failure is None:
                k0 = int(np.flatnonzero(ddev > dense_tol)[0])
                rep.first_failure = Worst(float(ddev[k0]), N, ms[lo + k0], -1, kind.value)
    return rep


def _verify_chunk(args):
    Ns, tol, dense_tol, dense_max = args
    out = []
    for N in Ns:
        out.append(verify_order(N, tol, dense_tol, dense=N <= dense_max))
    return out


def verify_range(
    n_max: int,
    n_min: int = 4,
    tol: float = 1e-9,
    dense_tol: float = 1e-8,
    dense_max: int = oracle.DENSE_MAX_N,
    workers: int = 1,
) -> VerificationReport:
    """Closed forms against the DFT oracle index-wise and the dense solver as multisets.

    The dense route is used for N <= ``dense_max``; above that only the DFT.
    """
    t0 = time.perf_counter()
    report = VerificationReport(n_min, n_max, tol, dense_tol, min(dense_max, n_max))
    Ns = list(range(max(4, n_min), n_max + 1))
    if workers <= 1 or len(Ns) < 2:
        parts = _verify_chunk((Ns, tol, dense_tol, dense_max))
    else:
        # interleave so each worker gets a similar mix of small and large N
        chunks = [(Ns[i::workers], tol, dense_tol, dense_max) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = [r for chunk in ex.map(_verify_chunk, chunks) for r in chunk]
        parts.sort(key=lambda r: r.n_min)
    for p in parts:
        report.merge(p)
    report.runtime_s = time.perf_counter() - t0
    return report
