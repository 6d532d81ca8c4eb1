"""Sweeps that test the two open conjectures over ranges of (N, m).

Conjecture 1: j* <= ceil(3N/(4m+2) - 1/2).
Conjecture 2: the case table for gamma lands in the observed tie set.

Counterexamples are data, never errors. A violation of a proven bound
(j_lower <= j* <= n, or the sigma identity) means a bug and aborts.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import spectral
from .core import RRLGraph
from .spectral import EstimatorConfig

CSV_FIELDS = (
    "N",
    "m",
    "j_star",
    "j_lower",
    "j_upper",
    "gamma_true",
    "gamma_ties",
    "gamma_predicted",
    "conj1",
    "conj2",
    "sigma",
    "rho",
    "fiedler",
)

SIGMA_IDENTITY_TOL = 1e-10


class TheoremViolation(RuntimeError):
    """A proven inequality failed; the implementation is wrong, not the conjecture."""


@dataclass(frozen=True)
class SweepRecord:
    N: int
    m: int
    j_star: int
    j_lower: int
    j_upper: int
    gamma_true: int
    gamma_tie_set: frozenset
    gamma_predicted: int
    conj1_holds: bool
    conj2_holds: bool
    sigma: float
    rho: float
    fiedler: float

    def row(self) -> dict:
        """Serialised form: tie set as '|'-joined ints, booleans 0/1, reals at 15 significant digits."""
        return {
            "N": self.N,
            "m": self.m,
            "j_star": self.j_star,
            "j_lower": self.j_lower,
            "j_upper": self.j_upper,
            "gamma_true": self.gamma_true,
            "gamma_ties": "|".join(str(j) for j in sorted(self.gamma_tie_set)),
            "gamma_predicted": self.gamma_predicted,
            "conj1": int(self.conj1_holds),
            "conj2": int(self.conj2_holds),
            "sigma": fmt_real(self.sigma),
            "rho": fmt_real(self.rho),
            "fiedler": fmt_real(self.fiedler),
        }


def fmt_real(x: float) -> str:
    return format(float(x), ".15g")


@dataclass
class SweepSummary:
    N_min: int
    N_max: int
    records: int = 0
    conj1_counterexamples: list = field(default_factory=list)
    conj2_counterexamples: list = field(default_factory=list)
    # indices the conjecture's supplementary clauses claim as gamma ties but are not
    supplementary_contradictions: list = field(default_factory=list)
    max_estimator_error: int = 0
    mean_estimator_error: float = 0.0
    runtime_s: float = 0.0

    def as_dict(self, include_runtime: bool = False) -> dict:
        out = {
            "N_min": self.N_min,
            "N_max": self.N_max,
            "records": self.records,
            "conj1_counterexamples": len(self.conj1_counterexamples),
            "conj2_counterexamples": len(self.conj2_counterexamples),
            "conj1_examples": [list(p) for p in self.conj1_counterexamples[:20]],
            "conj2_examples": [list(p) for p in self.conj2_counterexamples[:20]],
            "supplementary_contradictions": len(self.supplementary_contradictions),
            "max_estimator_error": self.max_estimator_error,
            "mean_estimator_error": float(fmt_real(self.mean_estimator_error)),
        }
        if include_runtime:
            out["runtime_s"] = round(self.runtime_s, 3)
        return out


@dataclass
class _Chunk:
    records: list
    estimator_errors: list
    supplementary_contradictions: list


def _records_for_order(N: int, alpha: float = EstimatorConfig().alpha) -> _Chunk:
    t = spectral.extremal_table(N)
    n = N // 2
    threshold = spectral.gamma_threshold(N)
    cfg = EstimatorConfig(alpha)
    records, errors, contra = [], [], []
    for i, m in enumerate(t.m.tolist()):
        js = int(t.j_star[i])
        jl = int(t.j_lower[i])
        if not jl <= js <= n:
            raise TheoremViolation(f"j_lower <= j* <= n fails at (N, m) = ({N}, {m}): {jl}, {js}, {n}")
        fied = float(t.fiedler[i])
        rho = float(t.spectral_radius[i])
        sigma = float(t.sigma[i])
        rederived = max(1 - fied / (2 * m), -1 + rho / (2 * m))
        if abs(sigma - rederived) > SIGMA_IDENTITY_TOL:
            raise TheoremViolation(f"sigma identity fails at (N, m) = ({N}, {m}): {sigma} vs {rederived}")
        ju = int(t.j_upper_conjectured[i])
        ties = t.gamma_ties[i]
        pred = int(t.gamma_conjectured[i])
        records.append(
            SweepRecord(
                N=N,
                m=m,
                j_star=js,
                j_lower=jl,
                j_upper=ju,
                gamma_true=int(t.gamma[i]),
                gamma_tie_set=ties,
                gamma_predicted=pred,
                conj1_holds=js <= ju,
                conj2_holds=pred in ties,
                sigma=sigma,
                rho=rho,
                fiedler=fied,
            )
        )
        est = spectral.jstar_estimate_conjectured(RRLGraph(N, m), cfg)
        errors.append(abs(js - est))
        claimed = spectral._supplementary_rule(N, m, threshold)
        if not claimed <= ties:
            contra.append((N, m))
    return _Chunk(records, errors, contra)


def worker_count(workers: int | None) -> int:
    """Explicit value, else RRL_WORKERS, else the CPU count."""
    if workers is None:
        env = os.environ.get("RRL_WORKERS")
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(workers))


def sweep(N_min: int, N_max: int, workers: int | None = 1, alpha: float = EstimatorConfig().alpha):
    """All admissible (N, m) with N_min <= N <= N_max, in (N, m) order.

    Returns ``(records, summary)``. Work is split by N; results are merged in N order
    so the output does not depend on the worker count.
    """
    if not 4 <= N_min <= N_max:
        raise ValueError(f"invalid range: need 4 <= N_min <= N_max, got {N_min}, {N_max}")
    t0 = time.perf_counter()
    Ns = range(N_min, N_max + 1)
    workers = worker_count(workers)
    if workers == 1:
        chunks = [_records_for_order(N, alpha) for N in Ns]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_records_for_order, Ns, [alpha] * len(Ns), chunksize=8))
    records, errors = [], []
    summary = SweepSummary(N_min, N_max)
    for c in chunks:
        records.extend(c.records)
        errors.extend(c.estimator_errors)
        summary.supplementary_contradictions.extend(c.supplementary_contradictions)
    summary.records = len(records)
    summary.conj1_counterexamples = [(r.N, r.m) for r in records if not r.conj1_holds]
    summary.conj2_counterexamples = [(r.N, r.m) for r in records if not r.conj2_holds]
    summary.max_estimator_error = max(errors, default=0)
    summary.mean_estimator_error = sum(errors) / len(errors) if errors else 0.0
    summary.runtime_s = time.perf_counter() - t0
    return records, summary


def write_csv(records, fh) -> None:
    w = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.row())


def write_jsonl(records, fh) -> None:
    for r in records:
        row = r.row()
        for k in ("sigma", "rho", "fiedler"):
            row[k] = float(row[k])
        fh.write(json.dumps(row) + "\n")


def to_csv_text(records) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def read_csv(fh) -> list[SweepRecord]:
    out = []
    for row in csv.DictReader(fh):
        out.append(
            SweepRecord(
                N=int(row["N"]),
                m=int(row["m"]),
                j_star=int(row["j_star"]),
                j_lower=int(row["j_lower"]),
                j_upper=int(row["j_upper"]),
                gamma_true=int(row["gamma_true"]),
                gamma_tie_set=frozenset(int(x) for x in row["gamma_ties"].split("|") if x),
                gamma_predicted=int(row["gamma_predicted"]),
                conj1_holds=row["conj1"] == "1",
                conj2_holds=row["conj2"] == "1",
                sigma=float(row["sigma"]),
                rho=float(row["rho"]),
                fiedler=float(row["fiedler"]),
            )
        )
    return out


@dataclass(frozen=True)
class ErrorProfile:
    alpha: float
    histogram: dict
    count: int
    mean: float
    max: int


def estimator_error_profile(N_min: int, N_max: int, alpha: float = EstimatorConfig().alpha) -> ErrorProfile:
    """Histogram of |j* - estimate| over every admissible (N, m) in range."""
    cfg = EstimatorConfig(alpha)
    hist = Counter()
    for N in range(max(4, N_min), N_max + 1):
        t = spectral.extremal_table(N)
        for i, m in enumerate(t.m.tolist()):
            hist[abs(int(t.j_star[i]) - spectral.jstar_estimate_conjectured(RRLGraph(N, m), cfg))] += 1
    count = sum(hist.values())
    mean = sum(k * v for k, v in hist.items()) / count if count else math.nan
    return ErrorProfile(alpha, dict(sorted(hist.items())), count, mean, max(hist, default=0))


def compare_alphas(N_min: int, N_max: int, alphas=(0.0, 0.1313)) -> list[ErrorProfile]:
    return [estimator_error_profile(N_min, N_max, a) for a in alphas]
