"""Brute-force ground truth: direct DFT spectra, dense eigensolvers, exhaustive graph search.

Nothing here calls into :mod:`rrl.dirichlet` or :mod:`rrl.spectral`; the oracle
only sees generators and dense matrices.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import RRLGraph, CirculantMatrix, generator_vector, cyclic_permutation

DENSE_MAX_N = 4096
CHROMATIC_MAX_N = 16


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleSpectrum:
    complex_values: np.ndarray
    real_values: np.ndarray
    sorted_values: np.ndarray


@lru_cache(maxsize=8)
def _dft_matrix(N: int) -> np.ndarray:
    k = np.arange(N)
    # exact integer phase reduction keeps the twiddles accurate for large N
    phase = np.outer(k, k) % N
    F = np.exp(-2j * np.pi * phase / N)
    F.setflags(write=False)
    return F


def _is_reversal_symmetric(w: np.ndarray, tol: float = 0.0) -> bool:
    return bool(np.all(np.abs(w[1:] - w[1:][::-1]) <= tol))


def circulant_spectrum_dft(w, imag_tol: float = 1e-9) -> OracleSpectrum:
    """lambda_j = sum_k w_{k+1} exp(-i j k 2 pi / N), by direct O(N^2) summation."""
    w = np.asarray(w, dtype=float)
    if not np.all(np.isfinite(w)):
        raise ValueError("generator must be finite")
    vals = _dft_matrix(len(w)) @ w
    if _is_reversal_symmetric(w):
        worst = float(np.max(np.abs(vals.imag))) if len(w) else 0.0
        if worst > imag_tol:
            raise OracleError(f"imaginary residue {worst:g} on a symmetric generator")
    real = vals.real.copy()
    return OracleSpectrum(vals, real, np.sort(real))


def circulant_spectra_dft(W: np.ndarray) -> np.ndarray:
    """Real DFT spectra for a stack of generators (rows of ``W``), shape (k, N)."""
    W = np.asarray(W, dtype=float)
    return (W @ _dft_matrix(W.shape[1]).T).real


def materialize(c: CirculantMatrix) -> np.ndarray:
    """Dense N x N matrix, row h equal to the (h-1)-th cyclic shift of the generator."""
    N = c.N
    if N > DENSE_MAX_N:
        raise OracleError(f"dense materialisation capped at N={DENSE_MAX_N}")
    return np.stack([cyclic_permutation(c.generator, h) for h in range(N)]).astype(float)


def _check_symmetric(M: np.ndarray, tol: float = 1e-12):
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] > DENSE_MAX_N:
        raise OracleError(f"dense eigensolver capped at N={DENSE_MAX_N}")
    if not np.allclose(M, M.T, rtol=0.0, atol=tol):
        raise ValueError("matrix is not symmetric")


def dense_symmetric_eigenvalues(M, residual_tol: float = 1e-8) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, ascending, residual-checked.

    Each eigenpair must satisfy ||M v - lambda v|| <= residual_tol * ||M||_2.
    """
    M = np.asarray(M, dtype=float)
    _check_symmetric(M)
    vals, vecs = np.linalg.eigh(M)
    scale = max(float(np.max(np.abs(vals))) if len(vals) else 0.0, 1.0)
    res = np.linalg.norm(M @ vecs - vecs * vals, axis=0)
    if np.any(res > residual_tol * scale):
        raise OracleError(f"eigen residual {res.max():g} exceeds {residual_tol:g}*||M||")
    return vals


def _reflection_bases(N: int):
    # P: i -> -i mod N. Pairs (a, b) with b = -a mod N span the symmetric and
    # antisymmetric invariant subspaces.
    half = (N - 1) // 2
    k = np.arange(1, half + 1)
    sym_a = np.concatenate([[0], k, [N // 2] if N % 2 == 0 else []]).astype(int)
    sym_b = np.concatenate([[0], N - k, [N // 2] if N % 2 == 0 else []]).astype(int)
    sym_w = np.where(sym_a == sym_b, 0.5, math.sqrt(0.5))
    return (sym_a, sym_b, sym_w), (k, N - k, np.full(half, math.sqrt(0.5)))


def _block(M, a, b, w, sign):
    # Q^T M Q for Q[:, i] = w_i (e_{a_i} + sign e_{b_i}); M may carry leading batch axes
    ix = np.ix_
    B = (
        M[(..., *ix(a, a))]
        + sign * M[(..., *ix(a, b))]
        + sign * M[(..., *ix(b, a))]
        + M[(..., *ix(b, b))]
    )
    return B * np.outer(w, w)


def dense_reflection_eigenvalues(M, check: bool = True) -> np.ndarray:
    """Eigenvalues of symmetric matrices invariant under i -> -i mod N, ascending.

    The reflection splits the matrix orthogonally into two dense blocks of about
    half the size, each handed to LAPACK. Accepts a stack of matrices. Pass
    ``check=False`` only when the invariances hold by construction.
    """
    M = np.asarray(M, dtype=float)
    N = M.shape[-1]
    if check:
        P = (-np.arange(N)) % N
        if not np.allclose(M, M[..., P[:, None], P[None, :]], rtol=0.0, atol=1e-12):
            raise ValueError("matrix is not reflection invariant")
        if not np.allclose(M, np.swapaxes(M, -1, -2), rtol=0.0, atol=1e-12):
            raise ValueError("matrix is not symmetric")
    (sa, sb, sw), (aa, ab, aw) = _reflection_bases(N)
    parts = [np.linalg.eigvalsh(_block(M, sa, sb, sw, 1.0))]
    if len(aa):
        parts.append(np.linalg.eigvalsh(_block(M, aa, ab, aw, -1.0)))
    return np.sort(np.concatenate(parts, axis=-1), axis=-1)


def _neighbours(g: RRLGraph, v: int):
    return [(v + s) % g.N for s in range(-g.m, g.m + 1) if s != 0]


def _bfs(g: RRLGraph, root: int):
    dist = [-1] * g.N
    parent = [-1] * g.N
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in _neighbours(g, u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                queue.append(v)
    return dist, parent


def exact_girth(g: RRLGraph) -> int:
    """Shortest cycle length by breadth-first search.

    A BFS from root r yields a value between the girth and the shortest cycle
    through r; vertex transitivity makes those equal, so one root suffices.
    """
    if g.N > DENSE_MAX_N:
        raise OracleError(f"girth search capped at N={DENSE_MAX_N}")
    dist = [-1] * g.N
    parent = [-1] * g.N
    dist[0] = 0
    queue = deque([0])
    best = math.inf
    while queue:
        u = queue.popleft()
        if 2 * dist[u] + 1 >= best:
            break
        for v in _neighbours(g, u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                queue.append(v)
            elif parent[u] != v:
                best = min(best, dist[u] + dist[v] + 1)
    return int(best)


def exact_diameter_radius(g: RRLGraph):
    """(diameter, radius) from one BFS; vertex transitivity makes every eccentricity equal."""
    if g.N > DENSE_MAX_N:
        raise OracleError(f"distance search capped at N={DENSE_MAX_N}")
    dist, _ = _bfs(g, 0)
    ecc = max(dist)
    return ecc, ecc


def _dsatur_greedy(adj):
    N = len(adj)
    colour = [-1] * N
    for _ in range(N):
        v = max(
            (u for u in range(N) if colour[u] < 0),
            key=lambda u: (len({colour[x] for x in adj[u] if colour[x] >= 0}), len(adj[u])),
        )
        used = {colour[x] for x in adj[v]}
        colour[v] = next(c for c in range(N) if c not in used)
    return max(colour) + 1


def _k_colourable(adj, k: int) -> bool:
    N = len(adj)
    colour = [-1] * N

    def pick():
        best, key = -1, None
        for u in range(N):
            if colour[u] >= 0:
                continue
            sat = len({colour[x] for x in adj[u] if colour[x] >= 0})
            kk = (sat, len(adj[u]))
            if key is None or kk > key:
                best, key = u, kk
        return best

    def solve(done: int, used: int) -> bool:
        if done == N:
            return True
        v = pick()
        forbidden = {colour[x] for x in adj[v]}
        # new colours are interchangeable, so only try the first unused one
        for c in range(min(used + 1, k)):
            if c in forbidden:
                continue
            colour[v] = c
            if solve(done + 1, max(used, c + 1)):
                return True
        colour[v] = -1
        return False

    return solve(0, 0)


def exact_chromatic(g: RRLGraph) -> int:
    """Chromatic number by DSATUR-ordered backtracking.

    Bounds: the m+1 consecutive vertices form a clique (lower), greedy DSATUR (upper).
    """
    if g.N > CHROMATIC_MAX_N:
        raise OracleError(f"exact chromatic search capped at N={CHROMATIC_MAX_N}, got N={g.N}")
    adj = [_neighbours(g, v) for v in range(g.N)]
    lower = g.m + 1
    upper = _dsatur_greedy(adj)
    for k in range(lower, upper):
        if _k_colourable(adj, k):
            return k
    return upper


@dataclass(frozen=True)
class Discrepancy:
    max_deviation: float
    worst_index: int
    first_offending_index: int | None
    tol: float

    @property
    def ok(self) -> bool:
        return self.first_offending_index is None


def compare_spectra(closed, oracle, tol: float = 1e-9) -> Discrepancy:
    """Positional comparison of a closed-form spectrum with an oracle spectrum.

    ``closed`` may be a SpectrumReport or an array; ``oracle`` an OracleSpectrum or an array.
    """
    a = np.asarray(getattr(closed, "values", closed), dtype=float)
    b = np.asarray(getattr(oracle, "real_values", oracle), dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    dev = np.abs(a - b)
    bad = np.flatnonzero(dev > tol)
    worst = int(np.argmax(dev)) if len(dev) else 0
    return Discrepancy(
        max_deviation=float(dev.max()) if len(dev) else 0.0,
        worst_index=worst,
        first_offending_index=int(bad[0]) if len(bad) else None,
        tol=tol,
    )


def oracle_properties(g: RRLGraph) -> dict:
    """Exhaustive counterparts of the closed-formula properties that the oracle can afford."""
    out = {"exact_girth": exact_girth(g)}
    diam, rad = exact_diameter_radius(g)
    out["exact_diameter"] = diam
    out["exact_radius"] = rad
    if g.N <= CHROMATIC_MAX_N:
        out["exact_chromatic"] = exact_chromatic(g)
    return out


def adjacency_generators(N: int) -> np.ndarray:
    """Stacked adjacency generators for m = 1..n-1, shape (n-1, N)."""
    return np.stack([generator_vector(RRLGraph(N, m)) for m in range(1, N // 2)]).astype(float)
