"""Regular ring lattices C_N^m: construction, circulant views, basic invariants."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class AdmissibilityError(ValueError):
    """Raised for (N, m) pairs outside 4 <= N, 1 <= m < floor(N/2)."""


class MatrixKind(str, Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    RANDIC = "randic"
    NORMALIZED_LAPLACIAN = "normalized_laplacian"


@dataclass(frozen=True)
class RRLGraph:
    """Validated ring lattice on N vertices, each joined to its m nearest neighbours per side."""

    N: int
    m: int
    theta: float = field(init=False)
    n: int = field(init=False)
    degree: int = field(init=False)

    def __post_init__(self):
        N, m = self.N, self.m
        for name, v in (("N", N), ("m", m)):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {v!r}")
        if N < 4:
            raise AdmissibilityError(f"N out of range: need N >= 4, got N={N}")
        if m < 1:
            raise AdmissibilityError(f"m too small: need m >= 1, got m={m}")
        n = N // 2
        if m >= n:
            raise AdmissibilityError(
                f"m out of range: need m < floor(N/2) = {n}, got m={m}"
            )
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "theta", math.pi / N)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "degree", 2 * int(m))

    def __str__(self):
        return f"C_{self.N}^{self.m}"


def new_rrl(N: int, m: int) -> RRLGraph:
    return RRLGraph(N, m)


def admissible_orders(N: int) -> range:
    """All m with 1 <= m < floor(N/2)."""
    return range(1, N // 2)


def admissible_pairs(N_min: int, N_max: int):
    for N in range(max(N_min, 4), N_max + 1):
        for m in admissible_orders(N):
            yield N, m


def generator_vector(g: RRLGraph) -> np.ndarray:
    """First row of the adjacency matrix: ones at offsets +-1..+-m (0-based index 0 is the vertex itself)."""
    w = np.zeros(g.N, dtype=np.int64)
    w[1 : g.m + 1] = 1
    w[g.N - g.m :] = 1
    return w


def cyclic_permutation(w, j: int) -> np.ndarray:
    """Shift ``w`` right by ``j`` places, i.e. row j+1 of the circulant generated by ``w``."""
    w = np.asarray(w)
    return np.roll(w, j % len(w))


@dataclass(frozen=True)
class CirculantMatrix:
    generator: np.ndarray
    kind: MatrixKind

    @property
    def N(self) -> int:
        return len(self.generator)

    def row(self, h: int) -> np.ndarray:
        """Row h, 1-based."""
        return cyclic_permutation(self.generator, h - 1)


def matrix_view(g: RRLGraph, kind) -> CirculantMatrix:
    kind = MatrixKind(kind)
    w = generator_vector(g).astype(float)
    d = g.degree
    if kind is MatrixKind.ADJACENCY:
        gen = w
    elif kind is MatrixKind.LAPLACIAN:
        gen = -w
        gen[0] = d
    elif kind is MatrixKind.RANDIC:
        gen = w / d
    else:
        gen = -w / d
        gen[0] = 1.0
    gen.setflags(write=False)
    return CirculantMatrix(gen, kind)


@dataclass(frozen=True)
class PropertyReport:
    """Table of closed-form topological quantities.

    ``*_paper`` fields are the published formulas, not exhaustive searches;
    see :mod:`rrl.oracle` for exact counterparts.
    """

    edges: int
    volume: int
    chromatic_paper: int
    diameter: int
    radius: int
    girth_paper: int
    circumference: int
    bipartite: bool
    eulerian: bool
    hamiltonian: bool
    periphery_is_all: bool
    center_is_all: bool


def basic_properties(g: RRLGraph) -> PropertyReport:
    N, m, n = g.N, g.m, g.n
    chromatic = m + 1 + (N % (m + 1))
    ecc = -(-n // m)
    return PropertyReport(
        edges=m * N,
        volume=2 * m * N,
        chromatic_paper=chromatic,
        diameter=ecc,
        radius=ecc,
        girth_paper=-(-N // m),
        circumference=N,
        bipartite=chromatic == 2,
        # every vertex has even degree 2m and the ring C_N is a spanning cycle
        eulerian=True,
        hamiltonian=True,
        periphery_is_all=True,
        center_is_all=True,
    )
