"""Closed-form spectra and extremal indices of ring lattices.

Every eigenvalue is an affine image of D_m(2*theta*j):

    adjacency   2 (D - 1/2)
    laplacian   1 + 2 (m - D)
    randic      (D - 1/2) / m
    normalized  1 - (D - 1/2) / m

Index conventions are 0-based in j, exactly as j appears in the formulas.
Quantities that rest on unproven conjectures carry a ``_conjectured`` suffix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import dirichlet
from .core import MatrixKind, RRLGraph

# Absolute tolerance on kernel values for argmin/argmax ties.
TIE_TOL = 1e-12


def _check_index(g: RRLGraph, j: int) -> int:
    if not 0 <= j < g.N:
        raise IndexError(f"eigen-index j={j} outside 0..{g.N - 1}")
    return int(j)


def _angles(N: int, j) -> np.ndarray:
    # fold j and N-j onto the same angle so the spectrum is exactly symmetric
    j = np.asarray(j)
    jf = np.minimum(j % N, (N - j) % N)
    return 2.0 * math.pi * jf / N


def kernel_at(g: RRLGraph, j):
    """D_m(2 theta j)."""
    return dirichlet.kernel(g.m, _angles(g.N, j))


def kernel_row(g: RRLGraph) -> np.ndarray:
    """D_m(2 theta j) for j = 0..N-1."""
    return dirichlet.kernel(g.m, _angles(g.N, np.arange(g.N)))


def _from_kernel(kind: MatrixKind, m, D):
    if kind is MatrixKind.ADJACENCY:
        return 2.0 * (D - 0.5)
    if kind is MatrixKind.LAPLACIAN:
        return 1.0 + 2.0 * (m - D)
    if kind is MatrixKind.RANDIC:
        return (D - 0.5) / m
    return 1.0 - (D - 0.5) / m


def laplacian_eigenvalue(g: RRLGraph, j: int) -> float:
    _check_index(g, j)
    return float(_from_kernel(MatrixKind.LAPLACIAN, g.m, kernel_at(g, j)))


def adjacency_eigenvalue(g: RRLGraph, j: int) -> float:
    _check_index(g, j)
    return float(_from_kernel(MatrixKind.ADJACENCY, g.m, kernel_at(g, j)))


def randic_eigenvalue(g: RRLGraph, j: int) -> float:
    _check_index(g, j)
    return float(_from_kernel(MatrixKind.RANDIC, g.m, kernel_at(g, j)))


def normalized_laplacian_eigenvalue(g: RRLGraph, j: int) -> float:
    _check_index(g, j)
    return float(_from_kernel(MatrixKind.NORMALIZED_LAPLACIAN, g.m, kernel_at(g, j)))


def randic_eigenvalue_product(g: RRLGraph, j: int) -> float:
    """Randic eigenvalue via sin(m t) cos((m+1) t) / (m sin t), t = theta j."""
    _check_index(g, j)
    if j == 0:
        return 1.0
    t = g.theta * j
    return math.sin(g.m * t) * math.cos((g.m + 1) * t) / (g.m * math.sin(t))


@dataclass(frozen=True)
class SpectrumReport:
    matrix_kind: MatrixKind
    values: np.ndarray
    symmetric_pairs: list

    @property
    def N(self) -> int:
        return len(self.values)


def full_spectrum(g: RRLGraph, kind=MatrixKind.LAPLACIAN) -> SpectrumReport:
    kind = MatrixKind(kind)
    values = _from_kernel(kind, g.m, kernel_row(g))
    values.setflags(write=False)
    pairs = [(j, g.N - j) for j in range(1, g.n + 1) if j != g.N - j]
    return SpectrumReport(kind, values, pairs)


def fiedler_value(g: RRLGraph) -> float:
    return laplacian_eigenvalue(g, 1)


def _principal_argmin(values: np.ndarray, tol: float = TIE_TOL):
    """First index attaining min(values) within ``tol``, plus all tied indices. Works row-wise."""
    lo = values.min(axis=-1, keepdims=True)
    ties = values <= lo + tol
    return np.argmax(ties, axis=-1), ties


def spectral_radius_index(g: RRLGraph) -> int:
    """Principal minimiser j* of D_m(2 theta j) over j = 2..n."""
    D = kernel_at(g, np.arange(2, g.n + 1))
    first, _ = _principal_argmin(D)
    return int(first) + 2


def spectral_radius(g: RRLGraph) -> float:
    return laplacian_eigenvalue(g, spectral_radius_index(g))


def _b2(theta):
    return math.acos(-0.25) / (2 * theta)


def _b3(theta):
    return math.acos((math.sqrt(7) - 1) / 6) / (2 * theta)


def _checked_acos(arg: float) -> float:
    assert -1.0 <= arg <= 1.0, f"arccos argument {arg} outside [-1, 1]"
    return math.acos(arg)


def _b4(theta):
    a = 4 * math.atan(1 / math.sqrt(5))
    lo = _checked_acos((6 * math.cos((a - math.pi) / 3) - 1) / 8)
    hi = _checked_acos((-6 * math.cos(a / 3) - 1) / 8)
    return lo / (2 * theta), hi / (2 * theta)


def _b5(theta):
    a = math.atan(math.sqrt(55) / 11)
    r11 = math.sqrt(11)
    b1 = math.sqrt(r11 - 5 * math.cos((a + math.pi) / 3))
    b2 = math.sqrt(r11 - 5 * math.cos((a - math.pi) / 3))
    b3 = math.sqrt(r11 + 5 * math.cos(a / 3))
    q = 11 ** 0.25
    lo = _checked_acos((q * (b1 + b2 + b3) - 1) / 10)
    hi = _checked_acos((q * (b1 - b2 - b3) - 1) / 10)
    return lo / (2 * theta), hi / (2 * theta)


def _floor_ceil(*bs) -> frozenset:
    out = set()
    for b in bs:
        out.update((math.floor(b), math.ceil(b)))
    return frozenset(out)


class NoClosedForm(ValueError):
    pass


def closed_form_jstar_candidates(g: RRLGraph) -> frozenset:
    """Candidate set for j* from the explicit cases m in {1..5} and m = n-1."""
    m, n, th = g.m, g.n, g.theta
    if m == n - 1:
        return frozenset({2})
    if m == 1:
        return frozenset({n})
    if m == 2:
        return _floor_ceil(_b2(th))
    if m == 3:
        return _floor_ceil(_b3(th))
    if m == 4:
        return _floor_ceil(*_b4(th))
    if m == 5:
        return _floor_ceil(*_b5(th))
    raise NoClosedForm(f"no closed form for 6 <= m <= n-2 (m={m}, n={n})")


def jstar_lower_bound(g: RRLGraph) -> int:
    return 1 + g.N // (2 * g.m + 1)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def jstar_upper_bound_conjectured(g: RRLGraph) -> int:
    # ceil(3N/(4m+2) - 1/2) == ceil((3N - 2m - 1) / (4m + 2)), exact in integers
    return _ceil_div(3 * g.N - 2 * g.m - 1, 4 * g.m + 2)


@dataclass(frozen=True)
class EstimatorConfig:
    alpha: float = 0.1313

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")


def jstar_estimate_conjectured(g: RRLGraph, cfg: EstimatorConfig = EstimatorConfig()) -> int:
    """Direct estimate of j*, clamped to [lower bound, conjectured upper bound]."""
    m, n, th = g.m, g.n, g.theta
    lo = jstar_lower_bound(g)
    hi = jstar_upper_bound_conjectured(g)
    if m == 1:
        est = n
    elif m == n - 1:
        est = 2
    elif m == 2:
        est = math.ceil(_b2(th) - 0.5)
    elif m == 3:
        est = math.ceil(_b3(th) - 0.5)
    elif m == 4:
        est = math.ceil(_b4(th)[0] - 0.5)
    elif m == 5:
        est = math.ceil(_b5(th)[0] - 0.5)
    else:
        est = math.floor(cfg.alpha * lo + (1 - cfg.alpha) * hi + 0.5)
    return max(lo, min(hi, est))


def m_tilde(N: int) -> float:
    """Order above which the conjectured upper bound collapses to 2: 3N/10 - 1/2."""
    return (3 * N - 5) / 10


@dataclass(frozen=True)
class CubicSolution:
    a2: float
    a1: float
    a0: float
    q: float
    r: float
    discriminant: float
    root: float
    cardano_root: float = field(default=float("nan"))

    def residual(self, x: float | None = None) -> float:
        x = self.root if x is None else x
        return ((x + self.a2) * x + self.a1) * x + self.a0


class NumericalFailure(RuntimeError):
    pass


def _polish_root(s: float, x0: float) -> float:
    # Newton on y = 1 - x with coefficients built from s = 1 - cos(2 theta); the
    # cubic has a near-triple root at x = 1 as N grows, where the x-form cancels.
    b2 = -s / 2
    b1 = -s * (7 - 4 * s) / 8
    b0 = -s * (2 - s) / 16
    y = 1.0 - x0
    for _ in range(8):
        f = ((y + b2) * y + b1) * y + b0
        df = (3 * y + 2 * b2) * y + b1
        if df == 0:
            break
        step = f / df
        y -= step
        if abs(step) <= 1e-17 * max(abs(y), 1e-300):
            break
    return 1.0 - y


def m_star(N: int):
    """Threshold m* = arcsin(sqrt(x*)) / theta with x* the root in (0, 1) of the cubic p_theta.

    Returns ``(m_star, CubicSolution)``.
    """
    if N < 4:
        raise ValueError("m_star needs N >= 4")
    theta = math.pi / N
    c = math.cos(2 * theta)
    s = 2 * math.sin(theta) ** 2
    a2 = -(c + 5) / 2
    a1 = (4 * c * c + 7 * c + 13) / 8
    a0 = -((3 * c + 1) ** 2) / 16
    q = a1 / 3 - a2 * a2 / 9
    r = (a1 * a2 - 3 * a0) / 6 - a2 ** 3 / 27
    # factored discriminant, nonnegative by construction
    disc = 7 * s * (s * (2 - s)) * (c + 13 / 14) / 1728 * (c - 0.5) ** 2
    if N == 6:
        x_card = 0.25
        x = 0.25
    else:
        sq = math.sqrt(disc)
        x_card = -a2 / 3 + float(np.cbrt(r + sq)) + float(np.cbrt(r - sq))
        x = _polish_root(s, x_card)
    sol = CubicSolution(a2, a1, a0, q, r, disc, x, x_card)
    if not 0.0 < x < 1.0:
        raise NumericalFailure(f"cubic root {x!r} outside (0, 1) for N={N}")
    if abs(sol.residual()) > 1e-8:
        raise NumericalFailure(f"cubic residual {sol.residual():g} too large for N={N}")
    return math.asin(math.sqrt(x)) / theta, sol


def essential_spectral_radius(g: RRLGraph) -> float:
    """sigma(R) = max(lambda_1^R, -lambda_{j*}^R)."""
    return max(randic_eigenvalue(g, 1), -randic_eigenvalue(g, spectral_radius_index(g)))


def gamma_index(g: RRLGraph):
    """Index in 1..n attaining sigma(R) = |lambda_gamma^R|, with the full tie set.

    This is the arg max of |D_m(2 theta j) - 1/2|: the largest Randic eigenvalue
    modulus off the trivial one.
    """
    D = kernel_at(g, np.arange(1, g.n + 1))
    first, ties = _principal_argmin(-np.abs(D - 0.5))
    return int(first) + 1, frozenset(int(j) + 1 for j in np.flatnonzero(ties))


def _gamma_rule(N: int, m: int, threshold: float) -> int:
    n = N // 2
    if N >= 8 and m == 1:
        return n
    if (N in (6, 7) and m == 1) or (N in (9, 10) and m == 2):
        return 3
    if m >= min(n - 1, threshold):
        return 2
    return 1


def gamma_threshold(N: int) -> float:
    """max(m*, m~), the order above which gamma is conjectured to be 2."""
    return max(m_star(N)[0], m_tilde(N))


def gamma_conjectured(g: RRLGraph) -> int:
    """Conjectured gamma from the main case table (no supplementary ties)."""
    return _gamma_rule(g.N, g.m, gamma_threshold(g.N))


def gamma_supplementary_claims(g: RRLGraph) -> frozenset:
    """Extra indices the conjecture says also attain sigma(R) (always {1} or empty).

    Cases: odd N with m = 1; m equal to max(m*, m~); (N, m) = (10, 2); even N with m = n-1.
    """
    return _supplementary_rule(g.N, g.m, gamma_threshold(g.N))


def _supplementary_rule(N: int, m: int, threshold: float) -> frozenset:
    n = N // 2
    hit = (
        (N % 2 == 1 and N >= 5 and m == 1)
        or m == threshold
        or (N == 10 and m == 2)
        or (N % 2 == 0 and m == n - 1)
    )
    return frozenset({1}) if hit else frozenset()


@dataclass(frozen=True)
class ExtremalReport:
    fiedler: float
    spectral_radius: float
    j_star: int
    j_lower: int
    j_upper_conjectured: int
    j_star_estimate_conjectured: int
    gamma: int
    gamma_ties: frozenset
    gamma_conjectured: int
    sigma: float
    m_star: float
    m_tilde: float


def extremal_report(g: RRLGraph, cfg: EstimatorConfig = EstimatorConfig()) -> ExtremalReport:
    gamma, ties = gamma_index(g)
    return ExtremalReport(
        fiedler=fiedler_value(g),
        spectral_radius=spectral_radius(g),
        j_star=spectral_radius_index(g),
        j_lower=jstar_lower_bound(g),
        j_upper_conjectured=jstar_upper_bound_conjectured(g),
        j_star_estimate_conjectured=jstar_estimate_conjectured(g, cfg),
        gamma=gamma,
        gamma_ties=ties,
        gamma_conjectured=gamma_conjectured(g),
        sigma=essential_spectral_radius(g),
        m_star=m_star(g.N)[0],
        m_tilde=m_tilde(g.N),
    )


@dataclass(frozen=True)
class ExtremalTable:
    """Extremal quantities for every admissible m at a fixed N, as arrays indexed by m - 1."""

    N: int
    m: np.ndarray
    j_star: np.ndarray
    j_lower: np.ndarray
    j_upper_conjectured: np.ndarray
    gamma: np.ndarray
    gamma_ties: list
    gamma_conjectured: np.ndarray
    fiedler: np.ndarray
    spectral_radius: np.ndarray
    sigma: np.ndarray
    lambda1_randic: np.ndarray
    lambda2_randic: np.ndarray


def extremal_table(N: int) -> ExtremalTable:
    """Vectorised extremal quantities for all m = 1..n-1 at once.

    Uses the same kernel evaluations and tie rules as the per-graph functions.
    """
    n = N // 2
    ms = np.arange(1, n)
    js = np.arange(0, n + 1)
    D = dirichlet.kernel(ms[:, None], _angles(N, js)[None, :])
    first, _ = _principal_argmin(D[:, 2:])
    j_star = first + 2
    g_first, g_ties = _principal_argmin(-np.abs(D[:, 1:] - 0.5))
    gamma = g_first + 1
    rows = np.arange(len(ms))
    D1 = D[:, 1]
    Dj = D[rows, j_star]
    fiedler = 1.0 + 2.0 * (ms - D1)
    rho = 1.0 + 2.0 * (ms - Dj)
    lam1 = (D1 - 0.5) / ms
    lam2 = (D[:, 2] - 0.5) / ms
    sigma = np.maximum(lam1, -(Dj - 0.5) / ms)
    j_lower = 1 + N // (2 * ms + 1)
    j_upper = -((-(3 * N - 2 * ms - 1)) // (4 * ms + 2))
    thr = gamma_threshold(N) if n > 1 else math.inf
    gamma_pred = np.array([_gamma_rule(N, int(m), thr) for m in ms], dtype=np.int64)
    ties = [frozenset((np.flatnonzero(t) + 1).tolist()) for t in g_ties]
    return ExtremalTable(
        N=N,
        m=ms,
        j_star=j_star,
        j_lower=j_lower,
        j_upper_conjectured=j_upper,
        gamma=gamma,
        gamma_ties=ties,
        gamma_conjectured=gamma_pred,
        fiedler=fiedler,
        spectral_radius=rho,
        sigma=sigma,
        lambda1_randic=lam1,
        lambda2_randic=lam2,
    )
