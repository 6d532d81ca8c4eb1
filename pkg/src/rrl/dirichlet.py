"""Dirichlet kernel D_m(x) = 1/2 + sum_{k=1}^m cos(kx) and its landmarks."""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

# Root of tan(x) = x on (pi, 3pi/2); locates the first global minimum.
UPSILON = 4.493409457909064

# Below this |sin(x/2)| the ratio form is replaced by the cosine sum.
SINGULAR_GUARD = 1e-9

TWO_PI = 2.0 * math.pi


def _check_upsilon() -> None:
    residual = math.tan(UPSILON) - UPSILON
    if not (math.pi < UPSILON < 1.5 * math.pi) or abs(residual) > 1e-12:
        raise RuntimeError(f"upsilon self-check failed: tan(u) - u = {residual:g}")


_check_upsilon()


def _as_order(m):
    m = np.asarray(m)
    if not np.issubdtype(m.dtype, np.integer):
        if not np.all(np.equal(np.mod(m, 1), 0)):
            raise ValueError("kernel order m must be an integer")
        m = m.astype(np.int64)
    if np.any(m < 0):
        raise ValueError("kernel order m must be >= 0")
    return m


def _as_angle(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("x must be finite")
    return x


def _scalar_or_array(out, *inputs):
    if all(np.ndim(a) == 0 for a in inputs):
        return float(out)
    return out


def _reduce(x):
    # Fold into [-pi, pi) so the ratio form never sees x near 2*pi*l with l != 0.
    r = np.remainder(x, TWO_PI)
    return np.where(r >= math.pi, r - TWO_PI, r)


def _cos_sum(m, x):
    m, x = np.broadcast_arrays(m, x)
    out = np.full(x.shape, 0.5)
    kmax = int(m.max()) if m.size else 0
    for k in range(1, kmax + 1):
        out += np.where(k <= m, np.cos(k * x), 0.0)
    return out


def kernel(m, x):
    """Evaluate D_m(x). Broadcasts over ``m`` and ``x``.

    Uses sin((m + 1/2)x) / (2 sin(x/2)) away from x = 2*pi*l and the cosine sum
    near it, so the removable singularity returns m + 1/2 exactly.
    """
    m_arr = _as_order(m)
    x_arr = _as_angle(x)
    xr = _reduce(x_arr)
    m_b, xr_b = np.broadcast_arrays(m_arr, xr)
    half = np.sin(0.5 * xr_b)
    near = np.abs(half) <= SINGULAR_GUARD
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin((m_b + 0.5) * xr_b) / (2.0 * half)
    if np.any(near):
        out = np.where(near, 0.0, out)
        out[near] = _cos_sum(m_b[near], xr_b[near])
    return _scalar_or_array(out, m, x)


def kernel_cos_sum(m, x):
    """D_m(x) through the finite cosine series; the cross-check route."""
    m_arr = _as_order(m)
    x_arr = _as_angle(x)
    return _scalar_or_array(_cos_sum(m_arr, x_arr), m, x)


def derivative(m, x):
    """D'_m(x) = -sum_{k=1}^m k sin(kx)."""
    m_arr = _as_order(m)
    if np.any(m_arr < 1):
        raise ValueError("derivative needs m >= 1")
    x_arr = _as_angle(x)
    m_b, x_b = np.broadcast_arrays(m_arr, x_arr)
    out = np.zeros(x_b.shape)
    for k in range(1, int(m_b.max()) + 1):
        out -= np.where(k <= m_b, k * np.sin(k * x_b), 0.0)
    return _scalar_or_array(out, m, x)


def zeros(m: int) -> np.ndarray:
    """The 2m zeros 2k*pi/(2m+1), k = 1..2m, of D_m on [0, 2*pi)."""
    if m < 1:
        raise ValueError("zeros need m >= 1")
    k = np.arange(1, 2 * m + 1)
    return TWO_PI * k / (2 * m + 1)


def global_min_location_approx(m: int) -> float:
    """Approximate first global minimiser, upsilon * x1 / pi = 2 upsilon / (2m+1)."""
    if m < 1:
        raise ValueError("needs m >= 1")
    return 2.0 * UPSILON / (2 * m + 1)


def global_min_location(m: int) -> float:
    """First global minimiser of D_m, refined numerically inside (x1, x2).

    D_m has exactly one extremum between consecutive zeros, so D'_m changes
    sign once on (x1, x2) and a bracketing root finder is enough.
    """
    z = zeros(m)
    lo, hi = z[0], z[1]
    return brentq(lambda t: derivative(m, t), lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
