import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rrl import dirichlet as dk

orders = st.integers(min_value=0, max_value=40)
angles = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)


def brute(m, x):
    return 0.5 + sum(math.cos(k * x) for k in range(1, m + 1))


def test_upsilon_solves_tan_equation():
    assert math.pi < dk.UPSILON < 1.5 * math.pi
    assert abs(math.tan(dk.UPSILON) - dk.UPSILON) <= 1e-12


@pytest.mark.parametrize(
    "m, x, expected",
    [(3, 0.0, 3.5), (1, math.pi, -0.5), (2, 2 * math.pi / 5, 0.0), (0, 1.234, 0.5), (2, 0.0, 2.5)],
)
def test_kernel_values(m, x, expected):
    assert dk.kernel(m, x) == pytest.approx(expected, abs=1e-12)


def test_kernel_exact_at_singular_points():
    for m in range(8):
        for ell in (-3, -1, 0, 1, 2, 5):
            assert dk.kernel(m, 2 * math.pi * ell) == m + 0.5


def test_cos_sum_agrees_with_ratio_form():
    assert abs(dk.kernel(5, 1.0) - dk.kernel_cos_sum(5, 1.0)) <= 1e-10
    assert dk.kernel_cos_sum(0, 0.3) == 0.5


def test_non_finite_argument_rejected():
    for bad in (math.nan, math.inf, -math.inf):
        with pytest.raises(ValueError):
            dk.kernel(2, bad)


def test_negative_order_rejected():
    with pytest.raises(ValueError):
        dk.kernel(-1, 0.5)


def test_vectorised_matches_scalar():
    x = np.linspace(-7, 7, 101)
    v = dk.kernel(4, x)
    assert isinstance(v, np.ndarray)
    assert np.allclose(v, [dk.kernel(4, float(t)) for t in x], atol=1e-14)


@given(orders, angles)
def test_matches_brute_force_sum(m, x):
    assert abs(dk.kernel(m, x) - brute(m, x)) <= 1e-10


@given(orders, st.floats(min_value=-1e-7, max_value=1e-7))
def test_accurate_near_singularity(m, eps):
    for ell in (0, 1, -2):
        x = 2 * math.pi * ell + eps
        assert abs(dk.kernel(m, x) - dk.kernel_cos_sum(m, x)) <= 1e-10


def test_derivative_zero_cases():
    assert dk.derivative(2, 0.0) == 0.0
    assert abs(dk.derivative(2, math.acos(-0.25))) <= 1e-12


@given(st.integers(1, 20), st.floats(-10, 10))
def test_derivative_matches_finite_difference(m, x):
    h = 1e-6
    fd = (dk.kernel(m, x + h) - dk.kernel(m, x - h)) / (2 * h)
    assert abs(dk.derivative(m, x) - fd) <= 1e-5


def test_derivative_needs_positive_order():
    with pytest.raises(ValueError):
        dk.derivative(0, 1.0)


def test_zeros_small_orders():
    assert np.allclose(dk.zeros(1), [2 * math.pi / 3, 4 * math.pi / 3])
    assert np.allclose(dk.zeros(2), [2 * math.pi * k / 5 for k in (1, 2, 3, 4)])


@pytest.mark.parametrize("m", range(1, 21))
def test_zeros_are_zeros_and_signs_alternate(m):
    z = dk.zeros(m)
    assert len(z) == 2 * m
    assert np.all(np.diff(z) > 0) and z[0] > 0 and z[-1] < 2 * math.pi
    assert np.max(np.abs(dk.kernel(m, z))) <= 1e-10
    mids = 0.5 * (z[:-1] + z[1:])
    vals = dk.kernel(m, mids)
    assert np.all(vals[0::2] < 0)
    assert np.all(vals[1::2] > 0)


@pytest.mark.parametrize("m", range(1, 21))
def test_global_min_location_inside_first_trough(m):
    z = dk.zeros(m)
    approx = dk.global_min_location_approx(m)
    exact = dk.global_min_location(m)
    assert z[0] < approx < z[1]
    assert z[0] < exact < z[1]
    grid = np.linspace(1e-3, 2 * math.pi - 1e-3, 20001)
    assert dk.kernel(m, exact) <= dk.kernel(m, grid).min() + 1e-12


def test_order_one_and_two_minimum_landmarks():
    assert dk.global_min_location_approx(1) == pytest.approx(2 * dk.UPSILON / 3)
    assert dk.global_min_location_approx(2) == pytest.approx(1.79736, abs=1e-5)
    grid = np.linspace(0, 2 * math.pi, 10_000, endpoint=False)[1:]
    assert dk.kernel(2, math.acos(-0.25)) <= dk.kernel(2, grid).min() + 1e-15
    assert dk.global_min_location(2) == pytest.approx(math.acos(-0.25), abs=1e-12)


@settings(max_examples=200)
@given(orders, angles)
def test_periodic_even_bounded(m, x):
    v = dk.kernel(m, x)
    assert abs(v - dk.kernel(m, x + 2 * math.pi)) <= 1e-10
    assert abs(v - dk.kernel(m, -x)) <= 1e-12
    assert abs(v) <= m + 0.5 + 1e-12
