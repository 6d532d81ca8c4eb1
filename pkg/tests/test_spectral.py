import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from rrl import oracle, spectral as sp
from rrl.core import MatrixKind, RRLGraph, admissible_pairs, matrix_view


@st.composite
def graphs(draw, n_max=300):
    N = draw(st.integers(4, n_max))
    m = draw(st.integers(1, N // 2 - 1))
    return RRLGraph(N, m)


def argmin_scan(values, lo=2):
    """Principal argmin over indices lo..n of a 0-based array, by plain loop."""
    best = lo
    for j in range(lo, len(values)):
        if values[j] < values[best] - 1e-12:
            best = j
    return best


def dense_laplacian(g):
    return oracle.dense_symmetric_eigenvalues(oracle.materialize(matrix_view(g, MatrixKind.LAPLACIAN)))


# --- single eigenvalues ------------------------------------------------------


def test_laplacian_eigenvalue_examples():
    g = RRLGraph(4, 1)
    assert sp.laplacian_eigenvalue(g, 0) == 0
    assert sp.laplacian_eigenvalue(g, 1) == pytest.approx(2, abs=1e-12)
    assert sp.laplacian_eigenvalue(RRLGraph(6, 1), 3) == pytest.approx(4, abs=1e-12)


def test_adjacency_eigenvalue_examples():
    g = RRLGraph(4, 1)
    assert sp.adjacency_eigenvalue(RRLGraph(12, 3), 0) == 6
    assert sp.adjacency_eigenvalue(g, 1) == pytest.approx(0, abs=1e-12)
    assert sp.adjacency_eigenvalue(g, 2) == pytest.approx(-2, abs=1e-12)


def test_randic_eigenvalue_examples():
    assert sp.randic_eigenvalue(RRLGraph(20, 4), 0) == 1
    assert sp.randic_eigenvalue(RRLGraph(9, 2), 3) == pytest.approx(-0.5, abs=1e-12)
    assert sp.randic_eigenvalue(RRLGraph(10, 2), 1) == pytest.approx(math.sqrt(5) / 4, abs=1e-12)


def test_index_out_of_range():
    g = RRLGraph(8, 2)
    for j in (-1, 8):
        with pytest.raises(IndexError):
            sp.laplacian_eigenvalue(g, j)


@given(graphs(), st.data())
def test_product_form_matches_kernel_form(g, data):
    j = data.draw(st.integers(1, g.N - 1))
    assert abs(sp.randic_eigenvalue_product(g, j) - sp.randic_eigenvalue(g, j)) <= 1e-12


# --- full spectra ------------------------------------------------------------


def test_full_spectrum_small():
    v = sp.full_spectrum(RRLGraph(4, 1), MatrixKind.LAPLACIAN).values
    assert np.allclose(v, [0, 2, 4, 2], atol=1e-12)


@given(graphs())
def test_consistency_chain_and_symmetry(g):
    d = g.degree
    L = sp.full_spectrum(g, "laplacian").values
    A = sp.full_spectrum(g, "adjacency").values
    R = sp.full_spectrum(g, "randic").values
    NL = sp.full_spectrum(g, "normalized_laplacian").values
    assert np.max(np.abs(L - (d - A))) <= 1e-12
    assert np.max(np.abs(L - d * (1 - R))) <= 1e-12
    assert np.max(np.abs(L - d * NL)) <= 1e-12
    for v in (L, A, R, NL):
        assert np.max(np.abs(v[1:] - v[1:][::-1])) <= 1e-12
    assert L[0] == 0 and np.all((L >= -1e-12) & (L <= 4 * g.m + 1e-12))
    assert R[0] == 1 and np.all(np.abs(R) <= 1 + 1e-12)


@settings(max_examples=40)
@given(graphs(120))
def test_spectra_match_dft_oracle(g):
    for kind in MatrixKind:
        closed = sp.full_spectrum(g, kind)
        dft = oracle.circulant_spectrum_dft(matrix_view(g, kind).generator)
        assert oracle.compare_spectra(closed, dft, 1e-9).ok


def test_symmetric_pairs_listed():
    rep = sp.full_spectrum(RRLGraph(9, 2), "randic")
    assert (1, 8) in rep.symmetric_pairs
    assert rep.N == 9


# --- extremal eigenvalues ----------------------------------------------------


def test_fiedler_examples():
    assert sp.fiedler_value(RRLGraph(6, 2)) == pytest.approx(4, abs=1e-12)
    assert sp.fiedler_value(RRLGraph(4, 1)) == pytest.approx(2, abs=1e-12)


def test_spectral_radius_examples():
    assert sp.spectral_radius(RRLGraph(6, 1)) == pytest.approx(4, abs=1e-12)
    assert sp.spectral_radius(RRLGraph(5, 1)) == pytest.approx(2 - 2 * math.cos(4 * math.pi / 5), abs=1e-12)


def test_fiedler_and_radius_against_dense_oracle():
    for N, m in admissible_pairs(4, 48):
        g = RRLGraph(N, m)
        ev = dense_laplacian(g)
        assert abs(sp.fiedler_value(g) - ev[1]) <= 1e-9
        assert abs(sp.spectral_radius(g) - ev[-1]) <= 1e-9


def test_fiedler_strictly_minimal_off_the_equality_case():
    # when 2m = N - 2 every odd j gives the eigenvalue 2m, so ties are expected
    for N, m in admissible_pairs(4, 150):
        g = RRLGraph(N, m)
        L = sp.full_spectrum(g).values
        if 2 * m == N - 2:
            assert np.all(L[1] <= L[2 : g.n + 1] + 1e-12)
            assert L[1] == pytest.approx(2 * m, abs=1e-12)
        else:
            assert np.all(L[1] < L[2 : g.n + 1])


def test_spectral_radius_index_examples():
    assert sp.spectral_radius_index(RRLGraph(67, 2)) == 19
    assert sp.spectral_radius_index(RRLGraph(8, 3)) == 2
    for N in range(4, 40, 2):
        assert sp.spectral_radius_index(RRLGraph(N, 1)) == N // 2


def test_spectral_radius_index_matches_scan():
    for N, m in admissible_pairs(4, 150):
        g = RRLGraph(N, m)
        D = sp.kernel_row(g)
        assert sp.spectral_radius_index(g) == argmin_scan(D[: g.n + 1])


def test_principal_argmin_reports_ties():
    first, ties = sp._principal_argmin(np.array([3.0, 1.0, 1.0 + 1e-13, 2.0]))
    assert first == 1
    assert np.flatnonzero(ties).tolist() == [1, 2]


# --- closed-form candidates and bounds ----------------------------------------


def test_candidates_examples():
    g = RRLGraph(67, 2)
    b2 = math.acos(-0.25) * 67 / (2 * math.pi)
    assert sp.closed_form_jstar_candidates(g) == frozenset({math.floor(b2), math.ceil(b2)}) == {19, 20}
    assert sp.closed_form_jstar_candidates(RRLGraph(20, 9)) == {2}
    g = RRLGraph(30, 3)
    b3 = math.acos((math.sqrt(7) - 1) / 6) * 30 / (2 * math.pi)
    c = sp.closed_form_jstar_candidates(g)
    assert c == {math.floor(b3), math.ceil(b3)}
    assert sp.spectral_radius_index(g) in c


def test_candidates_unavailable_for_large_orders():
    with pytest.raises(sp.NoClosedForm):
        sp.closed_form_jstar_candidates(RRLGraph(40, 6))


def test_candidates_contain_true_index():
    for N, m in admissible_pairs(4, 500):
        if m <= 5 or m == N // 2 - 1:
            g = RRLGraph(N, m)
            assert sp.spectral_radius_index(g) in sp.closed_form_jstar_candidates(g), (N, m)


def test_lower_bound_examples():
    assert sp.jstar_lower_bound(RRLGraph(67, 2)) == 14
    assert sp.jstar_lower_bound(RRLGraph(10, 1)) == 4


def test_upper_bound_examples():
    assert sp.jstar_upper_bound_conjectured(RRLGraph(67, 2)) == 20
    for N in range(4, 60):
        assert sp.jstar_upper_bound_conjectured(RRLGraph(N, 1)) == N // 2
        for m in range(1, N // 2):
            if m >= sp.m_tilde(N):
                assert sp.jstar_upper_bound_conjectured(RRLGraph(N, m)) == 2


def test_upper_bound_is_exact_integer_ceiling():
    for N, m in admissible_pairs(4, 300):
        ref = math.ceil(mpmath.mpf(3 * N) / (4 * m + 2) - mpmath.mpf(1) / 2)
        assert sp.jstar_upper_bound_conjectured(RRLGraph(N, m)) == int(ref)


def test_estimator_examples():
    assert sp.jstar_estimate_conjectured(RRLGraph(30, 1)) == 15
    assert sp.jstar_estimate_conjectured(RRLGraph(30, 14)) == 2
    g = RRLGraph(200, 10)
    lo, hi = sp.jstar_lower_bound(g), sp.jstar_upper_bound_conjectured(g)
    assert sp.jstar_estimate_conjectured(g) == math.floor(0.1313 * lo + 0.8687 * hi + 0.5)


def test_estimator_config_validates():
    with pytest.raises(ValueError):
        sp.EstimatorConfig(alpha=1.5)


@given(graphs(400))
def test_estimator_within_window(g):
    est = sp.jstar_estimate_conjectured(g)
    assert sp.jstar_lower_bound(g) <= est <= sp.jstar_upper_bound_conjectured(g)


# --- thresholds ----------------------------------------------------------------


def test_m_tilde_examples():
    assert sp.m_tilde(5) == 1
    assert sp.m_tilde(10) == 2.5
    assert sp.m_tilde(20) == 5.5


def test_m_star_examples():
    ms, sol = sp.m_star(6)
    assert abs(ms - 1) <= 1e-12 and sol.root == 0.25
    assert sp.m_star(10)[0] == pytest.approx(2.5330, abs=1e-3)


def test_m_star_n4_against_bisection():
    _, sol = sp.m_star(4)
    assert (sol.a2, sol.a1, sol.a0) == pytest.approx((-2.5, 13 / 8, -1 / 16), abs=1e-15)
    ref = brentq(lambda x: ((x - 2.5) * x + 13 / 8) * x - 1 / 16, 1e-9, 1 - 1e-9, xtol=1e-15)
    assert abs(sol.root - ref) <= 1e-10


@pytest.mark.parametrize("N", [4, 5, 7, 11, 50, 333, 2000, 10000])
def test_m_star_against_high_precision(N):
    mpmath.mp.dps = 50
    th = mpmath.pi / N
    c = mpmath.cos(2 * th)
    p = lambda x: x**3 - (c + 5) / 2 * x**2 + (4 * c**2 + 7 * c + 13) / 8 * x - (3 * c + 1) ** 2 / 16
    ms, sol = sp.m_star(N)
    x = mpmath.findroot(p, sol.root)
    assert abs(sol.root - float(x)) <= 1e-12
    assert abs(ms - float(mpmath.asin(mpmath.sqrt(x)) / th)) <= 1e-9 * max(1, ms)


def test_cubic_invariants():
    for N in range(4, 1500):
        _, sol = sp.m_star(N)
        assert sol.discriminant >= 0
        assert 0 < sol.root < 1
        assert abs(sol.residual()) <= 1e-10


def test_lemma_property_above_threshold():
    for N in range(4, 300):
        ms = sp.m_star(N)[0]
        for m in range(math.ceil(ms), N // 2):
            g = RRLGraph(N, m)
            assert sp.randic_eigenvalue(g, 1) + sp.randic_eigenvalue(g, 2) <= 1e-12


# --- sigma and gamma --------------------------------------------------------


def test_sigma_examples():
    assert sp.essential_spectral_radius(RRLGraph(10, 2)) == pytest.approx(math.sqrt(5) / 4, abs=1e-12)
    assert sp.essential_spectral_radius(RRLGraph(9, 2)) == pytest.approx(0.5, abs=1e-12)
    assert sp.essential_spectral_radius(RRLGraph(6, 1)) == pytest.approx(1, abs=1e-12)


def test_sigma_is_second_largest_modulus_of_dense_randic():
    for N, m in admissible_pairs(4, 40):
        g = RRLGraph(N, m)
        ev = oracle.dense_symmetric_eigenvalues(oracle.materialize(matrix_view(g, "randic")))
        mods = np.sort(np.abs(ev))
        assert abs(sp.essential_spectral_radius(g) - mods[-2]) <= 1e-9


def test_gamma_examples():
    assert sp.gamma_index(RRLGraph(9, 2)) == (3, frozenset({3}))
    assert sp.gamma_index(RRLGraph(10, 2)) == (1, frozenset({1, 3}))
    for N in range(4, 40, 2):
        n = N // 2
        assert sp.gamma_index(RRLGraph(N, 1)) == (n, frozenset({n}))


def test_gamma_conjectured_examples():
    assert sp.gamma_conjectured(RRLGraph(9, 2)) == 3
    assert sp.gamma_conjectured(RRLGraph(12, 1)) == 6
    assert sp.gamma_conjectured(RRLGraph(10, 4)) == 2
    assert sp.gamma_supplementary_claims(RRLGraph(10, 4)) == {1}


def test_gamma_in_one_or_jstar():
    for N, m in admissible_pairs(4, 200):
        g = RRLGraph(N, m)
        assert sp.gamma_index(g)[0] in (1, sp.spectral_radius_index(g))


def test_supplementary_odd_cycle_claim_is_not_a_tie():
    # the rule says gamma = 1 also attains sigma for odd N, m = 1; it does not
    g = RRLGraph(11, 1)
    _, ties = sp.gamma_index(g)
    assert sp.gamma_supplementary_claims(g) == {1}
    assert 1 not in ties


# --- reports ----------------------------------------------------------------


def test_extremal_report_fields():
    r = sp.extremal_report(RRLGraph(67, 2))
    assert (r.j_star, r.j_lower, r.j_upper_conjectured) == (19, 14, 20)
    r = sp.extremal_report(RRLGraph(10, 2))
    assert r.gamma_ties == {1, 3}
    assert r.m_tilde == 2.5


def test_table_matches_reports():
    for N in (4, 9, 10, 31, 64):
        t = sp.extremal_table(N)
        for i, m in enumerate(t.m.tolist()):
            r = sp.extremal_report(RRLGraph(N, m))
            assert t.j_star[i] == r.j_star
            assert t.j_lower[i] == r.j_lower
            assert t.j_upper_conjectured[i] == r.j_upper_conjectured
            assert t.gamma[i] == r.gamma and t.gamma_ties[i] == r.gamma_ties
            assert t.gamma_conjectured[i] == r.gamma_conjectured
            assert t.fiedler[i] == pytest.approx(r.fiedler, abs=1e-12)
            assert t.spectral_radius[i] == pytest.approx(r.spectral_radius, abs=1e-12)
            assert t.sigma[i] == pytest.approx(r.sigma, abs=1e-12)
