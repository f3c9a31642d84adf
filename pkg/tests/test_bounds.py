import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from decaybounds import (ExpEnvelopeParams, FreundParams, ResolventParams,
                         cauchy_catalog, cauchy_entry_bound,
                         cauchy_shifted_bound, demko_bound, demko_constant,
                         eigendecomposition, exp_entry_bound, exp_envelope,
                         freund_resolvent_bound, function_column,
                         invsqrt_closed_bound, laplace_catalog,
                         laplace_entry_bound, laplace_entry_bound_shifted,
                         make_test_matrix, oracle_floor, phi,
                         resolvent_column, spectral_interval)
from reference import expm_column_nonneg, tridiag_entry_mp, tridiag_lambda_min

SLACK = 1.0 - 1e-10


# ---------------------------------------------------------------- envelope

def test_envelope_regime_boundary_takes_the_minimum():
    # at d = 2 rho tau both closed forms are valid; the smaller one wins
    rt, d = 4.0, 8.0
    gauss = 10.0 * math.exp(-d * d / (5.0 * rt))
    tail = 10.0 * math.exp(-rt) / rt * (math.e * rt / d) ** d
    assert exp_envelope(rt, d) == pytest.approx(min(gauss, tail), rel=1e-12)


def test_envelope_trivial_region_is_capped_at_one():
    # d below the Gaussian window: only the trivial bound is available
    assert exp_envelope(4.0, 2.0) == 1.0


def test_envelope_deep_tail_value_and_decrease():
    rt = 1.0
    expect = 10.0 * math.exp(-1.0) * (math.e / 100.0) ** 100
    got = exp_envelope(rt, 100.0)
    assert got == pytest.approx(expect, rel=1e-10)
    assert 0.0 < got < exp_envelope(rt, 99.0)


@given(st.floats(0.25, 50.0), st.floats(0.01, 400.0), st.floats(0.01, 30.0))
def test_envelope_nonincreasing_in_distance(rt, d, step):
    assert exp_envelope(rt, d + step) <= exp_envelope(rt, d) * (1 + 1e-12)


def test_envelope_superexponential_tail_log_concave():
    # in the pure superexponential regime the ratio of consecutive values
    # strictly decreases
    rt = 4.0
    ds = np.arange(10.0, 40.0)
    vals = np.array([exp_envelope(rt, d) for d in ds])
    ratios = vals[1:] / vals[:-1]
    assert np.all(np.diff(ratios) < 0)


def test_envelope_vectorized_over_rho_tau():
    rts = np.array([0.0, 0.5, 2.0, 4.0])
    vec = exp_envelope(rts, 9.0)
    assert vec.shape == (4,)
    for rt, v in zip(rts, vec):
        assert v == exp_envelope(float(rt), 9.0)


def test_phi_guards_diagonal():
    params = ExpEnvelopeParams(rho=1.0, tau=4.0, beta=1)
    with pytest.raises(ValueError):
        phi(params, 0.0)
    assert phi(params, 8.0) == exp_envelope(4.0, 8.0)


# ------------------------------------------------------- exponential bound

def test_exp_bound_shift_invariance():
    m = make_test_matrix("tridiag", 40)
    iv = spectral_interval(m)
    delta = 0.7
    shifted = type(iv)(iv.lambda_min + delta, iv.lambda_max + delta)
    tau = 4.0
    for k in (3, 10, 30):
        b0 = exp_entry_bound(iv, 1, tau, k, 20)
        b1 = exp_entry_bound(shifted, 1, tau, k, 20)
        assert b1 == pytest.approx(b0 * math.exp(-tau * delta), rel=1e-12)


def test_exp_bound_rejects_diagonal():
    iv = spectral_interval(make_test_matrix("tridiag", 10))
    with pytest.raises(ValueError):
        exp_entry_bound(iv, 1, 4.0, 5, 5)


@pytest.mark.parametrize("kind", ["tridiag", "pentadiag"])
def test_exp_bound_dominates_deep_series_oracle(kind):
    # cancellation-free series oracle: valid at every magnitude, so the
    # covered regimes can be checked at every index
    n, tau, t = 200, 4.0, 127
    m = make_test_matrix(kind, n)
    iv = spectral_interval(m)
    col = expm_column_nonneg(m.toarray(), tau, t)
    lo = math.sqrt(4.0 * iv.rho * tau) * m.beta
    checked = 0
    for k in range(1, n + 1):
        if k == t or abs(k - t) < lo:
            continue
        assert exp_entry_bound(iv, m.beta, tau, k, t) >= col[k - 1] * SLACK
        checked += 1
    assert checked > 150


def test_exp_bound_dominates_highprec_analytic_entries():
    # spot checks far below the double-precision floor, against 80-digit
    # analytic eigenpair sums for the tridiagonal test matrix
    n, tau, t = 200, 4.0, 127
    m = make_test_matrix("tridiag", n)
    iv = spectral_interval(m)
    lmin = tridiag_lambda_min(n)
    for k in (87, 67, 47, 27):
        import mpmath as mp
        truth = abs(tridiag_entry_mp(
            n, lambda lam: mp.e ** (-tau * lam), k, t, dps=120))
        bound = exp_entry_bound(iv, 1, tau, k, t)
        assert bound >= truth * SLACK
        assert truth > 0


# ------------------------------------------------------------ Demko bound

def test_demko_zero_for_scaled_identity():
    from decaybounds import banded_from_stencil
    m = banded_from_stencil((0.0, 3.0, 0.0), 6)
    iv = spectral_interval(m)
    assert demko_bound(m, iv, 1, 4) == pytest.approx(0.0, abs=1e-14)


def test_demko_normalization_cancels():
    m = make_test_matrix("tridiag", 60)
    iv = spectral_interval(m)
    q = ResolventParams(iv.lambda_min, iv.lambda_max).q
    for k, t in ((5, 30), (30, 30), (58, 12)):
        direct = demko_constant(iv.lambda_min, iv.lambda_max) * q ** abs(k - t)
        assert demko_bound(m, iv, k, t) == pytest.approx(direct, rel=1e-12)


def test_demko_dominates_inverse_column():
    m = make_test_matrix("tridiag", 200)
    iv = spectral_interval(m)
    inv_col = np.abs(function_column(m, lambda x: 1.0 / x, 127))
    floor = oracle_floor(m, lambda x: 1.0 / x)
    ratios = []
    for k in range(1, 201):
        b = demko_bound(m, iv, k, 127)
        if inv_col[k - 1] >= floor:
            assert b >= inv_col[k - 1] * SLACK
            ratios.append(inv_col[k - 1] / b)
    # sharpness: within two orders of magnitude at the tightest point
    assert 0.01 < max(ratios) <= 1.0


def test_demko_diagonal_dominates():
    m = make_test_matrix("pentadiag", 50)
    iv = spectral_interval(m)
    inv_diag = abs(function_column(m, lambda x: 1.0 / x, 25)[24])
    assert demko_bound(m, iv, 25, 25) >= inv_diag


def test_demko_requires_positive_definite():
    m = make_test_matrix("tridiag", 10)
    iv = type(spectral_interval(m))(-1.0, 2.0)
    with pytest.raises(ValueError):
        demko_bound(m, iv, 1, 5)


# ----------------------------------------------------------- Freund bound

def test_freund_parameters_closed_form():
    p = FreundParams(2.0, 6.0, zeta=0.0)
    assert p.alpha == pytest.approx(2.0)
    assert p.radius == pytest.approx(2.0 + math.sqrt(3.0))


def test_freund_radius_grows_with_shift():
    # the spectrum moves away from the singularity as |zeta| grows, so the
    # decay radius improves and the bound tightens
    p0 = FreundParams(2.0, 6.0, zeta=0.0)
    p3 = FreundParams(2.0, 6.0, zeta=1e3)
    assert p3.radius > p0.radius
    zs = [0.0, 0.5, 1.0, 5.0, 50.0, 1e3]
    radii = [FreundParams(2.0, 6.0, zeta=z).radius for z in zs]
    assert all(r2 > r1 for r1, r2 in zip(radii, radii[1:]))


def test_freund_dominates_resolvent_columns():
    m = make_test_matrix("tridiag", 80)
    iv = spectral_interval(m)
    for zeta in (0.0, 1.0, 10.0):
        col = np.abs(resolvent_column(m, 1j * zeta, 40))
        floor = oracle_floor(m, lambda x: 1.0 / np.abs(x - 1j * zeta))
        for k in range(1, 81):
            if k == 40 or col[k - 1] < floor:
                continue
            assert freund_resolvent_bound(iv, 1, zeta, k, 40) >= col[k - 1] * SLACK


def test_freund_guards():
    iv = spectral_interval(make_test_matrix("tridiag", 10))
    with pytest.raises(ValueError):
        freund_resolvent_bound(iv, 1, 0.0, 3, 3)
    with pytest.raises(ValueError):
        FreundParams(2.0, 2.0, zeta=1.0)


# --------------------------------------------------- resolvent parameters

@given(st.floats(0.1, 10.0), st.floats(0.0, 1000.0))
def test_shifted_kernel_never_worse_than_unshifted(width, shift):
    lmin = 1.0
    base = ResolventParams(lmin, lmin + width, omega=0.0)
    shifted = ResolventParams(lmin, lmin + width, omega=-shift)
    assert shifted.kappa <= base.kappa + 1e-12
    assert shifted.q <= base.q + 1e-12


# ---------------------------------------------------- Laplace-class bound

@pytest.mark.parametrize("fname", ["inv_sqrt", "phi1"])
def test_laplace_bound_dominates_oracle(fname, test_matrix_200):
    m, iv = test_matrix_200
    measure = laplace_catalog(fname)
    col = np.abs(function_column(m, measure.closed_form, 127))
    floor = oracle_floor(m, measure.closed_form)
    for k in range(1, m.n + 1):
        if abs(k - 127) < 2 * m.beta:
            continue
        rep = laplace_entry_bound(iv, m.beta, measure, k, 127)
        assert rep.converged
        if col[k - 1] >= floor:
            assert rep.bound >= col[k - 1] * SLACK


def test_laplace_bound_deep_highprec_spot_checks():
    import mpmath as mp
    n, t = 200, 127
    m = make_test_matrix("tridiag", n)
    iv = spectral_interval(m)
    cases = [
        ("inv_sqrt", lambda lam: 1 / mp.sqrt(lam)),
        ("phi1", lambda lam: (1 - mp.e ** -lam) / lam),
    ]
    for fname, f_mp in cases:
        measure = laplace_catalog(fname)
        for k in (97, 67, 37):
            truth = abs(tridiag_entry_mp(n, f_mp, k, t, dps=150))
            rep = laplace_entry_bound(iv, 1, measure, k, t)
            assert rep.bound >= truth * SLACK


def test_laplace_phi1_first_piece_dominates_far_out():
    m = make_test_matrix("tridiag", 100)
    iv = spectral_interval(m)
    measure = laplace_catalog("phi1")
    for k in (60, 75, 90):
        rep = laplace_entry_bound(iv, 1, measure, k, 50)
        total = rep.bound
        assert rep.distance >= 10
        assert rep.pieces["I"] / total > 0.9


def test_laplace_atom_measure_reduces_to_exp_bound():
    m = make_test_matrix("tridiag", 60)
    iv = spectral_interval(m)
    measure = laplace_catalog("exp")
    for k in (10, 25, 28):
        rep = laplace_entry_bound(iv, 1, measure, k, 30)
        assert rep.bound == exp_entry_bound(iv, 1, 1.0, k, 30)
        assert rep.error_estimate == 0.0


def test_laplace_validity_guard_and_extension():
    m = make_test_matrix("pentadiag", 30)
    iv = spectral_interval(m)
    measure = laplace_catalog("inv")
    with pytest.raises(ValueError):
        laplace_entry_bound(iv, 2, measure, 16, 15)
    rep = laplace_entry_bound(iv, 2, measure, 16, 15, on_invalid="extend")
    assert not rep.valid
    assert rep.bound > 0


def test_laplace_shifted_is_bit_identical():
    m = make_test_matrix("tridiag", 50)
    iv = spectral_interval(m)
    measure = laplace_catalog("inv_sqrt")
    for zeta in (0.0, 1.0, -3.5):
        a = laplace_entry_bound(iv, 1, measure, 10, 25)
        b = laplace_entry_bound_shifted(iv, 1, measure, zeta, 10, 25)
        assert a.bound == b.bound
        assert a.pieces == b.pieces


def test_laplace_shifted_dominates_complex_shift_oracle():
    # principal-branch oracle for f(M + i zeta I), f = inverse square root
    n, t, zeta = 50, 25, 1.0
    m = make_test_matrix("tridiag", n)
    iv = spectral_interval(m)
    dec = eigendecomposition(m)
    fvals = (dec.eigenvalues + 1j * zeta) ** -0.5
    col = np.abs(dec.eigenvectors @ (fvals * dec.eigenvectors[t - 1, :]))
    floor = oracle_floor(m, lambda x: np.abs((x + 1j * zeta) ** -0.5))
    measure = laplace_catalog("inv_sqrt")
    for k in range(1, n + 1):
        if abs(k - t) < 2 or col[k - 1] < floor:
            continue
        rep = laplace_entry_bound_shifted(iv, 1, measure, zeta, k, t)
        assert rep.bound >= col[k - 1] * SLACK


# ----------------------------------------------------- Cauchy-class bound

def test_cauchy_bound_dominates_oracle(test_matrix_200):
    m, iv = test_matrix_200
    measure = cauchy_catalog("inv_sqrt")
    col = np.abs(function_column(m, measure.closed_form, 127))
    floor = oracle_floor(m, measure.closed_form)
    for k in range(1, m.n + 1, 3):
        rep = cauchy_entry_bound(m, iv, m.beta, measure, k, 127)
        assert rep.converged
        if col[k - 1] >= floor:
            assert rep.bound >= col[k - 1] * SLACK


def test_cauchy_bound_zero_for_scaled_identity():
    from decaybounds import banded_from_stencil
    m = banded_from_stencil((0.0, 2.0, 0.0), 8)
    iv = spectral_interval(m)
    rep = cauchy_entry_bound(m, iv, 1, cauchy_catalog("inv_sqrt"), 2, 6)
    assert rep.bound == pytest.approx(0.0, abs=1e-13)


def test_cauchy_log1p_kernel_envelope_monotone():
    # with support ending at -1, the kernel at omega <= -1 never exceeds
    # its value at the endpoint
    iv = spectral_interval(make_test_matrix("tridiag", 40))
    d = 6.0
    def kernel(s):
        kap = (iv.lambda_max + s) / (iv.lambda_min + s)
        q = (math.sqrt(kap) - 1) / (math.sqrt(kap) + 1)
        return demko_constant(iv.lambda_min + s, iv.lambda_max + s) * q ** d
    k1 = kernel(1.0)
    for s in (1.0, 2.0, 5.0, 20.0, 100.0):
        assert kernel(s) <= k1 * (1 + 1e-12)


def test_cauchy_log1p_bound_dominates():
    m = make_test_matrix("tridiag", 50)
    iv = spectral_interval(m)
    measure = cauchy_catalog("log1p_over_z")
    col = np.abs(function_column(m, measure.closed_form, 25))
    floor = oracle_floor(m, measure.closed_form)
    for k in range(1, 51, 2):
        rep = cauchy_entry_bound(m, iv, 1, measure, k, 25)
        if col[k - 1] >= floor:
            assert rep.bound >= col[k - 1] * SLACK


# ------------------------------------------- closed-form inverse sqrt

def test_invsqrt_closed_bound_dominates(test_matrix_200):
    m, iv = test_matrix_200
    col = np.abs(function_column(m, lambda x: x ** -0.5, 127))
    floor = oracle_floor(m, lambda x: x ** -0.5)
    for k in range(1, m.n + 1):
        if abs(k - 127) < 2 * m.beta or col[k - 1] < floor:
            continue
        b = invsqrt_closed_bound(iv, m.beta, k, 127, diag_max=m.diagonal_max())
        assert b >= col[k - 1] * SLACK


def test_invsqrt_closed_bound_deep_highprec():
    import mpmath as mp
    n, t = 200, 127
    m = make_test_matrix("tridiag", n)
    iv = spectral_interval(m)
    for k in (97, 47, 7):
        truth = abs(tridiag_entry_mp(n, lambda lam: 1 / mp.sqrt(lam), k, t, dps=150))
        b = invsqrt_closed_bound(iv, 1, k, t, diag_max=4.0)
        assert b >= truth * SLACK


def test_invsqrt_closed_scaled_identity():
    from decaybounds import banded_from_stencil
    iv = spectral_interval(banded_from_stencil((0.0, 2.0, 0.0), 8))
    assert invsqrt_closed_bound(iv, 1, 2, 6) == pytest.approx(0.0, abs=1e-14)


def test_invsqrt_closed_exponent_uses_band_distance():
    iv = spectral_interval(make_test_matrix("pentadiag", 60))
    b4 = invsqrt_closed_bound(iv, 2, 34, 30, diag_max=4.0)
    b6 = invsqrt_closed_bound(iv, 2, 36, 30, diag_max=4.0)
    q0 = ((math.sqrt(iv.lambda_max / 4) - math.sqrt(iv.lambda_min / 4))
          / (math.sqrt(iv.lambda_max / 4) + math.sqrt(iv.lambda_min / 4)))
    assert b6 / b4 == pytest.approx(q0, rel=1e-12)


def test_invsqrt_closed_guards():
    iv = spectral_interval(make_test_matrix("tridiag", 10))
    with pytest.raises(ValueError):
        invsqrt_closed_bound(iv, 1, 4, 4)


# ----------------------------------------------------- shifted Cauchy

def test_cauchy_shifted_reduces_to_freund_kernel_and_dominates():
    n, t = 50, 25
    m = make_test_matrix("tridiag", n)
    iv = spectral_interval(m)
    measure = cauchy_catalog("inv_sqrt")
    col = np.abs(function_column(m, measure.closed_form, t))
    floor = oracle_floor(m, measure.closed_form)
    for k in range(1, n + 1, 4):
        if k == t:
            continue
        rep = cauchy_shifted_bound(iv, 1, measure, 0.0, k, t)
        assert rep.converged and np.isfinite(rep.bound)
        if col[k - 1] >= floor:
            assert rep.bound >= col[k - 1] * SLACK


def test_cauchy_shifted_improves_with_shift():
    # the kernel radius grows with |zeta|, so the bound decreases
    iv = spectral_interval(make_test_matrix("tridiag", 50))
    measure = cauchy_catalog("inv_sqrt")
    vals = [cauchy_shifted_bound(iv, 1, measure, z, 10, 25).bound
            for z in (0.0, 1.0, 10.0, 100.0)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_cauchy_shifted_guards():
    iv = spectral_interval(make_test_matrix("tridiag", 10))
    measure = cauchy_catalog("inv_sqrt")
    with pytest.raises(ValueError):
        cauchy_shifted_bound(iv, 1, measure, 1.0, 3, 3)


def test_exp_bound_next_to_diagonal_is_the_trivial_cap():
    m = make_test_matrix("tridiag", 60)
    iv = spectral_interval(m)
    t = 30
    # d = 1 sits below the Gaussian window at rho*tau ~ 4: only the
    # norm bound exp(-tau lambda_min) survives
    assert exp_entry_bound(iv, 1, 4.0, t + 1, t) == pytest.approx(
        math.exp(-4.0 * iv.lambda_min), rel=1e-14)


def test_cauchy_expsqrt_total_variation_converges_and_dominates():
    # oscillatory |density|: the smooth tail envelope keeps the integral
    # cheap while staying a rigorous upper bound
    m = make_test_matrix("tridiag", 30)
    iv = spectral_interval(m)
    measure = cauchy_catalog("expsqrt:1.5")
    col = np.abs(function_column(m, measure.closed_form, 15))
    floor = oracle_floor(m, measure.closed_form)
    for k in range(1, 31):
        rep = cauchy_entry_bound(m, iv, 1, measure, k, 15, quad_tol=1e-8)
        assert rep.converged
        if col[k - 1] >= floor:
            assert rep.bound >= col[k - 1] * SLACK


def test_bounds_remain_valid_on_gershgorin_enclosure():
    # every bound only needs a spectral enclosure; the disc interval gives
    # looser but still dominating values
    m = make_test_matrix("pentadiag", 120)
    gg = spectral_interval(m, "gershgorin")
    t = 60
    lm = laplace_catalog("inv_sqrt")
    cm = cauchy_catalog("inv_sqrt")
    col = np.abs(function_column(m, lambda x: x ** -0.5, t))
    floor = oracle_floor(m, lambda x: x ** -0.5)
    col_exp = np.abs(function_column(m, lambda x: np.exp(-4.0 * x), t))
    floor_exp = oracle_floor(m, lambda x: np.exp(-4.0 * x))
    for k in range(1, 121, 2):
        if k != t and col_exp[k - 1] >= floor_exp:
            assert exp_entry_bound(gg, 2, 4.0, k, t) >= col_exp[k - 1] * SLACK
        if col[k - 1] < floor:
            continue
        if abs(k - t) >= 4:
            assert laplace_entry_bound(gg, 2, lm, k, t).bound >= col[k - 1] * SLACK
            assert invsqrt_closed_bound(gg, 2, k, t, diag_max=4.0) >= col[k - 1] * SLACK
        assert cauchy_entry_bound(m, gg, 2, cm, k, t).bound >= col[k - 1] * SLACK


def test_bounds_on_complex_hermitian_storage():
    from decaybounds import banded_from_stencil
    h = banded_from_stencil((complex(-0.4, 0.6), complex(-1, -0.5), 4.0,
                             complex(-1, 0.5), complex(-0.4, -0.6)), 80)
    iv = spectral_interval(h)
    assert iv.lambda_min > 0
    t = 40
    col = np.abs(function_column(h, lambda x: x ** -0.5, t))
    floor = oracle_floor(h, lambda x: x ** -0.5)
    lm = laplace_catalog("inv_sqrt")
    cm = cauchy_catalog("inv_sqrt")
    for k in range(1, 81, 3):
        if col[k - 1] < floor:
            continue
        if abs(k - t) >= 4:
            assert laplace_entry_bound(iv, 2, lm, k, t).bound >= col[k - 1] * SLACK
        assert cauchy_entry_bound(h, iv, 2, cm, k, t).bound >= col[k - 1] * SLACK


def test_explicit_zero_distance_rejected_by_offdiagonal_bounds():
    iv = spectral_interval(make_test_matrix("tridiag", 10))
    with pytest.raises(ValueError):
        exp_entry_bound(iv, 1, 4.0, 3, 7, distance=0.0)


def test_laplace_bound_zero_for_scaled_identity():
    from decaybounds import banded_from_stencil
    iv = spectral_interval(banded_from_stencil((0.0, 3.0, 0.0), 9))
    rep = laplace_entry_bound(iv, 1, laplace_catalog("inv"), 2, 6)
    assert rep.bound == 0.0
    assert rep.converged
