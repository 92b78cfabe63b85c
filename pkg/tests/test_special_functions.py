from math import exp

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpc, mpf

from xilab import (
    DomainError,
    PhiKernel,
    PoleError,
    TruncationError,
    log_gamma,
    phi,
    phi_polya_form,
    phi_theta_form,
    theta,
    zeta,
)

from .frozen import ABS_GAMMA_QUARTER_50I, PHI_AT_1, THETA_AT_1, THETA_AT_10, ZETA_3

from xilab import PrecisionContext

_CTX = PrecisionContext(40)  # hypothesis-driven properties share one context


# ---------------------------------------------------------------------------
# theta
# ---------------------------------------------------------------------------

def test_theta_at_one_closed_form(ctx40):
    assert abs(theta(1, 0, ctx40) - mpf(THETA_AT_1)) < mpf("1e-39")


def test_theta_quarter_forced_by_modular_relation(ctx40):
    lhs = theta(mpf(1) / 4, 0, ctx40)
    rhs = 2 * theta(4, 0, ctx40)
    assert abs(lhs - rhs) < 10 * ctx40.eps


def test_theta_at_ten_two_term_oracle(ctx40):
    assert abs(theta(10, 0, ctx40) - mpf(THETA_AT_10)) < mpf("1e-39")


def test_theta_derivatives_match_reference_jtheta(ctx40):
    # independent oracle: mpmath's jtheta3(0, q) with q = e^(-pi x), chain rule in x
    x = mpf("1.7")
    q = mp.exp(-mp.pi * x)
    ref0 = mp.jtheta(3, 0, q)
    h = mpf(10) ** -20
    ref1 = (mp.jtheta(3, 0, mp.exp(-mp.pi * (x + h))) - mp.jtheta(3, 0, mp.exp(-mp.pi * (x - h)))) / (2 * h)
    assert abs(theta(x, 0, ctx40) - ref0) < mpf("1e-39")
    assert abs(theta(x, 1, ctx40) - ref1) < mpf("1e-15")


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=0.05, max_value=9.0))
def test_theta_functional_equation(x):
    with mp.workdps(60):
        x = mpf(repr(x))
        lhs = theta(x, 0, _CTX)
        rhs = x ** mpf("-0.5") * theta(1 / x, 0, _CTX)
        assert abs(lhs - rhs) < 10 * _CTX.eps


def test_theta_functional_equation_fixed_points(ctx40):
    for x in ("0.1", "0.5", "2", "7"):
        x = mpf(x)
        assert abs(theta(x, 0, ctx40) - x ** mpf("-0.5") * theta(1 / x, 0, ctx40)) <= 10 * ctx40.eps


def test_theta_domain_errors(ctx40):
    with pytest.raises(DomainError):
        theta(0, 0, ctx40)
    with pytest.raises(DomainError):
        theta(-2, 0, ctx40)
    with pytest.raises(DomainError):
        theta(1, 3, ctx40)


# ---------------------------------------------------------------------------
# phi
# ---------------------------------------------------------------------------

def test_phi_at_zero_printed_value(ctx40):
    assert abs(phi(0, ctx40) - mpf("0.89339")) < mpf("1e-5")


def test_phi_at_one_series_oracle(ctx40):
    assert abs(phi(1, ctx40) - mpf(PHI_AT_1)) < mpf("1e-40")


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=-3.0, max_value=3.0))
def test_phi_evenness(u):
    with mp.workdps(60):
        u = mpf(repr(u))
        assert abs(phi(u, _CTX) - phi(-u, _CTX)) <= 10 * _CTX.eps


def test_phi_triple_route_agreement(ctx40):
    for i in range(31):
        u = mpf(i) / 10
        a = phi(u, ctx40)
        b = phi_theta_form(u, ctx40)
        c = phi_polya_form(u, ctx40)
        assert abs(a - b) <= 10 * ctx40.eps
        assert abs(a - c) <= 10 * ctx40.eps
        assert abs(b - c) <= 10 * ctx40.eps


def test_phi_strictly_decreasing_and_positive(ctx40):
    prev = phi(0, ctx40)
    assert prev > 0
    for i in range(1, 301):
        cur = phi(mpf(i) / 100, ctx40)
        assert cur > 0
        assert cur < prev
        prev = cur


def test_phi_rapid_decay_envelope(ctx40):
    assert phi(3, ctx40) < mpf(repr(exp(-exp(3.0)))) * mpf(10) ** 6


def test_polya_form_identity_points(ctx40):
    for u in ("0", "0.7"):
        assert abs(phi_polya_form(mpf(u), ctx40) - phi(mpf(u), ctx40)) <= 10 * ctx40.eps


def test_polya_form_negative_argument(ctx40):
    # the operator form is evaluated as written, without reflecting u
    assert abs(phi_polya_form(mpf("-0.7"), ctx40) - phi(mpf("0.7"), ctx40)) <= 10 * ctx40.eps


# ---------------------------------------------------------------------------
# log_gamma
# ---------------------------------------------------------------------------

def test_log_gamma_classical_values(ctx40):
    assert abs(mp.exp(log_gamma(mpf("0.5"), ctx40)) - mp.sqrt(mp.pi)) < mpf("1e-38")
    assert abs(mp.exp(log_gamma(5, ctx40)) - 24) < mpf("1e-36")


def test_log_gamma_quarter_plus_50i_oracle(ctx40):
    value = abs(mp.exp(log_gamma(mpc(mpf(1) / 4, 50), ctx40)))
    ref = mpf(ABS_GAMMA_QUARTER_50I)
    assert abs(value - ref) / ref < mpf("1e-37")


def test_log_gamma_against_reference(ctx40):
    for s in (mpc("0.25", "7"), mpc("-2.5", "4"), mpc("30", "-11"), mpc("1e-3", "0")):
        assert abs(log_gamma(s, ctx40) - mp.loggamma(s)) < mpf("1e-38")


def test_log_gamma_poles(ctx40):
    for s in (0, -1, -7):
        with pytest.raises(PoleError):
            log_gamma(s, ctx40)


# ---------------------------------------------------------------------------
# zeta
# ---------------------------------------------------------------------------

def test_zeta_two_pi_squared_over_six(ctx40):
    assert abs(zeta(2, ctx40) - mp.pi ** 2 / 6) < mpf("1e-39")


def test_zeta_three_series_oracle(ctx40):
    # oracle: direct series to N plus Euler-Maclaurin tail 1/(2N^2) - 1/(2N^3) + ...
    n_top = 400
    acc = mp.fsum(mpf(1) / mpf(n) ** 3 for n in range(1, n_top + 1))
    acc += mpf(1) / (2 * n_top ** 2) - mpf(1) / (2 * n_top ** 3) + mpf(1) / (4 * n_top ** 4)
    assert abs(acc - mpf(ZETA_3)) < mpf("1e-11")  # oracle's own tail truncation
    assert abs(zeta(3, ctx40) - mpf(ZETA_3)) < mpf("1e-39")


def test_zeta_vanishes_near_first_ordinate(ctx40):
    assert abs(zeta(mpc("0.5", "14.13472"), ctx40)) < mpf("1e-4")


def test_zeta_against_reference_grid(ctx40):
    for s in (mpc("0.5", "33.3"), mpc("1.5", "-8"), mpc("26", "0"), mpc("0.75", "250")):
        assert abs(zeta(s, ctx40) - mp.zeta(s)) < mpf("1e-38")


def test_zeta_domain_and_pole(ctx40):
    with pytest.raises(DomainError):
        zeta(mpc("0.25", "3"), ctx40)
    with pytest.raises(PoleError):
        zeta(1, ctx40)


# ---------------------------------------------------------------------------
# PhiKernel truncation plans
# ---------------------------------------------------------------------------

def test_phi_kernel_plan_invariants(ctx40):
    for m, lam in ((-1, 0), (0, 1), (2, -2)):
        kernel = PhiKernel.plan(m, lam, ctx40)
        kernel.validate(ctx40)
        assert kernel.n_max >= 1
        assert 0 < kernel.u_max <= 8


def test_phi_kernel_rejects_extreme_lambda(ctx40):
    with pytest.raises(TruncationError):
        PhiKernel.plan(0, 1_000_000, ctx40)


def test_phi_kernel_rejects_bad_m(ctx40):
    with pytest.raises(DomainError):
        PhiKernel.plan(-2, 0, ctx40)
