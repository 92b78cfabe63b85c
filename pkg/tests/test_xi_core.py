import random

import pytest
from mpmath import mp, mpc, mpf

from xilab import (
    DomainError,
    arg_variation,
    big_xi,
    f_estimate,
    xi,
)
from xilab.xi_integrals import gauss_legendre_01

from .frozen import ARG_VARIATION_5_50, CRITICAL_DECAY_C1, F_EST_2_0, RATIO_SANDWICH_C


def test_xi_at_half(ctx40):
    value = xi(mpf("0.5"), ctx40)
    assert abs(value - mpf("0.49712")) < mpf("1e-5")
    assert value.imag == 0


def test_xi_entire_at_one_and_zero(ctx40):
    assert abs(xi(1, ctx40) - mpf("0.5")) < 100 * ctx40.eps
    assert abs(xi(0, ctx40) - mpf("0.5")) < 100 * ctx40.eps


def test_xi_functional_equation_spec_example(ctx40):
    delta = xi(mpc(2, 3), ctx40) - xi(mpc(-1, -3), ctx40)
    assert abs(delta) <= 100 * ctx40.eps * abs(xi(mpc(2, 3), ctx40))


def test_xi_functional_equation_random(ctx40):
    rng = random.Random(20260809)
    for _ in range(50):
        s = mpc(mpf(repr(rng.uniform(-5, 6))), mpf(repr(rng.uniform(-50, 50))))
        v = xi(s, ctx40)
        assert abs(v - xi(1 - s, ctx40)) <= 100 * ctx40.eps * abs(v)


def test_xi_conjugation(ctx40):
    rng = random.Random(77)
    for _ in range(12):
        s = mpc(mpf(repr(rng.uniform(0.5, 6))), mpf(repr(rng.uniform(-40, 40))))
        v = xi(s, ctx40)
        assert abs(xi(mp.conj(s), ctx40) - mp.conj(v)) <= 100 * ctx40.eps * abs(v)


def test_xi_against_product_reference(ctx40):
    # independent oracle: mpmath's gamma and zeta at 60 digits
    for s in (mpc("3.5", "7"), mpc("0.5", "30"), mpc("20", "-14")):
        ref = s * (s - 1) / 2 * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)
        mine = xi(s, ctx40)
        assert abs(mine - ref) / abs(ref) < mpf("1e-38")


def test_xi_small_at_first_ordinate(ctx40):
    assert abs(xi(mpc("0.5", "14.13472"), ctx40)) < mpf("1e-4")


def test_big_xi(ctx40):
    assert abs(big_xi(0, ctx40) - mpf("0.49712")) < mpf("1e-5")
    v = big_xi(mpf("7.3"), ctx40)
    assert abs(v.imag) <= 100 * ctx40.eps * abs(v)
    assert abs(big_xi(mpf("14.13472"), ctx40)) < mpf("1e-4")


# ---------------------------------------------------------------------------
# f_estimate
# ---------------------------------------------------------------------------

def test_f_estimate_exact_point(ctx40):
    assert abs(f_estimate(2, 0, ctx40) - mpf(F_EST_2_0)) < mpf("1e-38")


def test_f_estimate_monotone_in_sigma_above_cutoff(ctx40):
    assert f_estimate(3, 20, ctx40) > f_estimate(2, 20, ctx40)


def test_f_estimate_domain(ctx40):
    with pytest.raises(DomainError):
        f_estimate(-1, 3, ctx40)
    assert f_estimate(0, 0, ctx40) == 0
    assert f_estimate(0, 5, ctx40) > 0  # sigma = 0 edge uses arctan -> pi/2


def test_ratio_sandwich_calibrated(ctx40):
    for sigma in (10, 20, 40):
        for t in (0, 10, 50):
            s = mpc(sigma, t)
            ratio = abs(xi(s, ctx40)) / f_estimate(sigma, t, ctx40)
            c = mpf(repr(RATIO_SANDWICH_C)) * (1 / abs(s) + mpf(2) ** (-sigma))
            assert 1 - c <= ratio <= 1 + c
    for t in (0, 10):
        ratios = [abs(xi(mpc(sig, t), ctx40)) / f_estimate(sig, t, ctx40) for sig in (10, 20, 40)]
        assert ratios[0] < ratios[1] < ratios[2] <= 1


def test_critical_strip_decay_calibrated(ctx40):
    c1 = mpf(repr(CRITICAL_DECAY_C1))
    for t in range(10, 101, 10):
        bound = c1 * mp.exp(-mp.pi * t / 4) * (t + 1) ** mpf("2.5")
        assert abs(xi(mpc(mpf(1) / 2, t), ctx40)) <= bound


def test_f_estimate_integral_bound(ctx40):
    # int_0^s1 F(sigma, t) dsigma <= 4 F(s1, t) by composite Gauss quadrature
    xs, ws = gauss_legendre_01(24, ctx40.dps)
    for t in (4 * mp.pi * mp.e, mpf(50), mpf(100)):
        for s1 in (5, 20, 34):
            h = mpf(s1) / 40
            total = mpf(0)
            for p in range(40):
                for xk, wk in zip(xs, ws):
                    total += wk * h * f_estimate(p * h + xk * h, t, ctx40)
            assert total <= 4 * f_estimate(s1, t, ctx40)


# ---------------------------------------------------------------------------
# arg_variation
# ---------------------------------------------------------------------------

def test_arg_variation_real_axis_is_zero(ctx40):
    assert arg_variation(5, 0, ctx40, steps=16) <= ctx40.eps


def test_arg_variation_high_sigma_bound(ctx40):
    assert arg_variation(100, 10, ctx40, steps=64) <= (1 + mp.pi) / 2 + mpf("0.1")


def test_arg_variation_oracle_locked(ctx40):
    value = arg_variation(5, 50, ctx40, steps=64)
    assert abs(value - mpf(ARG_VARIATION_5_50)) < mpf("1e-24")


def test_arg_variation_phase_coherence(ctx40):
    # |int xi dsigma| >= cos(theta/2) int |xi| dsigma over [100, 102] at t = 10
    theta_var = arg_variation(100, 10, ctx40, steps=64)
    xs, ws = gauss_legendre_01(24, ctx40.dps)
    h = mpf(2) / 32
    int_xi = mpc(0)
    int_abs = mpf(0)
    for p in range(32):
        for xk, wk in zip(xs, ws):
            v = xi(mpc(100 + p * h + xk * h, 10), ctx40)
            int_xi += wk * h * v
            int_abs += wk * h * abs(v)
    assert abs(int_xi) >= mp.cos(theta_var / 2) * int_abs


def test_arg_variation_requires_sigma_above_one(ctx40):
    with pytest.raises(DomainError):
        arg_variation(1, 10, ctx40)
