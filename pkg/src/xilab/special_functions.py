"""Theta-series building blocks: theta and derivatives, the kernel Phi, log-gamma, zeta.

All routines are pure functions of their arguments and the precision context.
The theta family is summed over the full integer lattice; for x < 1 the modular
relation theta(x) = x**(-1/2) * theta(1/x) (and its differentiated forms) is
applied before summation, since the raw series degenerates as x -> 0+.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import bernoulli, mp, mpc, mpf, workdps
from mpmath.libmp import (
    from_int,
    from_man_exp,
    fzero,
    mpc_add,
    mpc_add_mpf,
    mpc_div,
    mpc_exp,
    mpc_mul,
    mpc_mul_mpf,
    mpf_div,
    mpf_neg,
)

from .errors import DomainError, PoleError, TruncationError
from .precision import PrecisionContext, as_mpc, resolve

__all__ = [
    "PhiKernel",
    "theta",
    "phi",
    "phi_theta_form",
    "phi_polya_form",
    "log_gamma",
    "zeta",
]


# ---------------------------------------------------------------------------
# theta and derivatives
# ---------------------------------------------------------------------------

def theta(x, k: int = 0, ctx: PrecisionContext | None = None) -> mpf:
    """Jacobi theta value theta^(k)(x) = d^k/dx^k sum_{n in Z} exp(-pi n^2 x).

    Requires x > 0 and k in {0, 1, 2}.  The series is truncated when the next
    term drops below ctx.eps / 10.
    """
    ctx = resolve(ctx)
    if k not in (0, 1, 2):
        raise DomainError(f"derivative order k={k} not supported (use 0, 1 or 2)")
    with workdps(ctx.dps):
        x = mpf(x)
        if not (x > 0):
            raise DomainError("theta requires x > 0")
        tol = ctx.eps / 10
        return +_theta_any(x, k, tol)


def _theta_any(x: mpf, k: int, tol: mpf) -> mpf:
    if x >= 1:
        return _theta_series(x, k, tol)
    # Modular relation theta(x) = x**(-1/2) theta(1/x), differentiated k times.
    y = 1 / x
    t0 = _theta_series(y, 0, tol)
    if k == 0:
        return x ** mpf("-0.5") * t0
    t1 = _theta_series(y, 1, tol)
    if k == 1:
        return -t0 / (2 * x ** mpf("1.5")) - t1 / x ** mpf("2.5")
    t2 = _theta_series(y, 2, tol)
    return (
        3 * t0 / (4 * x ** mpf("2.5"))
        + 3 * t1 / x ** mpf("3.5")
        + t2 / x ** mpf("4.5")
    )


def _theta_series(x: mpf, k: int, tol: mpf) -> mpf:
    """Lattice sum for x >= 1; terms decrease monotonically from n = 1."""
    total = mpf(1) if k == 0 else mpf(0)
    pi = mp.pi
    n = 1
    while True:
        q = mp.exp(-pi * n * n * x)
        if k == 0:
            term = 2 * q
        elif k == 1:
            term = -2 * pi * n * n * q
        else:
            term = 2 * pi * pi * n ** 4 * q
        total += term
        if abs(term) < tol:
            return total
        n += 1
        if n > 10_000:  # unreachable for x >= 1
            raise TruncationError("theta series failed to converge")


# ---------------------------------------------------------------------------
# Phi kernel
# ---------------------------------------------------------------------------

def phi(u, ctx: PrecisionContext | None = None) -> mpf:
    """Kernel Phi(u) = sum_{n>=1} (4 pi^2 n^4 e^(9u/2) - 6 pi n^2 e^(5u/2)) exp(-pi n^2 e^(2u)).

    Even in u; negative arguments are reflected.  Absolute error <= ctx.eps.
    """
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        u = abs(mpf(u))
        return +_phi_raw(u, ctx.eps / 10)


def _phi_raw(u: mpf, tol: mpf) -> mpf:
    pi = mp.pi
    x = mp.exp(2 * u)
    e9 = mp.exp(mpf(9) / 2 * u)
    e5 = mp.exp(mpf(5) / 2 * u)
    total = mpf(0)
    n = 1
    while True:
        q = mp.exp(-pi * n * n * x)
        total += (4 * pi * pi * n ** 4 * e9 - 6 * pi * n * n * e5) * q
        m = n + 1
        if 4 * pi * pi * m ** 4 * e9 * mp.exp(-pi * m * m * x) < tol:
            return total
        n = m


def phi_theta_form(u, ctx: PrecisionContext | None = None) -> mpf:
    """Phi(u) evaluated through theta derivatives: 3 x^(5/4) theta'(x) + 2 x^(9/4) theta''(x) at x = e^(2u)."""
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        u = abs(mpf(u))
        x = mp.exp(2 * u)
        t1 = _theta_any(x, 1, ctx.eps / 10)
        t2 = _theta_any(x, 2, ctx.eps / 10)
        return +(3 * x ** mpf("1.25") * t1 + 2 * x ** mpf("2.25") * t2)


def phi_polya_form(u, ctx: PrecisionContext | None = None) -> mpf:
    """Phi(u) as (1/2)(d^2/du^2 - 1/4) applied to e^(u/2) theta(e^(2u)).

    The second derivative is taken term by term on the lattice series (no
    numeric differencing): with X = e^(2u) and h_n(u) = e^(u/2) exp(-pi n^2 X),
    h_n'' = h_n ((1/2 - 2 pi n^2 X)^2 - 4 pi n^2 X).
    """
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        u = mpf(u)
        pi = mp.pi
        X = mp.exp(2 * u)
        front = mp.exp(u / 2)
        tol = ctx.eps / 10
        total = mpf(0)  # n = 0 term of the operator vanishes identically
        n = 1
        while True:
            a = pi * n * n * X
            h = front * mp.exp(-a)
            bracket = (mpf(1) / 2 - 2 * a) ** 2 - 4 * a - mpf(1) / 4
            total += h * bracket  # both n and -n, i.e. factor 2, then 1/2 of operator
            m = n + 1
            am = pi * m * m * X
            bound = front * mp.exp(-am) * ((mpf(1) / 2 + 2 * am) ** 2 + 4 * am)
            if bound < tol:
                return +total
            n = m
            if n > 100_000:
                raise TruncationError("differentiated theta series failed to converge")


# ---------------------------------------------------------------------------
# log Gamma via argument-shifted Stirling
# ---------------------------------------------------------------------------

_STIRLING_COEFFS: dict[int, list[mpf]] = {}


def _stirling_coeffs(count: int, dps: int) -> list[mpf]:
    """B_{2k} / (2k (2k-1)) for k = 1..count, cached per working precision."""
    have = _STIRLING_COEFFS.setdefault(dps, [])
    if len(have) < count:
        with workdps(dps + 10):
            for k in range(len(have) + 1, count + 1):
                have.append(mpf(bernoulli(2 * k)) / (2 * k * (2 * k - 1)))
    return have


def log_gamma(s, ctx: PrecisionContext | None = None) -> mpc:
    """Principal-branch log Gamma(s) by Stirling's series after an argument shift.

    The argument is shifted up by integers until its real part clears a
    digit-dependent threshold, so the series length adapts to the precision.
    The shifted factors are removed through one log of their running product,
    with the branch recovered from a float phase accumulator.
    """
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        s = as_mpc(s)
        if s.imag == 0 and s.real <= 0 and mp.isint(s.real):
            raise PoleError(f"log_gamma pole at s={s.real}")
        threshold = mpf("0.4") * ctx.dps + 6
        w = s
        shift = mpc(0)
        if w.real < threshold:
            prod = mpc(1)
            phase = 0.0
            mag = 0.0
            while w.real < threshold:
                phase += math.atan2(float(w.imag), float(w.real))
                mag += math.log(abs(complex(w)))
                prod *= w
                if mag > 280:  # renormalize well before float overflow of |prod|
                    shift += mp.log(prod)
                    prod = mpc(1)
                    mag = 0.0
                w += 1
            shift += mp.log(prod)
            wraps = round((phase - float(shift.imag)) / (2 * math.pi))
            if wraps:
                shift += mpc(0, 2 * wraps) * mp.pi
        res = (w - mpf(1) / 2) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
        w2 = w * w
        pw = w
        tol = mpf(10) ** (-ctx.dps - 2)
        k = 1
        while True:
            coeffs = _stirling_coeffs(k, ctx.dps)
            term = coeffs[k - 1] / pw
            res += term
            if abs(term) < tol:
                break
            pw *= w2
            k += 1
            if k > 4 * ctx.dps:
                raise TruncationError("Stirling series did not reach tolerance")
        return +(res - shift)


# ---------------------------------------------------------------------------
# zeta via Euler-Maclaurin, right of the critical line
# ---------------------------------------------------------------------------

_LN_TABLE: dict[int, list] = {}
_SPF_TABLE: list[int] = [0, 1]
_EM_COEFFS: dict[int, tuple[list, list[float]]] = {}


def _ln_table(n: int, dps: int) -> list:
    """Raw-mpf natural logs of 0..n (index 0 unused), cached per precision."""
    table = _LN_TABLE.setdefault(dps, [fzero, fzero])
    if len(table) <= n:
        with workdps(dps):
            for m in range(len(table), n + 1):
                table.append(mp.log(m)._mpf_)
    return table


def _spf(n: int) -> list[int]:
    """Smallest-prime-factor sieve up to n inclusive."""
    global _SPF_TABLE
    if len(_SPF_TABLE) <= n:
        size = max(n + 1, 2 * len(_SPF_TABLE))
        spf = list(range(size))
        for p in range(2, int(size ** 0.5) + 1):
            if spf[p] == p:
                for q in range(p * p, size, p):
                    if spf[q] == q:
                        spf[q] = p
        _SPF_TABLE = spf
    return _SPF_TABLE


def _em_coeffs(count: int, dps: int) -> tuple[list, list[float]]:
    """B_{2k} / (2k)! for k = 1..count as raw mpf plus log10 magnitudes."""
    have = _EM_COEFFS.setdefault(dps, ([], []))
    raw, lgs = have
    if len(raw) < count:
        with workdps(dps + 10):
            for k in range(len(raw) + 1, count + 1):
                c = mpf(bernoulli(2 * k)) / mp.factorial(2 * k)
                raw.append(c._mpf_)
                lgs.append(float(mp.log10(abs(c))))
    return have


def zeta(s, ctx: PrecisionContext | None = None) -> mpc:
    """Euler-Maclaurin zeta(s) for Re(s) >= 1/2, s != 1.

    The cut N and correction depth M are chosen from the working digits and
    |Im s|; integer powers n^(-s) are built multiplicatively from prime powers.
    The inner loops run on raw libmp tuples; this routine sits under every
    xi evaluation on the zero-search paths.
    """
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        s = as_mpc(s)
        if s.real < mpf(1) / 2:
            raise DomainError("zeta is only evaluated for Re(s) >= 1/2; use xi for reflection")
        if s == 1:
            raise PoleError("zeta pole at s = 1")
        n_cut = max(10, int(0.72 * ctx.dps + 0.31 * abs(s.imag)) + 1)
        sigma = float(s.real)
        if sigma > 12:
            # Far right of the strip the Dirichlet series alone converges fast
            # enough; the Euler-Maclaurin tail machinery only pays off nearer
            # the critical line.
            n_direct = int(math.ceil(10.0 ** ((ctx.dps + 2) / (sigma - 1)))) + 1
            if n_direct <= 0.7 * n_cut:
                return +_zeta_direct(s, n_direct, ctx.dps)
        for _ in range(8):
            value = _zeta_em(s, n_cut, ctx.dps)
            if value is not None:
                return +value
            n_cut = int(n_cut * 1.5) + 4
        raise TruncationError("Euler-Maclaurin tail failed to converge")


def _zeta_direct(s: mpc, n_top: int, dps: int) -> mpc:
    prec = int(dps * 3.3219280948873626) + 10
    logs = _ln_table(n_top, dps)
    spf = _spf(n_top)
    sre, sim = s._mpc_
    neg_s = (mpf_neg(sre), mpf_neg(sim))
    pows: list = [None] * (n_top + 1)
    one = (from_int(1), fzero)
    pows[1] = one
    total = one
    for n in range(2, n_top + 1):
        p = spf[n]
        if p == n:
            pw = mpc_exp(mpc_mul_mpf(neg_s, logs[n], prec), prec)
        else:
            pw = mpc_mul(pows[p], pows[n // p], prec)
        pows[n] = pw
        total = mpc_add(total, pw, prec)
    return mp.make_mpc(total)


def _zeta_em(s: mpc, n_cut: int, dps: int):
    prec = int(dps * 3.3219280948873626) + 10
    logs = _ln_table(n_cut, dps)
    spf = _spf(n_cut)
    sre, sim = s._mpc_
    neg_s = (mpf_neg(sre), mpf_neg(sim))
    pows: list = [None] * (n_cut + 1)
    one = (from_int(1), fzero)
    pows[1] = one
    total = one
    for n in range(2, n_cut):
        p = spf[n]
        if p == n:
            pw = mpc_exp(mpc_mul_mpf(neg_s, logs[n], prec), prec)
        else:
            pw = mpc_mul(pows[p], pows[n // p], prec)
        pows[n] = pw
        total = mpc_add(total, pw, prec)
    n_pow = mpc_exp(mpc_mul_mpf(neg_s, logs[n_cut], prec), prec)  # N^(-s)
    s_minus_1 = mpc_add_mpf(s._mpc_, from_int(-1), prec)
    total = mpc_add(total, mpc_div(mpc_mul_mpf(n_pow, from_int(n_cut), prec), s_minus_1, prec), prec)
    total = mpc_add(total, mpc_mul_mpf(n_pow, from_man_exp(1, -1), prec), prec)
    # Bernoulli corrections T_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^(1-s-2k),
    # with magnitudes tracked in float log10 for loop control.
    coeff_raw, coeff_lg = _em_coeffs(12, dps)
    sigma = float(mpf(sre))
    t_abs = abs(float(mpf(sim)))
    rising = s._mpc_
    rising_lg = math.log10(math.hypot(sigma, t_abs))
    n_shift = mpc_mul_mpf(n_pow, mpf_div(from_int(1), from_int(n_cut), prec), prec)
    n_shift_lg = -(sigma + 1) * math.log10(n_cut)
    inv_n2 = mpf_div(from_int(1), from_int(n_cut * n_cut), prec)
    lg_n2 = 2 * math.log10(n_cut)
    target = -(dps + 2)
    prev_lg = math.inf
    k = 1
    while True:
        if k > len(coeff_raw):
            coeff_raw, coeff_lg = _em_coeffs(k + 12, dps)
        term = mpc_mul_mpf(mpc_mul(rising, n_shift, prec), coeff_raw[k - 1], prec)
        total = mpc_add(total, term, prec)
        term_lg = coeff_lg[k - 1] + rising_lg + n_shift_lg
        # error bound factor |s + 2M + 1| / (sigma + 2M + 1) applied to the next term
        guard_lg = math.log10((t_abs + 2 * k + 1) / (2 * k + 1))
        if term_lg + guard_lg < target:
            return mp.make_mpc(total)
        if term_lg > prev_lg:
            return None  # divergence before tolerance: restart with larger N
        prev_lg = term_lg
        q1 = mpc_add_mpf(s._mpc_, from_int(2 * k - 1), prec)
        q2 = mpc_add_mpf(s._mpc_, from_int(2 * k), prec)
        rising = mpc_mul(rising, mpc_mul(q1, q2, prec), prec)
        rising_lg += math.log10(math.hypot(sigma + 2 * k - 1, t_abs)) + math.log10(
            math.hypot(sigma + 2 * k, t_abs)
        )
        n_shift = mpc_mul_mpf(n_shift, inv_n2, prec)
        n_shift_lg -= lg_n2
        k += 1
        if k > 6 * dps:
            return None


# ---------------------------------------------------------------------------
# PhiKernel truncation plan
# ---------------------------------------------------------------------------

LOG10_E = math.log10(math.e)


def phi_log10_bound(u: float) -> float:
    """Cheap float upper estimate of log10 Phi(u) for u >= 0 (n = 1 term dominates)."""
    if u < 0.25:
        return 0.0  # Phi(0) ~ 0.893; flat near the origin
    return math.log10(4 * math.pi ** 2) + (4.5 * u - math.pi * math.exp(2 * u)) * LOG10_E


@dataclass(frozen=True)
class PhiKernel:
    """Truncation parameters for the weighted Phi integrands.

    n_max bounds the theta series at u = 0; u_max cuts the integration range;
    lam and m select the family member exp(lam u^2) u^m.
    """

    n_max: int
    u_max: float
    lam: float
    m: int

    @classmethod
    def plan(cls, m: int, lam, ctx: PrecisionContext | None = None, im_z: float = 0.0) -> "PhiKernel":
        ctx = resolve(ctx)
        if m < -1 or int(m) != m:
            raise DomainError("family index m must be an integer >= -1")
        lam_f = float(lam)
        im_z = abs(float(im_z))
        target = -(ctx.digits + 10)
        n_max = 1
        while math.log10(4 * math.pi ** 2) + 4 * math.log10(n_max) - math.pi * n_max * n_max * LOG10_E >= target:
            n_max += 1
        u = 1.0 / 16
        u_max = None
        while u <= 8.0:
            weight = lam_f * u * u * LOG10_E + max(0.0, abs(m) * math.log10(u)) + im_z * u * LOG10_E
            if weight + phi_log10_bound(u) < target:
                u_max = u
                break
            u += 1.0 / 16
        if u_max is None:
            raise TruncationError(
                f"no cutoff below u=8 meets the {ctx.digits}-digit budget for lam={lam_f}"
            )
        return cls(n_max=n_max, u_max=u_max, lam=lam_f, m=int(m))

    def validate(self, ctx: PrecisionContext | None = None) -> None:
        """Check the truncation invariants against ctx.quad_tol."""
        ctx = resolve(ctx)
        with workdps(ctx.dps):
            first_omitted = 4 * mp.pi ** 2 * mpf(self.n_max) ** 4 * mp.exp(-mp.pi * mpf(self.n_max) ** 2)
            if not first_omitted < ctx.quad_tol:
                raise TruncationError("theta-series cut n_max too small for quad_tol")
            u = mpf(self.u_max)
            tail = mp.exp(self.lam * u * u) * max(mpf(1), u ** abs(self.m)) * phi(u, ctx)
            if not tail < ctx.quad_tol:
                raise TruncationError("integration cutoff u_max too small for quad_tol")
