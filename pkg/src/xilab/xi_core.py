"""The completed zeta function xi, its growth estimate, and phase diagnostics.

xi(s) = (1/2) s (s-1) pi^(-s/2) Gamma(s/2) zeta(s) is evaluated directly for
Re(s) >= 1/2 and by the reflection xi(s) = xi(1-s) on the left half.  The only
superficially singular point is s = 1, where (s-1) zeta(s) -> 1 closes the
pole; s = 0 reflects onto it.
"""

from __future__ import annotations

from mpmath import mp, mpc, mpf, workdps

from .errors import BoundaryTooCloseError, DomainError
from .precision import PrecisionContext, as_mpc, resolve
from .special_functions import log_gamma, zeta

__all__ = ["xi", "big_xi", "f_estimate", "arg_variation"]

_LOG_PI: dict[int, mpf] = {}


def _log_pi(dps: int) -> mpf:
    val = _LOG_PI.get(dps)
    if val is None:
        with workdps(dps):
            val = mp.log(mp.pi)
        _LOG_PI[dps] = val
    return val


def xi(s, ctx: PrecisionContext | None = None) -> mpc:
    """Riemann xi at s, with reflection across Re(s) = 1/2 (points on the line direct)."""
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        s = as_mpc(s)
        if s.real < mpf(1) / 2:
            s = 1 - s
        gamma_half = mp.exp(log_gamma(s / 2, ctx) - s / 2 * _log_pi(ctx.dps))
        if s == 1:
            # (s-1) zeta(s) -> 1 at the pole
            return +(s / 2 * gamma_half)
        return +(s * (s - 1) / 2 * gamma_half * zeta(s, ctx))


def big_xi(z, ctx: PrecisionContext | None = None) -> mpc:
    """Critical-line rescaling Xi(z) = xi(1/2 + i z); real-valued for real z."""
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        z = as_mpc(z)
        return xi(mpc(mpf(1) / 2 - z.imag, z.real), ctx)


def f_estimate(sigma, t, ctx: PrecisionContext | None = None) -> mpf:
    """Stirling-derived magnitude estimate for |xi(sigma + i t)|, sigma >= 0.

    F(sigma, t) = sqrt(pi) (2 pi e)^(-sigma/2) (sigma^2 + t^2)^((sigma+3)/4)
                  * exp(-(t/2) arctan(t/sigma)),
    with arctan(t/0) read as sign(t) pi/2 on the sigma = 0 edge.
    """
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        sigma = mpf(sigma)
        t = mpf(t)
        if sigma < 0:
            raise DomainError("f_estimate requires sigma >= 0")
        r2 = sigma * sigma + t * t
        if r2 == 0:
            return mpf(0)
        angle = mp.atan2(t, sigma)
        return +(
            mp.sqrt(mp.pi)
            * mp.exp(-sigma / 2 * mp.log(2 * mp.pi * mp.e))
            * mp.exp((sigma + 3) / 4 * mp.log(r2))
            * mp.exp(-t / 2 * angle)
        )


def arg_variation(sigma0, t, ctx: PrecisionContext | None = None, steps: int = 64) -> mpf:
    """Total phase variation of xi along sigma in [sigma0, sigma0 + 2] at height t.

    Sums |Delta arg xi| over a uniform partition refined adaptively until every
    step turns by less than pi; refinement failure signals a zero adjacent to
    the segment.
    """
    ctx = resolve(ctx)
    if steps < 1:
        raise DomainError("steps must be positive")
    with workdps(ctx.dps):
        sigma0 = mpf(sigma0)
        t = mpf(t)
        if not sigma0 > 1:
            raise DomainError("arg_variation requires sigma0 > 1")

        def value(sig):
            return xi(mpc(sig, t), ctx)

        cap = mpf("0.95") * mp.pi
        total = mpf(0)
        left = sigma0
        f_left = value(left)
        width = mpf(2) / steps
        for j in range(1, steps + 1):
            right = sigma0 + j * width if j < steps else sigma0 + 2
            f_right = value(right)
            total += _variation(left, f_left, right, f_right, value, cap, 0)
            left, f_left = right, f_right
        return +total


def _variation(a, fa, b, fb, value, cap, depth):
    if fa == 0 or fb == 0:
        raise BoundaryTooCloseError("xi vanishes at a partition point", point=mpc(a))
    delta = mp.arg(fb / fa)
    if abs(delta) < cap:
        return abs(delta)
    if depth >= 20:
        raise BoundaryTooCloseError(
            "phase step will not fall below pi; zero adjacent to segment", point=mpc(a)
        )
    mid = (a + b) / 2
    fm = value(mid)
    return _variation(a, fa, mid, fm, value, cap, depth + 1) + _variation(
        mid, fm, b, fb, value, cap, depth + 1
    )
