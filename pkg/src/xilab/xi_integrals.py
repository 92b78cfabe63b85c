"""Fourier-integral family, the path integral of xi, and Taylor moments of Phi.

Quadrature strategy: the weighted Phi integrands decay doubly exponentially,
so plain Gauss-Legendre panels suffice once panel widths track both the local
logarithmic slope of the kernel and the oscillation period of the trig factor
(at least two panels per period).  Panel layouts and kernel node tables are
cached per (member, lambda, precision, argument-size bucket), which makes
batch scans over many z cheap.

The even moments c_2j = 2 int u^(2j) Phi(u) du feed two consumers: the public
Taylor-coefficient operation, and an internal series route for xi^(-1) and xi
around s = 1/2 that the zero search uses for fast evaluation far from the
real axis.  Series evaluations manage their own guard digits from float
estimates of the largest term, since the series cancels heavily near the
critical line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpc, mpf, workdps

from .errors import ConvergenceError, DomainError, TruncationError
from .precision import PrecisionContext, as_mpc, resolve
from .special_functions import PhiKernel, _phi_raw, phi, phi_log10_bound
from .xi_core import f_estimate, xi

__all__ = [
    "QuadraturePlan",
    "xi_family",
    "xi_inv_path",
    "a0",
    "limit_residual",
    "taylor_coeff",
    "TaylorRoute",
]

LOG10_E = math.log10(math.e)
LN10 = math.log(10.0)


# ---------------------------------------------------------------------------
# Gauss-Legendre nodes at working precision
# ---------------------------------------------------------------------------

_GL_CACHE: dict[tuple[int, int], tuple[list[mpf], list[mpf]]] = {}


def gauss_legendre_01(order: int, dps: int) -> tuple[list[mpf], list[mpf]]:
    """Nodes and weights on [0, 1], by Newton iteration on P_n from float seeds."""
    key = (order, dps)
    cached = _GL_CACHE.get(key)
    if cached is not None:
        return cached
    with workdps(dps + 10):
        n = order
        nodes: list[mpf] = [mpf(0)] * n
        weights: list[mpf] = [mpf(0)] * n
        iterations = max(6, int(math.log2(dps / 13.0) + 3) if dps > 13 else 6)
        for k in range(1, n // 2 + 2):
            x = mpf(math.cos(math.pi * (k - 0.25) / (n + 0.5)))
            for _ in range(iterations):
                p0, p1 = mpf(1), x
                for j in range(2, n + 1):
                    p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
                dp = n * (x * p1 - p0) / (x * x - 1)
                x -= p1 / dp
            p0, p1 = mpf(1), x
            for j in range(2, n + 1):
                p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
            dp = n * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes[k - 1] = (1 - x) / 2
            weights[k - 1] = w / 2
            nodes[n - k] = (1 + x) / 2
            weights[n - k] = w / 2
    _GL_CACHE[key] = (nodes, weights)
    return nodes, weights


# ---------------------------------------------------------------------------
# Panel layout for doubly-exponentially decaying kernels
# ---------------------------------------------------------------------------

def _kw_budget(order: int, digits10: float) -> float:
    """Largest kappa*width a GL rule of this order absorbs at 10^-digits10 accuracy.

    The 1.8 prefactor is an empirical fit against reference quadratures of the
    weighted Phi integrands (conservative across orders 16..128).
    """
    return 1.8 * order * 10.0 ** (-digits10 / (2.0 * order))


def _tile(u_max: float, kappa, cap: float, budget: float) -> list[float]:
    """Panel edges on [0, u_max]: width <= min(cap, budget / kappa(u))."""
    edges = [0.0]
    u = 0.0
    while u < u_max:
        w = min(cap, budget / kappa(u), u_max - u)
        w = max(w, u_max * 1e-6)
        u += w
        edges.append(min(u, u_max))
    edges[-1] = u_max
    return edges


@dataclass(frozen=True)
class QuadraturePlan:
    """Concrete panelization of [0, u_max] for one family integrand."""

    u_max: float
    panels: tuple[tuple[float, float], ...]
    nodes_per_panel: int
    tail_bound: float  # log10 of the omitted tail envelope

    def validate(self, z_abs: float, ctx: PrecisionContext) -> None:
        if abs(self.panels[0][0]) > 0 or abs(self.panels[-1][1] - self.u_max) > 1e-12 * self.u_max:
            raise TruncationError("panels do not tile [0, u_max]")
        for (a, b), (c, _) in zip(self.panels, self.panels[1:]):
            if abs(b - c) > 1e-12 * self.u_max:
                raise TruncationError("panels do not tile [0, u_max]")
        if z_abs > 1:
            half_period = math.pi / z_abs
            if max(b - a for a, b in self.panels) > half_period * (1 + 1e-9):
                raise TruncationError("panel width exceeds half the oscillation period")
        if self.tail_bound >= float(mp.log10(ctx.quad_tol)):
            raise TruncationError("tail bound exceeds quad_tol")


def quadrature_plan(m: int, lam, z, ctx: PrecisionContext | None = None) -> QuadraturePlan:
    """Plan for 2 int_0^umax exp(lam u^2) w_m(u) Phi(u) osc(z u) du."""
    ctx = resolve(ctx)
    z = as_mpc(z)
    z_abs = float(abs(z))
    im_z = abs(float(z.imag))
    kernel = PhiKernel.plan(m, lam, ctx, im_z=im_z)
    lam_f = float(lam)
    order = max(16, int(math.ceil(0.56 * ctx.dps)))
    budget = _kw_budget(order, ctx.dps + 10)
    m_kappa = abs(m) if m > 0 else 0

    def kappa(u: float) -> float:
        u_safe = max(u, 1e-3)
        return (
            4.5
            + 2 * math.pi * math.exp(2 * u)
            + 2 * abs(lam_f) * u
            + z_abs
            + m_kappa / u_safe
        )

    cap = math.pi / z_abs if z_abs > 1 else kernel.u_max
    edges = _tile(kernel.u_max, kappa, cap, budget)
    panels = tuple(zip(edges, edges[1:]))
    u = kernel.u_max
    tail_lg = (
        lam_f * u * u * LOG10_E
        + max(0.0, abs(m) * math.log10(u))
        + im_z * u * LOG10_E
        + phi_log10_bound(u)
    )
    return QuadraturePlan(u_max=kernel.u_max, panels=panels, nodes_per_panel=order, tail_bound=tail_lg)


# ---------------------------------------------------------------------------
# Family integrals
# ---------------------------------------------------------------------------

_KERNEL_CACHE: dict[tuple, tuple[QuadraturePlan, list[tuple[mpf, mpf]]]] = {}

E_SAFETY = math.e  # |Im z| bound for the Fourier route


def _bucket(x: float) -> float:
    """Round up to a power of two for cache friendliness."""
    if x <= 1.0:
        return 1.0
    return 2.0 ** math.ceil(math.log2(x))


def _kernel_table(m: int, lam_key: str, lam: mpf, z_abs: float, im_z: float, ctx: PrecisionContext):
    im_key = 0.0 if im_z == 0 else _bucket(max(im_z, 0.25))
    key = (m, lam_key, ctx.dps, _bucket(z_abs), im_key)
    hit = _KERNEL_CACHE.get(key)
    if hit is not None:
        return hit
    plan = quadrature_plan(m, lam, mpc(_bucket(z_abs), im_key), ctx)
    xs, ws = gauss_legendre_01(plan.nodes_per_panel, ctx.dps)
    table: list[tuple[mpf, mpf]] = []
    with workdps(ctx.dps + 5):
        tol_phi = mpf(10) ** (-(ctx.dps + 15))
        for a, b in plan.panels:
            a_m, w_m = mpf(a), mpf(b) - mpf(a)
            for xk, wk in zip(xs, ws):
                u = a_m + w_m * xk
                weight = wk * w_m * _phi_raw(u, tol_phi)
                if lam != 0:
                    weight *= mp.exp(lam * u * u)
                if m == -1:
                    weight /= u
                elif m > 0:
                    weight *= u ** m
                table.append((u, 2 * weight))
    _KERNEL_CACHE[key] = (plan, table)
    return plan, table


def xi_family(m: int, lam, z, ctx: PrecisionContext | None = None):
    """Deformation family member: 2 int_0^inf exp(lam u^2) w_m(u) Phi(u) osc_m(z u) du.

    (w_m, osc_m) is (u^(2n), (-1)^n cos) for m = 2n, (u^(2n-1), (-1)^n sin) for
    m = 2n - 1, and (1/u, sin) for m = -1.  Returns mpf for real z, mpc
    otherwise.  Requires |Im z| < e so the trig growth stays dominated by the
    kernel decay at the planned cutoff.
    """
    ctx = resolve(ctx)
    if int(m) != m or m < -1:
        raise DomainError("family index m must be an integer >= -1")
    m = int(m)
    with workdps(ctx.dps + 5):
        z = as_mpc(z)
        if not abs(z.imag) < E_SAFETY:
            raise DomainError(
                "xi_family requires |Im z| < e; evaluate via xi_inv_path off the real z-axis"
            )
        lam_m = mpf(str(lam)) if isinstance(lam, float) else mpf(lam)
        sign = 1 if (m % 2 == 0 and (m // 2) % 2 == 0) or (m % 2 == 1 and ((m + 1) // 2) % 2 == 0) else -1
        use_cos = m % 2 == 0 and m >= 0
        _, table = _kernel_table(m, mp.nstr(lam_m, 20), lam_m, float(abs(z)), abs(float(z.imag)), ctx)
        if z.imag == 0:
            zr = z.real
            osc = mp.cos if use_cos else mp.sin
            total = mpf(0)
            for u, w in table:
                total += w * osc(zr * u)
            return +(sign * total)
        osc_c = mp.cos if use_cos else mp.sin
        total_c = mpc(0)
        for u, w in table:
            total_c += w * osc_c(z * u)
        return +(sign * total_c)


# ---------------------------------------------------------------------------
# Path integral of xi
# ---------------------------------------------------------------------------

_PATH_ORDER = 12


def _path_eval_ctx(ctx: PrecisionContext) -> PrecisionContext:
    # xi values enter a long sum whose own truncation error dominates; a few
    # digits fewer on each integrand evaluation is invisible at quad_tol.
    return ctx if ctx.digits <= 30 else PrecisionContext(max(24, ctx.digits - 10))


def _segment_quad(a: mpc, b: mpc, panels: int, ctx: PrecisionContext, eval_ctx: PrecisionContext) -> mpc:
    xs, ws = gauss_legendre_01(_PATH_ORDER, ctx.dps)
    delta = (b - a) / panels
    total = mpc(0)
    for p in range(panels):
        base = a + p * delta
        acc = mpc(0)
        for xk, wk in zip(xs, ws):
            acc += wk * xi(base + xk * delta, eval_ctx)
        total += acc
    return total * delta


def _polyline_quad(points: list[mpc], ctx: PrecisionContext, tol: mpf) -> mpc:
    """Integral of xi along a polyline with per-segment Romberg-style doubling."""
    eval_ctx = _path_eval_ctx(ctx)
    with workdps(ctx.dps):
        total = mpc(0)
        seg_tol = tol / max(1, len(points) - 1)
        for a, b in zip(points, points[1:]):
            if a == b:
                continue
            panels = max(32, int(mp.ceil(8 * abs(b - a))))
            prev = _segment_quad(a, b, panels, ctx, eval_ctx)
            for _ in range(6):
                panels *= 2
                cur = _segment_quad(a, b, panels, ctx, eval_ctx)
                if abs(cur - prev) <= seg_tol:
                    total += cur
                    break
                prev = cur
            else:
                raise ConvergenceError("path quadrature did not stabilize at quad_tol")
        return total


def _path_tolerance(s: mpc, ctx: PrecisionContext) -> mpf:
    sigma_eff = max(s.real, 1 - s.real)  # |xi^(-1)| is symmetric about 1/2
    return ctx.quad_tol * max(mpf(1), f_estimate(sigma_eff, s.imag, ctx))


def xi_inv_path(s, alpha0=0, ctx: PrecisionContext | None = None) -> mpc:
    """alpha0 + int_{1/2}^{s} xi(w) dw along the straight segment.

    Panel count starts at max(32, ceil(8 |s - 1/2|)) and doubles until two
    successive refinements agree within quad_tol * max(1, F(Re s, Im s)).
    """
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        s = as_mpc(s)
        alpha0 = as_mpc(alpha0)
        half = mpc(mpf(1) / 2)
        if s == half:
            return alpha0
        tol = _path_tolerance(s, ctx)
        return +(alpha0 + _polyline_quad([half, s], ctx, tol))


def xi_inv_l_path(s, alpha0=0, ctx: PrecisionContext | None = None) -> mpc:
    """Same integral along the L-shaped polyline 1/2 -> Re s -> s (test route)."""
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        s = as_mpc(s)
        alpha0 = as_mpc(alpha0)
        half = mpc(mpf(1) / 2)
        if s == half:
            return alpha0
        corner = mpc(s.real)
        pts = [half, corner, s] if corner not in (half, s) else [half, s]
        tol = _path_tolerance(s, ctx)
        return +(alpha0 + _polyline_quad(pts, ctx, tol))


# ---------------------------------------------------------------------------
# Constants of the family
# ---------------------------------------------------------------------------

def a0(ctx: PrecisionContext | None = None) -> mpf:
    """Limit of the integral member on the real axis: pi * Phi(0) ~ 2.80668."""
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        return +(mp.pi * phi(0, ctx))


def limit_residual(lam, t, ctx: PrecisionContext | None = None) -> mpf:
    """|Xi_lam^(-1)(t) - pi Phi(0)| for t >= 3 (the stated validity range)."""
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        t = mpf(t)
        if not t >= 3:
            raise DomainError("limit_residual requires t >= 3")
        return +abs(xi_family(-1, lam, t, ctx) - a0(ctx))


# ---------------------------------------------------------------------------
# Even moments of Phi and the series route around s = 1/2
# ---------------------------------------------------------------------------

def _moment_peak(j: int) -> tuple[float, float]:
    """Float estimate of (peak location, log10 peak value) of u^(2j) Phi(u)."""
    if j == 0:
        return 0.0, math.log10(0.8934)
    u = 0.5 * math.log(max(2.0, j / math.pi))
    for _ in range(40):
        f = 2 * j / u - (2 * math.pi * math.exp(2 * u) - 4.5)
        df = -2 * j / (u * u) - 4 * math.pi * math.exp(2 * u)
        step = f / df
        u -= step
        if abs(step) < 1e-12:
            break
        u = max(u, 1e-3)
    return u, 2 * j * math.log10(u) + phi_log10_bound(u)


_LG_FACT: list[float] = [0.0]


def _lg_fact(n: int) -> float:
    """log10 n!, cached."""
    while len(_LG_FACT) <= n:
        _LG_FACT.append(_LG_FACT[-1] + math.log10(len(_LG_FACT)))
    return _LG_FACT[n]


def _moment_block(j_count: int, dps_m: int) -> tuple[list[mpf], list[float]]:
    """Moments c_2j = 2 int u^(2j) Phi du for j < j_count at dps_m working digits.

    One quadrature pass accumulates every moment from shared nodes; nodes left
    of a moment's support (in the 10^-(dps_m+8) sense) are skipped per j.
    """
    j_max = j_count - 1
    lg_peak = [_moment_peak(j)[1] for j in range(j_count)]
    # cutoff: largest u where the heaviest integrand still matters
    u = _moment_peak(j_max)[0] + 0.1
    while 2 * j_max * math.log10(u) + phi_log10_bound(u) > lg_peak[j_max] - dps_m - 12:
        u += 1.0 / 32
    u_max = u
    order = max(32, dps_m)
    budget = _kw_budget(order, dps_m + 10)

    def kappa(x: float) -> float:
        x_safe = max(x, 1e-3)
        return max(4.5 + 2 * math.pi * math.exp(2 * x), 2 * j_max / x_safe)

    edges = _tile(u_max, kappa, u_max, budget)
    xs, ws = gauss_legendre_01(order, dps_m)
    moments = [mpf(0)] * j_count
    with workdps(dps_m + 5):
        tol_phi = mpf(10) ** (-(dps_m + 15))
        for a, b in zip(edges, edges[1:]):
            a_m, w_m = mpf(a), mpf(b) - mpf(a)
            for xk, wk in zip(xs, ws):
                u_node = a_m + w_m * xk
                base = 2 * wk * w_m * _phi_raw(u_node, tol_phi)
                uf = float(u_node)
                lg_u = math.log10(uf) if uf > 0 else -400.0
                lg_base = float(mp.log10(abs(base))) if base != 0 else -9e9
                u2 = u_node * u_node
                power = mpf(1)
                for j in range(j_count):
                    if 2 * j * lg_u + lg_base < lg_peak[j] - dps_m - 8:
                        if lg_u < 0:
                            break  # later j only get smaller on this node
                        power *= u2
                        continue
                    moments[j] += base * power
                    power *= u2
    lgs = []
    with workdps(dps_m):
        for j in range(j_count):
            moments[j] = +moments[j]
            lgs.append(float(mp.log10(moments[j])))
    return moments, lgs


def taylor_coeff(j: int, ctx: PrecisionContext | None = None) -> mpf:
    """Taylor coefficient c_2j = 2 int_0^inf u^(2j) Phi(u) du (positive); j <= 64."""
    ctx = resolve(ctx)
    if int(j) != j or j < 0:
        raise DomainError("j must be a non-negative integer")
    if j > 64:
        raise DomainError("moment cap exceeded: j must be <= 64")
    route = TaylorRoute.shared(ctx)
    route.ensure_terms(int(j) + 1)
    with workdps(ctx.dps):
        return +route.moments[int(j)]


class TaylorRoute:
    """Series route for xi^(-1) and xi around s = 1/2 from even Phi moments.

    Evaluations pick their own working precision: the series of positive
    coefficients bounds its largest term at radius r, and the gap between
    that bound and the requested absolute accuracy sets the guard digits.
    Used by the zero search, where path quadrature would be prohibitive.
    """

    _shared: dict[tuple[int, int], "TaylorRoute"] = {}

    def __init__(self, ctx: PrecisionContext, r_max: float = 8.0):
        self.ctx = ctx
        self.r_max = 0.0
        self.moments: list[mpf] = []
        self.lg_moments: list[float] = []
        self.dps_m = 0
        self._grow(r_max)

    @classmethod
    def shared(cls, ctx: PrecisionContext, r_max: float = 8.0) -> "TaylorRoute":
        key = (ctx.digits, ctx.dps)
        route = cls._shared.get(key)
        if route is None:
            route = cls(ctx, r_max)
            cls._shared[key] = route
        elif r_max > route.r_max:
            route._grow(r_max)
        return route

    # -- sizing ------------------------------------------------------------

    def _terms_for(self, r: float) -> int:
        """First index J where the tail at radius r is below the target and shrinking."""
        target = -(self.ctx.digits + 14)
        lg_r = math.log10(max(r, 1e-3))
        j = 0
        while True:
            lg_term = self._lg_term_est(j, lg_r)
            if lg_term < target:
                nxt = self._lg_term_est(j + 1, lg_r)
                if nxt < lg_term and nxt - lg_term < -0.3:  # ratio <= ~1/2
                    return j + 2
            j += 1
            if j > 5000:
                raise TruncationError("series for xi^(-1) will not converge at this radius")

    @staticmethod
    def _lg_term_est(j: int, lg_r: float) -> float:
        lg_c = _moment_peak(j)[1] + math.log10(0.6)  # peak value x effective width
        return lg_c + (2 * j + 1) * lg_r - _lg_fact(2 * j + 1)

    def _grow(self, r_max: float) -> None:
        r_max = max(r_max, 4.0)
        j_count = self._terms_for(r_max)
        lg_sum = self._lg_sum_est(r_max, j_count)
        dps_m = self.ctx.dps + 18 + max(0, math.ceil(lg_sum))
        self.moments, self.lg_moments = _moment_block(j_count, dps_m)
        self.dps_m = dps_m
        self.r_max = r_max

    def _lg_sum_est(self, r: float, j_count: int) -> float:
        lg_r = math.log10(max(r, 1e-3))
        return max(self._lg_term_est(j, lg_r) for j in range(j_count)) + math.log10(j_count)

    def ensure_terms(self, j_count: int) -> None:
        while len(self.moments) < j_count:
            self._grow(max(self.r_max * 1.5, 8.0))

    def ensure_radius(self, r: float) -> None:
        if r > self.r_max:
            self._grow(r * 1.25)

    # -- evaluation ----------------------------------------------------------

    def _eval(self, s, shift: int):
        """Sum c_2j w^(2j+shift) / (2j+shift)! at w = s - 1/2 (shift 1: xi^(-1), 0: xi)."""
        s = as_mpc(s)
        with workdps(self.dps_m):
            w = s - mpf(1) / 2
        r = float(abs(w))
        self.ensure_radius(r)
        lg_r = math.log10(max(r, 1e-300)) if r > 0 else -9e9
        if r == 0:
            return mpc(self.moments[0]) if shift == 0 else mpc(0)
        # largest term sets the cancellation guard
        lg_terms = [
            self.lg_moments[j] + (2 * j + shift) * lg_r - _lg_fact(2 * j + shift)
            for j in range(len(self.moments))
        ]
        lg_peak = max(lg_terms)
        target = -(self.ctx.digits + 12)
        j_top = len(lg_terms) - 1
        while j_top > 1 and lg_terms[j_top] < target and lg_terms[j_top - 1] < target:
            j_top -= 1
        if j_top >= len(self.moments) - 1:
            self.ensure_terms(len(self.moments) + 16)
            return self._eval(s, shift)
        dps_eval = self.ctx.dps + 14 + max(0, math.ceil(lg_peak))
        dps_eval = 8 * math.ceil(dps_eval / 8)  # bucket so factorial tables are reused
        with workdps(dps_eval):
            w = as_mpc(s) - mpf(1) / 2
            w2 = w * w
            acc = mpc(0)
            fact = _factorials(2 * j_top + shift + 1, dps_eval)
            for j in range(j_top, -1, -1):
                acc = acc * w2 + self.moments[j] / fact[2 * j + shift]
            acc *= w if shift == 1 else 1
            return +acc

    def xi_inv(self, s) -> mpc:
        """Series value of int_{1/2}^s xi, absolute error ~ 10^-(digits+10)."""
        return self._eval(s, 1)

    def xi(self, s) -> mpc:
        """Series value of xi(s) itself from the same moments."""
        return self._eval(s, 0)


_FACT_CACHE: dict[int, list[mpf]] = {}


def _factorials(n: int, dps: int) -> list[mpf]:
    key = dps
    table = _FACT_CACHE.setdefault(key, [mpf(1), mpf(1)])
    if len(table) <= n:
        with workdps(dps):
            for m in range(len(table), n + 1):
                table.append(table[-1] * m)
    return table
