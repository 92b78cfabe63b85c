"""Value-set location for the integral of xi: V(xi^(-1); alpha0) = {s : xi_inv(s) = alpha0}.

Rectangles are counted by the argument principle (adaptive boundary walk with
per-step turn under pi/2), quadrisected until single zeros are isolated, and
the leaves polished by Newton iteration using d/ds xi^(-1) = xi.  The search
itself runs on the fast series route; every accepted record is certified
afterwards by the independent path quadrature.

Zeros sitting exactly on the critical line cannot be certified by a winding
number whose contour passes through them, so for purely imaginary alpha0 a 1-D
sign scan of the real restriction -i xi^(-1)(1/2 + i t) - (-i alpha0)
cross-checks the on-line members.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from mpmath import mp, mpc, mpf, workdps

from .errors import (
    BoundaryTooCloseError,
    ConvergenceError,
    DerivativeVanishesError,
    DomainError,
)
from .precision import PrecisionContext, as_mpc, resolve
from .xi_core import f_estimate
from .xi_integrals import TaylorRoute, xi_family, xi_inv_path

__all__ = [
    "Rect",
    "ZeroRecord",
    "MonotonicityReport",
    "count_zeros_in_rect",
    "refine_zero",
    "find_value_set",
    "real_axis_zero_scan",
    "predicted_sigma",
    "symmetry_orbit",
    "orbit_with_tags",
    "monotonicity_report",
]

FOUR_PI_E = 4 * math.pi * math.e  # ~34.1588, the location-law cutoff height

_NUDGE_SEQUENCE = ("0.001", "-0.001", "0.002", "-0.002", "0.003")


@dataclass(frozen=True)
class Rect:
    """Axis-aligned search rectangle [sigma_lo, sigma_hi] x [t_lo, t_hi]."""

    sigma_lo: mpf
    sigma_hi: mpf
    t_lo: mpf
    t_hi: mpf

    def __post_init__(self):
        for name in ("sigma_lo", "sigma_hi", "t_lo", "t_hi"):
            object.__setattr__(self, name, mpf(getattr(self, name)))
        if not (self.sigma_lo < self.sigma_hi and self.t_lo < self.t_hi):
            raise DomainError("rect requires sigma_lo < sigma_hi and t_lo < t_hi")

    @property
    def width(self) -> mpf:
        return self.sigma_hi - self.sigma_lo

    @property
    def height(self) -> mpf:
        return self.t_hi - self.t_lo

    def corners(self) -> list[mpc]:
        """Counterclockwise from the lower-left corner."""
        return [
            mpc(self.sigma_lo, self.t_lo),
            mpc(self.sigma_hi, self.t_lo),
            mpc(self.sigma_hi, self.t_hi),
            mpc(self.sigma_lo, self.t_hi),
        ]

    def center(self) -> mpc:
        return mpc((self.sigma_lo + self.sigma_hi) / 2, (self.t_lo + self.t_hi) / 2)

    def max_corner_radius(self) -> float:
        return max(float(abs(c - mpf(1) / 2)) for c in self.corners())


@dataclass
class ZeroRecord:
    """A located value-set member with its certificate."""

    alpha0: mpc
    location: mpc
    residual: mpf
    iterations: int
    orbit: str = "base"


@dataclass
class MonotonicityReport:
    sigma_monotone: bool
    t_monotone: bool
    sigma_diffs: list = field(default_factory=list)
    t_diffs: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Argument-principle counting
# ---------------------------------------------------------------------------

class _Search:
    """Shared evaluation state: series route, sample cache, tolerances."""

    def __init__(self, alpha0: mpc, ctx: PrecisionContext, radius_hint: float):
        self.ctx = ctx
        self.alpha0 = alpha0
        self.route = TaylorRoute.shared(ctx)
        self.route.ensure_radius(radius_hint)
        self.cache: dict[tuple, mpc] = {}
        self.evaluations = 0

    def value(self, p: mpc) -> mpc:
        key = (p.real, p.imag)
        f = self.cache.get(key)
        if f is None:
            f = self.route.xi_inv(p) - self.alpha0
            self.cache[key] = f
            self.evaluations += 1
        return f


def _min_modulus(rect: Rect, ctx: PrecisionContext) -> mpf:
    """10^(-digits/2) scaled by the magnitude estimate at the far corner.

    The largest-sigma corner is taken with the larger |t|; the smaller-|t|
    corner would put the threshold above honest boundary values near s = 1/2
    whenever the rectangle is wide.  Left of the critical line the magnitude
    mirrors through sigma -> 1 - sigma, so the effective corner abscissa is
    max(sigma_hi, 1 - sigma_lo).
    """
    with workdps(ctx.dps):
        sigma_eff = max(rect.sigma_hi, 1 - rect.sigma_lo)
        scale = max(
            mpf(1),
            f_estimate(sigma_eff, max(abs(rect.t_lo), abs(rect.t_hi)), ctx),
        )
        return mpf(10) ** (-mpf(ctx.digits) / 2) * scale


def _edge_turn(state: _Search, a: mpc, b: mpc, min_mod: mpf) -> mpf:
    """Signed phase turn of xi^(-1) - alpha0 along segment [a, b].

    Splits adaptively until each step turns by less than pi/2; each sample is
    held to the minimum-modulus precondition.
    """
    cap = mp.pi / 2
    fa = state.value(a)
    fb = state.value(b)
    total = mpf(0)
    stack = [(a, fa, b, fb, 0)]
    while stack:
        p, fp, q, fq, depth = stack.pop()
        if abs(fp) < min_mod:
            raise BoundaryTooCloseError("boundary sample too close to a zero", point=p)
        if abs(fq) < min_mod:
            raise BoundaryTooCloseError("boundary sample too close to a zero", point=q)
        delta = mp.arg(fq / fp)
        if abs(delta) < cap:
            total += delta
            continue
        if depth >= 20:
            raise BoundaryTooCloseError(
                "phase step cannot be brought under pi/2", point=(p + q) / 2
            )
        mid = (p + q) / 2
        fm = state.value(mid)
        stack.append((mid, fm, q, fq, depth + 1))
        stack.append((p, fp, mid, fm, depth + 1))
    return total


_INITIAL_STEP = mpf("0.5")


def _winding(state: _Search, rect: Rect, min_mod: mpf) -> int:
    total = mpf(0)
    corners = rect.corners()
    for a, b in zip(corners, corners[1:] + corners[:1]):
        length = abs(b - a)
        pieces = max(2, int(mp.ceil(length / _INITIAL_STEP)))
        for j in range(pieces):
            p = a + (b - a) * j / pieces
            q = b if j == pieces - 1 else a + (b - a) * (j + 1) / pieces
            total += _edge_turn(state, p, q, min_mod)
    two_pi = 2 * mp.pi
    w = int(mp.nint(total / two_pi))
    if abs(total - w * two_pi) > mpf("0.2"):
        raise BoundaryTooCloseError(
            "phase tracking inconsistent around the contour", point=None
        )
    return w


def count_zeros_in_rect(alpha0, rect: Rect, ctx: PrecisionContext | None = None) -> int:
    """Winding number of xi^(-1)(s) - alpha0 around the rectangle boundary."""
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        alpha0 = as_mpc(alpha0)
        state = _Search(alpha0, ctx, rect.max_corner_radius())
        return _winding(state, rect, _min_modulus(rect, ctx))


# ---------------------------------------------------------------------------
# Newton refinement and the path-route certificate
# ---------------------------------------------------------------------------

def refine_zero(
    seed,
    alpha0,
    ctx: PrecisionContext | None = None,
    certify: bool = True,
) -> ZeroRecord:
    """Newton-polish a seed: s <- s - (xi^(-1)(s) - alpha0) / xi(s).

    Stops when |step| < 10^(-digits+10) (or errors after 60 iterations); the
    residual is then evaluated by the path route, independent of the series
    used during iteration.
    """
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        alpha0 = as_mpc(alpha0)
        s = as_mpc(seed)
        route = TaylorRoute.shared(ctx)
        route.ensure_radius(float(abs(s - mpf(1) / 2)) + 2.0)
        step_tol = mpf(10) ** (-(ctx.digits - 10))
        vanish_floor = mpf(10) ** (-mpf(ctx.digits) / 2)
        for iteration in range(1, 61):
            f = route.xi_inv(s) - alpha0
            fp = route.xi(s)
            scale = max(mpf(1), f_estimate(max(s.real, 1 - s.real), s.imag, ctx))
            if abs(fp) < vanish_floor * scale:
                raise DerivativeVanishesError(
                    f"xi vanishes near iterate {mp.nstr(s, 20)}; Newton step undefined"
                )
            delta = f / fp
            s = s - delta
            if abs(delta) < step_tol:
                break
        else:
            raise ConvergenceError("Newton did not converge within 60 iterations")
        record = ZeroRecord(
            alpha0=alpha0, location=+s, residual=mpf(0), iterations=iteration
        )
        if certify:
            _certify_record(record, ctx)
            _orbit_insertion_check(record, route, ctx)
        return record


def _certify_record(record: ZeroRecord, ctx: PrecisionContext) -> None:
    with workdps(ctx.dps):
        record.residual = abs(xi_inv_path(record.location, 0, ctx) - record.alpha0)
        if not record.residual <= mpf(10) ** (-mpf(ctx.digits) / 2):
            raise ConvergenceError(
                f"path-route residual {mp.nstr(record.residual, 5)} exceeds certificate bound"
            )


def _orbit_insertion_check(record: ZeroRecord, route: TaylorRoute, ctx: PrecisionContext) -> None:
    """For alpha0 = 0 the symmetry orbit must consist of zeros as well."""
    if record.alpha0 != 0:
        return
    with workdps(ctx.dps):
        for member in symmetry_orbit(record.location):
            if abs(route.xi_inv(member)) > mpf("1e-4"):
                raise ConvergenceError("symmetry-orbit member fails the zero check")


def _certify_worker(args: tuple[tuple[str, str], tuple[str, str], int]) -> str:
    (loc_re, loc_im), (a_re, a_im), digits = args
    ctx = PrecisionContext(digits)
    with workdps(ctx.dps):
        location = mpc(mpf(loc_re), mpf(loc_im))
        alpha0 = mpc(mpf(a_re), mpf(a_im))
        residual = abs(xi_inv_path(location, 0, ctx) - alpha0)
        return mp.nstr(residual, 20)


def _pair(value: mpc, dps: int) -> tuple[str, str]:
    return mp.nstr(value.real, dps), mp.nstr(value.imag, dps)


# ---------------------------------------------------------------------------
# Recursive quadrisection
# ---------------------------------------------------------------------------

_LEAF_SIZE = mpf("0.25")
_MIN_CELL = mpf("0.001")


def _counted(state: _Search, rect: Rect, ctx: PrecisionContext) -> int:
    return _winding(state, rect, _min_modulus(rect, ctx))


def _split(
    state: _Search, rect: Rect, expected: int, ctx: PrecisionContext
) -> tuple[list[Rect], list[int]]:
    """Quadrisect with deterministic cut nudges when a cut grazes a zero.

    A child-count sum that misses the parent count means a zero sits close
    enough to a cut to escape both walks, so it is retried like a boundary
    graze.
    """
    base_sc = (rect.sigma_lo + rect.sigma_hi) / 2
    base_tc = (rect.t_lo + rect.t_hi) / 2
    offsets = [mpf(0)] + [mpf(d) for d in _NUDGE_SEQUENCE]
    last: Exception | None = None
    for off in offsets:
        sc = base_sc + off
        tc = base_tc + off
        children = [
            Rect(rect.sigma_lo, sc, rect.t_lo, tc),
            Rect(sc, rect.sigma_hi, rect.t_lo, tc),
            Rect(rect.sigma_lo, sc, tc, rect.t_hi),
            Rect(sc, rect.sigma_hi, tc, rect.t_hi),
        ]
        try:
            counts = [_counted(state, child, ctx) for child in children]
        except BoundaryTooCloseError as exc:
            last = exc
            continue
        if sum(counts) != expected:
            last = BoundaryTooCloseError(
                "child counts do not recombine across the cut", point=rect.center()
            )
            continue
        return children, counts
    raise last if last is not None else ConvergenceError("quadrisection failed")


def _subdivide(
    state: _Search,
    rect: Rect,
    count: int,
    ctx: PrecisionContext,
    trace: list | None,
    depth: int = 0,
) -> list[mpc]:
    if count == 0:
        return []
    if count == 1 and max(rect.width, rect.height) <= _LEAF_SIZE:
        return [rect.center()]
    if max(rect.width, rect.height) <= _MIN_CELL:
        raise ConvergenceError(
            f"cluster of {count} zeros unresolved at cell size {mp.nstr(rect.width, 3)}"
        )
    children, counts = _split(state, rect, count, ctx)
    if trace is not None:
        trace.append(
            {
                "depth": depth,
                "rect": rect,
                "count": count,
                "child_counts": tuple(counts),
            }
        )
    seeds: list[mpc] = []
    for child, child_count in zip(children, counts):
        seeds.extend(_subdivide(state, child, child_count, ctx, trace, depth + 1))
    return seeds


def _nudged_rect(rect: Rect, point: mpc | None, offset: mpf) -> Rect:
    """Move whichever rectangle edge is nearest the offending sample.

    Without a localized sample (inconsistent phase totals), all four edges
    move outward by |offset| instead.
    """
    values = {
        "sigma_lo": rect.sigma_lo,
        "sigma_hi": rect.sigma_hi,
        "t_lo": rect.t_lo,
        "t_hi": rect.t_hi,
    }
    if point is None:
        grow = abs(offset)
        return Rect(
            rect.sigma_lo - grow, rect.sigma_hi + grow, rect.t_lo - grow, rect.t_hi + grow
        )
    gaps = {
        "sigma_lo": abs(point.real - rect.sigma_lo),
        "sigma_hi": abs(point.real - rect.sigma_hi),
        "t_lo": abs(point.imag - rect.t_lo),
        "t_hi": abs(point.imag - rect.t_hi),
    }
    edge = min(gaps, key=lambda k: (gaps[k], k))
    values[edge] = values[edge] + offset
    return Rect(**values)


def find_value_set(
    alpha0,
    rect: Rect,
    ctx: PrecisionContext | None = None,
    jobs: int = 1,
    trace: list | None = None,
) -> list[ZeroRecord]:
    """All members of V(xi^(-1); alpha0) inside rect, refined and certified.

    Quadrisection leaves holding one zero are polished by Newton; the list
    comes back sorted by |location - 1/2|.  Boundary grazes are retried with
    the deterministic nudge sequence before giving up.
    """
    ctx = resolve(ctx)
    if jobs < 1:
        raise DomainError("jobs must be >= 1")
    with workdps(ctx.dps):
        alpha0 = as_mpc(alpha0)
        state = _Search(alpha0, ctx, rect.max_corner_radius())
        work = rect
        seeds: list[mpc] | None = None
        nudges = [mpf(d) for d in _NUDGE_SEQUENCE]
        for attempt in range(len(nudges) + 1):
            if trace is not None:
                trace.clear()
            try:
                total = _counted(state, work, ctx)
                seeds = _subdivide(state, work, total, ctx, trace)
                break
            except BoundaryTooCloseError as exc:
                if attempt == len(nudges):
                    raise
                work = _nudged_rect(rect, exc.point, nudges[attempt])
        assert seeds is not None
        records = [refine_zero(seed, alpha0, ctx, certify=False) for seed in seeds]
        records = _merge_online_records(records, alpha0, work, ctx)
        _run_certificates(records, ctx, jobs)
        route = TaylorRoute.shared(ctx)
        for record in records:
            _orbit_insertion_check(record, route, ctx)
        half = mpf(1) / 2
        records.sort(key=lambda r: abs(r.location - half))
        return records


def _run_certificates(records: list[ZeroRecord], ctx: PrecisionContext, jobs: int) -> None:
    if jobs == 1 or len(records) < 2:
        for record in records:
            _certify_record(record, ctx)
        return
    args = [
        (_pair(r.location, ctx.dps + 5), _pair(r.alpha0, ctx.dps + 5), ctx.digits)
        for r in records
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        residuals = list(pool.map(_certify_worker, args))
    bound = mpf(10) ** (-mpf(ctx.digits) / 2)
    for record, res in zip(records, residuals):
        record.residual = mpf(res)
        if not record.residual <= bound:
            raise ConvergenceError("path-route residual exceeds certificate bound")


def _merge_online_records(
    records: list[ZeroRecord], alpha0: mpc, rect: Rect, ctx: PrecisionContext
) -> list[ZeroRecord]:
    """Cross-check on-line zeros by 1-D sign scan when alpha0 is purely imaginary."""
    if alpha0.real != 0 or alpha0 == 0:
        return records
    if not (rect.sigma_lo < mpf(1) / 2 < rect.sigma_hi):
        return records
    level = alpha0.imag  # -i*alpha0 restricted to the line is Xi^(-1)(t) - level
    lo = max(rect.t_lo, mpf("0.001"))
    roots = _line_roots(lambda t: xi_family(-1, 0, t, ctx) - level, lo, rect.t_hi, ctx)
    half = mpf(1) / 2
    for t_star in roots:
        near = [r for r in records if abs(r.location - mpc(half, t_star)) < mpf("0.01")]
        if not near:
            records.append(refine_zero(mpc(half, t_star), alpha0, ctx, certify=False))
    return records


# ---------------------------------------------------------------------------
# Real-axis scan of the family
# ---------------------------------------------------------------------------

def _line_roots(func, lo: mpf, hi: mpf, ctx: PrecisionContext, step=mpf("0.05")) -> list[mpf]:
    """Sign changes of a real function on [lo, hi]; bisection to 1e-10."""
    roots: list[mpf] = []
    n = int(mp.ceil((hi - lo) / step))
    prev_t, prev_v = lo, func(lo)
    for j in range(1, n + 1):
        t = min(lo + j * step, hi)
        v = func(t)
        if prev_v == 0:
            roots.append(prev_t)
        elif prev_v != 0 and v != 0 and mp.sign(v) != mp.sign(prev_v):
            a, b, fa = prev_t, t, prev_v
            while b - a > mpf("1e-10"):
                m = (a + b) / 2
                fm = func(m)
                if fm == 0:
                    a = b = m
                elif mp.sign(fm) == mp.sign(fa):
                    a, fa = m, fm
                else:
                    b = m
            roots.append((a + b) / 2)
        prev_t, prev_v = t, v
    return roots


def real_axis_zero_scan(lam, t_max, ctx: PrecisionContext | None = None) -> list[mpf]:
    """Zeros of t -> Xi_lam^(-1)(t) on [0, t_max]: the forced zero at 0 plus sign changes."""
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        t_max = mpf(t_max)
        if not t_max <= 500:
            raise DomainError("t_max above the practical budget of 500")
        if not t_max > 0:
            raise DomainError("t_max must be positive")
        zeros = [mpf(0)]
        zeros.extend(
            _line_roots(lambda t: xi_family(-1, lam, t, ctx), mpf("0.05"), t_max, ctx)
        )
        return zeros


# ---------------------------------------------------------------------------
# Location law, symmetry, monotonicity
# ---------------------------------------------------------------------------

def predicted_sigma(t, ctx: PrecisionContext | None = None) -> mpf:
    """Leading-order distance law (pi/2) t / log t, valid from t = 4 pi e up."""
    ctx = resolve(ctx)
    with workdps(ctx.dps):
        t = mpf(t)
        if t < FOUR_PI_E * (1 - mpf("1e-12")):
            raise DomainError("predicted_sigma requires t >= 4 pi e")
        return +(mp.pi / 2 * t / mp.log(t))


def symmetry_orbit(rho) -> set[mpc]:
    """Orbit {rho, conj(rho), 1 - rho, 1 - conj(rho)}; degenerates on symmetry loci."""
    rho = as_mpc(rho)
    return {rho, mp.conj(rho), 1 - rho, 1 - mp.conj(rho)}


def orbit_with_tags(rho) -> list[tuple[mpc, str]]:
    """Orbit members with their provenance tags, deduplicated in a fixed order."""
    rho = as_mpc(rho)
    labelled = [
        (rho, "base"),
        (1 - rho, "reflected"),
        (mp.conj(rho), "conjugate"),
        (1 - mp.conj(rho), "reflected-conjugate"),
    ]
    seen: set = set()
    out = []
    for point, tag in labelled:
        if point not in seen:
            seen.add(point)
            out.append((point, tag))
    return out


def monotonicity_report(zeros) -> MonotonicityReport:
    """Do sigma_n and t_n both increase along zeros ordered by |rho|?

    Accepts ZeroRecords or bare complex locations; single-element input is
    vacuously monotone.  First differences come back for trend inspection.
    """
    locs = [as_mpc(getattr(z, "location", z)) for z in zeros]
    sigma_diffs = [b.real - a.real for a, b in zip(locs, locs[1:])]
    t_diffs = [b.imag - a.imag for a, b in zip(locs, locs[1:])]
    return MonotonicityReport(
        sigma_monotone=all(d > 0 for d in sigma_diffs),
        t_monotone=all(d > 0 for d in t_diffs),
        sigma_diffs=sigma_diffs,
        t_diffs=t_diffs,
    )
