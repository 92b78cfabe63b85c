"""Command-line front end: constants, point evaluation, zero search, scans,
and reproduction of the catalogued zero table.

Emits CSV (default) or JSON carrying the same string payload, printed with
digits - 5 significant figures so that no noise digits below the certified
accuracy reach the output.  Exit codes: 0 ok, 1 check mismatch, 2 usage,
3 numeric domain failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys

from mpmath import mp, mpc, mpf, workdps

from .errors import XiLabError
from .precision import PrecisionContext
from .reference_data import table1_zeros
from .special_functions import phi, phi_theta_form, theta
from .xi_core import xi
from .xi_integrals import TaylorRoute, a0, taylor_coeff, xi_family, xi_inv_path
from .zero_lab import Rect, find_value_set, monotonicity_report, orbit_with_tags, real_axis_zero_scan

TABLE1_RECT = ("0.501", "60", "0.001", "105")

_COMPLEX_RE = re.compile(
    r"^\s*(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"\s*(?P<im>[+-]\s*(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)?\s*(?P<i>[ij])?\s*$"
)


class UsageError(ValueError):
    pass


def parse_complex(text: str) -> mpc:
    """Parse 'a+bi' style literals (also bare reals and bare imaginaries)."""
    cleaned = text.strip().replace(" ", "")
    if not cleaned:
        raise UsageError("empty complex literal")
    m = re.match(
        r"^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
        r"(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)?(?P<unit>[ij])?$",
        cleaned,
    )
    if m is None:
        raise UsageError(f"cannot parse complex literal {text!r}")
    re_part, im_part, unit = m.group("re"), m.group("im"), m.group("unit")
    if im_part is not None:
        if unit is None:
            raise UsageError(f"missing imaginary unit in {text!r}")
        if im_part in ("+", "-"):
            im_part += "1"
        return mpc(mpf(re_part), mpf(im_part))
    if unit is not None:  # pure imaginary like '2i'
        return mpc(0, mpf(re_part))
    return mpc(mpf(re_part), 0)


def parse_rect(text: str) -> Rect:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("--rect expects four comma-separated numbers a,b,c,d")
    try:
        return Rect(*(mpf(p.strip()) for p in parts))
    except (ValueError, XiLabError) as exc:
        raise UsageError(f"bad rectangle {text!r}: {exc}") from exc


def resolve_alpha0(token: str, ctx: PrecisionContext) -> mpc:
    """'0', '+iA0'/'-iA0' (symbolic, resolved at the working precision), or a literal."""
    t = token.strip()
    if t == "0":
        return mpc(0)
    if t in ("+iA0", "iA0"):
        return mpc(0, a0(ctx))
    if t == "-iA0":
        return mpc(0, -a0(ctx))
    return parse_complex(t)


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------

def _fmt(value, ctx: PrecisionContext) -> str:
    with workdps(ctx.dps):
        return mp.nstr(mpf(value) if not isinstance(value, (mpf, mpc)) else value,
                       max(6, ctx.digits - 5))


def emit(fieldnames: list[str], rows: list[dict], args) -> None:
    if args.format == "json":
        payload = json.dumps([{k: r.get(k, "") for k in fieldnames} for r in rows], indent=2)
        text = payload + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: r.get(k, "") for k in fieldnames})
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_constants(args, ctx: PrecisionContext) -> int:
    with workdps(ctx.dps):
        pi = mp.pi
        th1 = theta(1, 0, ctx)
        th1p = theta(1, 1, ctx)
        th1pp = theta(1, 2, ctx)
        phi0 = phi(0, ctx)
        phi0_alt = phi_theta_form(0, ctx)
        a_direct = pi * phi0
        a_theta = pi / 2 * (4 * th1pp + 6 * th1p)
        xi_half = xi(mpf(1) / 2, ctx).real
        xi_half_alt = taylor_coeff(0, ctx)
        rows = [
            {"name": "A0", "value": a_direct, "alt_value": a_theta, "delta": abs(a_direct - a_theta)},
            {"name": "phi(0)", "value": phi0, "alt_value": phi0_alt, "delta": abs(phi0 - phi0_alt)},
            {"name": "xi(1/2)", "value": xi_half, "alt_value": xi_half_alt, "delta": abs(xi_half - xi_half_alt)},
            {"name": "theta(1)", "value": th1, "alt_value": "", "delta": ""},
            {"name": "theta'(1)", "value": th1p, "alt_value": "", "delta": ""},
            {"name": "theta''(1)", "value": th1pp, "alt_value": "", "delta": ""},
        ]
    out = []
    for r in rows:
        out.append(
            {
                "name": r["name"],
                "value": _fmt(r["value"], ctx),
                "alt_value": _fmt(r["alt_value"], ctx) if r["alt_value"] != "" else "",
                "delta": _fmt(r["delta"], ctx) if r["delta"] != "" else "",
            }
        )
    emit(["name", "value", "alt_value", "delta"], out, args)
    return 0


def cmd_eval(args, ctx: PrecisionContext) -> int:
    with workdps(ctx.dps):
        if args.target == "xi":
            if args.s is None:
                raise UsageError("eval xi requires --s")
            value = xi(parse_complex(args.s), ctx)
        elif args.target == "xiinv":
            if args.s is None:
                raise UsageError("eval xiinv requires --s")
            value = xi_inv_path(parse_complex(args.s), 0, ctx)
        else:
            if args.z is None:
                raise UsageError("eval family requires --z")
            value = xi_family(args.m, mpf(args.lam), parse_complex(args.z), ctx)
            value = mpc(value)
        row = {"re": _fmt(value.real, ctx), "im": _fmt(value.imag, ctx), "abs": _fmt(abs(value), ctx)}
    emit(["re", "im", "abs"], [row], args)
    return 0


def cmd_zeros(args, ctx: PrecisionContext) -> int:
    with workdps(ctx.dps):
        alpha0 = resolve_alpha0(args.alpha0, ctx)
        rect = parse_rect(args.rect)
        records = find_value_set(alpha0, rect, ctx, jobs=args.jobs)
        entries = []
        for rec in records:
            entries.append((rec.location, rec.residual, rec.orbit))
            if args.full_plane and alpha0 == 0:
                route = TaylorRoute.shared(ctx)
                for point, tag in orbit_with_tags(rec.location):
                    if tag == "base":
                        continue
                    entries.append((point, abs(route.xi_inv(point) - alpha0), tag))
        entries.sort(key=lambda e: (abs(e[0]), e[2]))
        rows = []
        for idx, (point, residual, tag) in enumerate(entries, start=1):
            rows.append(
                {
                    "idx": str(idx),
                    "re": _fmt(point.real, ctx),
                    "im": _fmt(point.imag, ctx),
                    "abs": _fmt(abs(point), ctx),
                    "residual": _fmt(residual, ctx),
                    "orbit": tag,
                }
            )
    emit(["idx", "re", "im", "abs", "residual", "orbit"], rows, args)
    return 0


def cmd_scan_real(args, ctx: PrecisionContext) -> int:
    with workdps(ctx.dps):
        if mpf(args.tmax) > 500:
            raise UsageError("--tmax above the practical budget of 500")
        zeros = real_axis_zero_scan(mpf(args.lam), mpf(args.tmax), ctx)
        rows = [{"lambda": _fmt(mpf(args.lam), ctx), "t_zero": _fmt(t, ctx)} for t in zeros]
    emit(["lambda", "t_zero"], rows, args)
    return 0


def cmd_table1(args, ctx: PrecisionContext) -> int:
    reference = table1_zeros()
    with workdps(ctx.dps):
        rect = Rect(*(mpf(v) for v in TABLE1_RECT))
        records = find_value_set(0, rect, ctx, jobs=args.jobs)
        records.sort(key=lambda r: abs(r.location))
        computed = records[:20]
        if len(computed) < 20:
            sys.stderr.write(f"only {len(computed)} zeros located in the search region\n")
            return 1
        rows = []
        mismatches = []
        report = monotonicity_report(computed)
        prev = None
        for k, rec in enumerate(computed, start=1):
            ref = reference[k]
            d_re = abs(rec.location.real - mpf(repr(ref.rho_re)))
            d_im = abs(rec.location.imag - mpf(repr(ref.rho_im)))
            delta = max(d_re, d_im)
            ok = delta < mpf("1e-5")
            if not ok:
                mismatches.append((k, float(delta)))
            gamma_tilde = (mpf(repr(ref.gamma_odd)) + mpf(repr(ref.gamma_even))) / 2
            rows.append(
                {
                    "k": str(k),
                    "re": _fmt(rec.location.real, ctx),
                    "im": _fmt(rec.location.imag, ctx),
                    "abs": _fmt(abs(rec.location), ctx),
                    "ref_re": f"{ref.rho_re:.5f}",
                    "ref_im": f"{ref.rho_im:.5f}",
                    "delta": _fmt(delta, ctx),
                    "gamma_tilde": _fmt(gamma_tilde, ctx),
                    "residual": _fmt(rec.residual, ctx),
                    "sigma_up": str(prev is None or rec.location.real > prev.real).lower(),
                    "t_up": str(prev is None or rec.location.imag > prev.imag).lower(),
                }
            )
            prev = rec.location
        rows.append(
            {
                "k": "monotone",
                "re": "",
                "im": "",
                "abs": "",
                "ref_re": "",
                "ref_im": "",
                "delta": "",
                "gamma_tilde": "",
                "residual": "",
                "sigma_up": str(report.sigma_monotone).lower(),
                "t_up": str(report.t_monotone).lower(),
            }
        )
    emit(
        ["k", "re", "im", "abs", "ref_re", "ref_im", "delta", "gamma_tilde", "residual", "sigma_up", "t_up"],
        rows,
        args,
    )
    if args.check:
        for k, delta in mismatches:
            sys.stderr.write(f"row {k}: coordinate deviation {delta:.2e} exceeds 1e-5\n")
        return 1 if mismatches else 0
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--digits",
        type=int,
        default=int(os.environ.get("XI_PREC_DIGITS", "40")),
        help="decimal working precision (default 40, env XI_PREC_DIGITS)",
    )
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--jobs", type=int, default=1, help="parallel certificate workers")

    parser = argparse.ArgumentParser(prog="xilab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("constants", parents=[common], help="defining constants with cross-route deltas")

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate xi, its integral, or a family member")
    p_eval.add_argument("target", choices=("xi", "xiinv", "family"))
    p_eval.add_argument("--s", default=None, help="point in the s-plane, a+bi")
    p_eval.add_argument("--z", default=None, help="point in the z-plane, a+bi")
    p_eval.add_argument("--m", type=int, default=0, help="family derivative index >= -1")
    p_eval.add_argument("--lambda", dest="lam", default="0", help="deformation parameter")

    p_zeros = sub.add_parser("zeros", parents=[common], help="locate value-set members in a rectangle")
    p_zeros.add_argument("--alpha0", required=True, help="0, +iA0, -iA0, or a+bi")
    p_zeros.add_argument("--rect", required=True, help="sigma_lo,sigma_hi,t_lo,t_hi")
    p_zeros.add_argument("--full-plane", action="store_true", help="expand the symmetry orbit (alpha0 = 0)")

    p_scan = sub.add_parser("scan-real", parents=[common], help="real-axis zeros of the integral member")
    p_scan.add_argument("--lambda", dest="lam", default="0", help="deformation parameter")
    p_scan.add_argument("--tmax", required=True, help="scan ceiling (<= 500)")

    p_t1 = sub.add_parser("table1", parents=[common], help="recompute the catalogued 20 zeros")
    p_t1.add_argument("--check", action="store_true", help="exit 1 unless every coordinate matches to 1e-5")
    return parser


_HANDLERS = {
    "constants": cmd_constants,
    "eval": cmd_eval,
    "zeros": cmd_zeros,
    "scan-real": cmd_scan_real,
    "table1": cmd_table1,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = PrecisionContext(args.digits)
    except XiLabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    try:
        return _HANDLERS[args.command](args, ctx)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except XiLabError as exc:
        sys.stderr.write(f"numeric domain error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
