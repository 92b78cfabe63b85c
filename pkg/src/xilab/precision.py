"""Working-precision context and s-plane / z-plane conversions.

Every numeric routine in the package takes a :class:`PrecisionContext` and
performs its arithmetic inside ``mpmath.workdps`` at ``digits`` plus a small
guard.  A context is immutable; derived tolerances are fixed at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpc, mpf, workdps

from .errors import DomainError

# Extra decimal digits carried inside kernels so that results are good to
# the advertised ctx.digits after roundoff accumulation.
GUARD_DIGITS = 10

DEFAULT_DIGITS = 40


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision and the tolerances derived from it.

    digits: decimal digits of working precision (>= 20).
    eps: 10**(-digits), the unit for value tolerances.
    quad_tol: target absolute quadrature error, default 10**(-digits+10).
    """

    digits: int = DEFAULT_DIGITS
    eps: mpf = None
    quad_tol: mpf = None

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 20:
            raise DomainError("digits must be an integer >= 20")
        object.__setattr__(self, "digits", int(self.digits))
        with workdps(self.digits + GUARD_DIGITS):
            if self.eps is None:
                object.__setattr__(self, "eps", mpf(10) ** (-self.digits))
            if self.quad_tol is None:
                object.__setattr__(self, "quad_tol", mpf(10) ** (-(self.digits - 10)))
            if self.quad_tol < self.eps:
                raise DomainError("quad_tol must be >= eps")

    @property
    def dps(self) -> int:
        """Internal working digits (digits plus guard)."""
        return self.digits + GUARD_DIGITS


DEFAULT_CONTEXT = PrecisionContext()


def resolve(ctx: PrecisionContext | None) -> PrecisionContext:
    return DEFAULT_CONTEXT if ctx is None else ctx


def as_mpc(value) -> mpc:
    """Coerce a complex-like value (mpc, complex, real, str, (re, im)) to mpc."""
    if isinstance(value, mpc):
        return value
    if isinstance(value, tuple) and len(value) == 2:
        return mpc(mpf(value[0]), mpf(value[1]))
    if isinstance(value, str):
        return mpc(value.replace("i", "j"))
    return mpc(value)


def s_from_z(z) -> mpc:
    """Map z-plane to s-plane: s = 1/2 + i z (exact in the arithmetic used)."""
    z = as_mpc(z)
    return mpc(mpf(1) / 2 - z.imag, z.real)


def z_from_s(s) -> mpc:
    """Map s-plane to z-plane: z = -i (s - 1/2) (exact in the arithmetic used)."""
    s = as_mpc(s)
    return mpc(s.imag, -(s.real - mpf(1) / 2))


def is_real(value) -> bool:
    """True when the coerced value has exactly zero imaginary part."""
    return as_mpc(value).imag == 0
