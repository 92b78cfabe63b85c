"""Precision-configurable laboratory for the Riemann xi function, its integral,
and the one-parameter deformation family of Fourier integrals built on the
theta kernel."""

from .errors import (
    BoundaryTooCloseError,
    ConvergenceError,
    DerivativeVanishesError,
    DomainError,
    PoleError,
    TruncationError,
    XiLabError,
)
from .precision import DEFAULT_CONTEXT, PrecisionContext, s_from_z, z_from_s
from .reference_data import Table1Row, table1_zeros, zeta_zero_ordinates
from .special_functions import (
    PhiKernel,
    log_gamma,
    phi,
    phi_polya_form,
    phi_theta_form,
    theta,
    zeta,
)
from .xi_core import arg_variation, big_xi, f_estimate, xi
from .xi_integrals import (
    QuadraturePlan,
    TaylorRoute,
    a0,
    limit_residual,
    taylor_coeff,
    xi_family,
    xi_inv_l_path,
    xi_inv_path,
)
from .zero_lab import (
    MonotonicityReport,
    Rect,
    ZeroRecord,
    count_zeros_in_rect,
    find_value_set,
    monotonicity_report,
    orbit_with_tags,
    predicted_sigma,
    real_axis_zero_scan,
    refine_zero,
    symmetry_orbit,
)

__version__ = "0.1.0"

__all__ = [
    "PrecisionContext",
    "DEFAULT_CONTEXT",
    "s_from_z",
    "z_from_s",
    "theta",
    "phi",
    "phi_theta_form",
    "phi_polya_form",
    "log_gamma",
    "zeta",
    "PhiKernel",
    "xi",
    "big_xi",
    "f_estimate",
    "arg_variation",
    "xi_family",
    "xi_inv_path",
    "xi_inv_l_path",
    "a0",
    "limit_residual",
    "taylor_coeff",
    "TaylorRoute",
    "QuadraturePlan",
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
    "Table1Row",
    "table1_zeros",
    "zeta_zero_ordinates",
    "XiLabError",
    "DomainError",
    "PoleError",
    "TruncationError",
    "ConvergenceError",
    "DerivativeVanishesError",
    "BoundaryTooCloseError",
    "__version__",
]
