"""Numerical verification toolkit for the integral-inequality transition
machinery, its correction constants C(n, alpha), and the explicit
counterexample family at n = 2, alpha = 2."""

from .constants import ConstantsReport, closed_form_total, compute_constants
from .conversion import (
    PiecewisePolynomial,
    RoundTripReport,
    SmoothnessError,
    direct_convert,
    exact_direct_convert,
    inverse_convert,
    roundtrip_check,
)
from .counterexample import (
    T0,
    CounterexampleSpec,
    ExtremaReport,
    GluingError,
    VerificationReport,
    analyze_R,
    build_g,
    build_h,
    build_q,
    build_r,
    check_premise,
    delta_I,
    lhs_integral,
    verify,
)
from .kernel import KernelSpec, kernel_eval, kernel_eval_quadrature
from .poly import Polynomial, RootCertificationError, positive_roots
from .quad import QuadratureError, QuadResult, integrate, integrate_halfline
from .transition import (
    Params,
    SignPartition,
    TemplateMatchError,
    TransitionFunction,
    build_transition,
    phi_derivative_poly,
    sign_partition,
    transition_eval,
    transition_for,
)

__all__ = [
    "ConstantsReport",
    "CounterexampleSpec",
    "ExtremaReport",
    "GluingError",
    "KernelSpec",
    "Params",
    "PiecewisePolynomial",
    "Polynomial",
    "QuadResult",
    "QuadratureError",
    "RootCertificationError",
    "RoundTripReport",
    "SignPartition",
    "SmoothnessError",
    "T0",
    "TemplateMatchError",
    "TransitionFunction",
    "VerificationReport",
    "analyze_R",
    "build_g",
    "build_h",
    "build_q",
    "build_r",
    "build_transition",
    "check_premise",
    "closed_form_total",
    "compute_constants",
    "delta_I",
    "direct_convert",
    "exact_direct_convert",
    "integrate",
    "integrate_halfline",
    "inverse_convert",
    "kernel_eval",
    "kernel_eval_quadrature",
    "lhs_integral",
    "phi_derivative_poly",
    "positive_roots",
    "roundtrip_check",
    "sign_partition",
    "transition_eval",
    "transition_for",
    "verify",
]

__version__ = "0.1.0"
