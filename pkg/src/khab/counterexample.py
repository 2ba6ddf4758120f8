"""The explicit counterexample family at n = 2, alpha = 2.

With t0 the positive root of 5 t^4 - 3 (the single sign boundary of
Phi_1(2, .)), the profile

    g(t) = t^2 (1 - eps * h(t))   on (0, t0),      h(t) = (t - t0)^4 / t0^4,
    g(t) = t^2                    on [t0, inf),

is three times differentiable at t0 and satisfies 0 <= g(t) <= t^2 exactly
when 0 <= eps <= 1.  Inverse conversion turns it into

    q(t) = 12 t (1 - eps * r(t))  on (0, t0),   12 t beyond,

with r(t) = R((t0 - t)/t0) and R(tau) = 21 tau^4 - 34 tau^3 + 16 tau^2
- 2 tau.  The premise inequality then holds for every eps in [0, 1] while
the conclusion integral evaluates to

    closed-form total + delta_I,   delta_I = -eps * integral_0^t0
                                             Phi_1(2,t) t^2 h(t) dt > 0,

so every eps in (0, 1] violates the conjectured bound while staying below
the computed correction constant C(2, 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .constants import closed_form_total, compute_constants
from .conversion import PiecewisePolynomial, direct_convert, inverse_convert
from .poly import Polynomial, positive_roots
from .quad import QuadResult, integrate, integrate_halfline
from .transition import Params, transition_eval, transition_for

T0 = 0.6**0.25  # positive root of 5 t^4 - 3

_R3 = Polynomial((-2.0, 16.0, -34.0, 21.0))
_R = _R3.shift_up(1)  # R(tau) = R3(tau) * tau


class GluingError(RuntimeError):
    """The spline profile failed its derivative-matching conditions."""


@dataclass(frozen=True)
class CounterexampleSpec:
    """Deformation size eps in [0, 1] at the fixed pair n = 2, alpha = 2."""

    epsilon: float = 1.0
    params: Params = field(default_factory=lambda: Params(2, 2.0))
    t0: float = T0

    def __post_init__(self) -> None:
        if not (0.0 <= self.epsilon <= 1.0):
            raise ValueError("epsilon must lie in [0, 1]")
        if abs(5.0 * self.t0**4 - 3.0) > 1e-12:
            raise ValueError("t0 must satisfy 5 t0^4 - 3 = 0 within 1e-12")


def build_h(t0: float) -> Polynomial:
    """h(t) = (t - t0)^4 / t0^4, expanded in t."""
    if not t0 > 0:
        raise ValueError("t0 must be positive")
    return Polynomial(
        tuple(
            math.comb(4, k) * (-t0) ** (4 - k) / t0**4 for k in range(5)
        )
    )


def build_r(t0: float) -> Polynomial:
    """r(t) = R((t0 - t)/t0) as a polynomial in t."""
    return _R.compose(Polynomial((1.0, -1.0 / t0)))


def build_g(spec: CounterexampleSpec) -> PiecewisePolynomial:
    """The spline profile; raises :class:`GluingError` if the pieces fail
    to join three-times differentiably at t0."""
    t_sq = Polynomial((0.0, 0.0, 1.0))
    deformed = t_sq - spec.epsilon * (t_sq * build_h(spec.t0))
    g = PiecewisePolynomial((spec.t0,), (deformed, t_sq))
    try:
        g.check_smoothness(3)
    except ValueError as exc:
        raise GluingError(str(exc)) from exc
    return g


def build_q(spec: CounterexampleSpec) -> PiecewisePolynomial:
    """Inverse conversion of the spline profile (order n = 2)."""
    return inverse_convert(build_g(spec), spec.params.n)


@dataclass(frozen=True)
class ExtremaReport:
    """Certified extrema of the cubic factor R3 on [0, 1]."""

    tau_max: float
    tau_min: float
    r3_at_max: float
    r3_at_min: float
    r3_at_0: float
    r3_at_1: float
    max_r3_on_01: float
    r_bounded_by_one: bool


def analyze_R() -> ExtremaReport:
    """Factor R = R3 * tau, locate R3's critical points on [0, 1] and
    certify R(tau) <= 1 there."""
    crits = [c for c in positive_roots(_R3.derivative(), 1e-14) if c < 1.0]
    tau_max, tau_min = crits[0], crits[1]
    candidates = [0.0, tau_max, tau_min, 1.0]
    max_r3 = max(_R3(c) for c in candidates)
    # R = R3*tau <= tau <= 1 once R3 <= 1 certified on the segment
    bounded = max_r3 <= 1.0 and all(
        _R(k / 1000.0) <= 1.0 + 1e-12 for k in range(1001)
    )
    return ExtremaReport(
        tau_max=tau_max,
        tau_min=tau_min,
        r3_at_max=_R3(tau_max),
        r3_at_min=_R3(tau_min),
        r3_at_0=_R3(0.0),
        r3_at_1=_R3(1.0),
        max_r3_on_01=max_r3,
        r_bounded_by_one=bounded,
    )


def default_premise_grid(t0: float = T0) -> list[float]:
    """200 log-spaced points over [1e-3, 1e3] plus the seam neighborhood."""
    pts = [10.0 ** (-3.0 + 6.0 * i / 199.0) for i in range(200)]
    pts.extend((t0 - 1e-6, t0 + 1e-6))
    return sorted(pts)


@dataclass(frozen=True)
class PremiseReport:
    """Dual premise check: exact profile bounds plus quadrature margins."""

    ok: bool
    worst_margin: float
    analytic_ok: bool
    numeric_ok: bool
    grid_size: int


def check_premise(
    spec: CounterexampleSpec,
    grid: Sequence[float] | None = None,
    tol: float = 1e-9,
) -> PremiseReport:
    """Check the premise inequality along a grid of t values.

    Analytic route: 0 <= g(t) <= t^2 from the profile polynomials.
    Numeric route: the direct conversion of q at t, divided by t, must not
    exceed t^(alpha-1) = t beyond quadrature tolerance.  The numeric route
    exists because the equivalence behind the analytic one is exactly the
    claim under test, not an axiom.
    """
    if grid is None:
        grid = default_premise_grid(spec.t0)
    g = build_g(spec)
    q = build_q(spec)
    analytic_ok = True
    numeric_ok = True
    worst = math.inf
    for t in grid:
        gv = g(t)
        slack = 1e-12 * max(1.0, t * t)
        if gv > t * t + slack or gv < -slack:
            analytic_ok = False
        gq = direct_convert(q, spec.params, t, tol * max(1.0, t * t))
        margin = t - gq / t
        worst = min(worst, margin)
        if margin < -(20.0 * tol * max(1.0, t)):
            numeric_ok = False
    ok = analytic_ok and numeric_ok
    return PremiseReport(ok, worst, analytic_ok, numeric_ok, len(grid))


def delta_I(spec: CounterexampleSpec, tol: float = 1e-9) -> QuadResult:
    """Excess of the conclusion integral over the closed-form total.

    The base integral of Phi_1(2,t) t^2 h(t) over (0, t0) is computed once
    and scaled by -eps, exposing the exact linearity in eps.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    tf = transition_for(spec.params)
    h = build_h(spec.t0)

    def f(t: float) -> float:
        return transition_eval(tf, t) * t * t * h(t)

    base = integrate(f, 0.0, spec.t0, tol)
    eps = spec.epsilon
    return QuadResult(
        -eps * base.value, abs(eps) * base.abs_error_estimate, base.subdivisions
    )


def _log_weight(t: float, two_alpha: float) -> float:
    """ln(1 + t^(-2*alpha)) without overflow for tiny t."""
    if t >= 1.0:
        return math.log1p(t**-two_alpha)
    return -two_alpha * math.log(t) + math.log1p(t**two_alpha)


@dataclass(frozen=True)
class LhsReport:
    """The conclusion integral computed two ways."""

    direct: QuadResult
    split: QuadResult
    difference: float


def lhs_integral(spec: CounterexampleSpec, tol: float = 1e-9) -> LhsReport:
    """Conclusion integral of q against the log weight, two routes.

    Direct: adaptive half-line quadrature of q(t) ln(1 + t^(-2a)).
    Split: numeric total of Phi_1 t^2 over (0, inf) plus delta_I, using the
    identity that ties the conclusion integral to the transition function.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    q = build_q(spec)
    two_alpha = 2.0 * spec.params.alpha

    direct = integrate_halfline(
        lambda t: q(t) * _log_weight(t, two_alpha), 0.0, tol
    )

    tf = transition_for(spec.params)
    total = integrate_halfline(
        lambda t: transition_eval(tf, t) * t**spec.params.alpha, 0.0, tol
    )
    excess = delta_I(spec, tol)
    split = QuadResult(
        total.value + excess.value,
        total.abs_error_estimate + excess.abs_error_estimate,
        total.subdivisions + excess.subdivisions,
    )
    return LhsReport(direct, split, direct.value - split.value)


@dataclass(frozen=True)
class VerificationReport:
    """Full verification record for one eps."""

    spec: CounterexampleSpec
    premise_ok: bool
    premise_worst_margin: float
    lhs_integral: QuadResult
    lhs_cross_difference: float
    rhs_conjecture: float
    delta_I: QuadResult
    c_upper: float
    violation_margin: float
    bound_ok: bool
    failures: tuple[str, ...] = ()

    @property
    def violated(self) -> bool:
        """Conclusion exceeds the conjectured bound beyond combined error."""
        budget = self.lhs_integral.abs_error_estimate + 1e-12 * abs(
            self.rhs_conjecture
        )
        return self.violation_margin > budget

    def to_dict(self) -> dict:
        return {
            "params": {
                "n": self.spec.params.n,
                "alpha": self.spec.params.alpha,
                "epsilon": self.spec.epsilon,
            },
            "premise": {
                "ok": self.premise_ok,
                "worst_margin": self.premise_worst_margin,
            },
            "lhs": {
                "value": self.lhs_integral.value,
                "err": self.lhs_integral.abs_error_estimate,
            },
            "rhs_conjecture": self.rhs_conjecture,
            "delta_I": {
                "value": self.delta_I.value,
                "err": self.delta_I.abs_error_estimate,
            },
            "c_upper": self.c_upper,
            "violation_margin": self.violation_margin,
            "bound_ok": self.bound_ok,
            "failures": list(self.failures),
        }


def verify(spec: CounterexampleSpec, tol: float = 1e-9) -> VerificationReport:
    """Assemble the full report; stage failures are recorded, not thrown."""
    failures: list[str] = []

    premise_ok = False
    worst_margin = math.nan
    try:
        premise = check_premise(spec, tol=tol)
        premise_ok = premise.ok
        worst_margin = premise.worst_margin
        if not premise.ok:
            failures.append("premise inequality violated on the check grid")
    except Exception as exc:  # noqa: BLE001 - embedded by contract
        failures.append(f"premise check failed: {exc}")

    lhs = QuadResult(math.nan, math.inf, 1)
    cross = math.nan
    try:
        report = lhs_integral(spec, tol)
        lhs = report.direct
        cross = report.difference
        if abs(cross) > 10.0 * (
            report.direct.abs_error_estimate + report.split.abs_error_estimate
        ) + 1e-12 * abs(lhs.value):
            failures.append(
                f"conclusion-integral routes disagree by {cross:.3e}"
            )
    except Exception as exc:  # noqa: BLE001
        failures.append(f"conclusion integral failed: {exc}")

    excess = QuadResult(math.nan, math.inf, 1)
    try:
        excess = delta_I(spec, tol)
        if spec.epsilon > 0 and not excess.value > 0:
            failures.append("delta_I is not positive")
    except Exception as exc:  # noqa: BLE001
        failures.append(f"delta_I failed: {exc}")

    rhs = closed_form_total(spec.params)

    c_upper = math.nan
    bound_ok = False
    try:
        consts = compute_constants(spec.params, tol)
        c_upper = consts.c_upper
        bound_ok = lhs.value <= c_upper + (
            lhs.abs_error_estimate + consts.c_upper_error
        )
        if not bound_ok:
            failures.append("conclusion integral exceeds C(n, alpha)")
    except Exception as exc:  # noqa: BLE001
        failures.append(f"constants computation failed: {exc}")

    return VerificationReport(
        spec=spec,
        premise_ok=premise_ok,
        premise_worst_margin=worst_margin,
        lhs_integral=lhs,
        lhs_cross_difference=cross,
        rhs_conjecture=rhs,
        delta_I=excess,
        c_upper=c_upper,
        violation_margin=lhs.value - rhs,
        bound_ok=bound_ok,
        failures=tuple(failures),
    )
