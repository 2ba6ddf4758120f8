import math

import pytest

from khab.counterexample import (
    T0,
    CounterexampleSpec,
    GluingError,
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
from khab.poly import Polynomial

SQRT37 = math.sqrt(37.0)

# frozen targets, computed independently at 40-digit precision from the
# defining integrals
DELTA_I_1 = 0.012994435079531281
LHS_1 = 18.86255035661829
C22 = 19.65507202058854
SIX_PI = 6.0 * math.pi


class TestSpec:
    def test_t0_satisfies_quartic(self):
        assert abs(5.0 * T0**4 - 3.0) <= 1e-12

    def test_epsilon_range(self):
        CounterexampleSpec(0.0)
        CounterexampleSpec(1.0)
        with pytest.raises(ValueError):
            CounterexampleSpec(1.5)
        with pytest.raises(ValueError):
            CounterexampleSpec(-0.1)

    def test_bad_t0_rejected(self):
        with pytest.raises(ValueError):
            CounterexampleSpec(1.0, t0=0.9)


class TestDeformationPolynomial:
    def test_endpoint_values(self):
        h = build_h(T0)
        assert h(T0) == pytest.approx(0.0, abs=1e-14)
        assert h(0.0) == pytest.approx(1.0, rel=1e-14)

    def test_monotone_decreasing_on_segment(self):
        h = build_h(T0)
        samples = [h(T0 * i / 200.0) for i in range(201)]
        assert all(a >= b - 1e-12 for a, b in zip(samples, samples[1:]))

    def test_rejects_nonpositive_t0(self):
        with pytest.raises(ValueError):
            build_h(0.0)


class TestProfile:
    def test_seam_value(self):
        for eps in (0.0, 0.5, 1.0):
            g = build_g(CounterexampleSpec(eps))
            assert g(T0) == pytest.approx(T0 * T0, rel=1e-14)

    def test_gluing_conditions(self):
        # value and three derivatives agree at the seam
        g = build_g(CounterexampleSpec(1.0))
        left, right = g.pieces
        targets = [T0 * T0, 2.0 * T0, 2.0, 0.0]
        for order, target in enumerate(targets):
            lv, rv = left(T0), right(T0)
            assert abs(lv - rv) <= 1e-9 * max(1.0, abs(lv), abs(rv)), order
            assert rv == pytest.approx(target, abs=1e-12)
            left, right = left.derivative(), right.derivative()

    def test_bounds_on_grid(self):
        for eps in (0.0, 0.31, 1.0):
            g = build_g(CounterexampleSpec(eps))
            for i in range(1, 201):
                t = 4.0 * i / 200.0
                v = g(t)
                assert v <= t * t + 1e-12
                assert v >= -1e-12


class TestTestFunction:
    def test_eps_zero_is_linear_everywhere(self):
        q = build_q(CounterexampleSpec(0.0))
        for piece in q.pieces:
            assert piece.coeffs == (0.0, 12.0)

    def test_r_endpoint_values(self):
        r = build_r(T0)
        assert r(0.0) == pytest.approx(1.0, rel=1e-12)
        assert r(T0) == pytest.approx(0.0, abs=1e-12)

    def test_nonnegative_at_full_deformation(self):
        q = build_q(CounterexampleSpec(1.0))
        for i in range(1, 401):
            t = 4.0 * i / 400.0
            assert q(t) >= -1e-10

    def test_matches_closed_form_coefficients(self):
        q = build_q(CounterexampleSpec(1.0))
        r = build_r(T0)
        twelve_t = Polynomial((0.0, 12.0))
        closed = twelve_t - twelve_t * r
        scale = max(abs(c) for c in closed.coeffs)
        for got, want in zip(q.pieces[0].coeffs, closed.coeffs):
            assert abs(got - want) <= 1e-10 * scale


class TestExtrema:
    def test_critical_points_match_surds(self):
        rep = analyze_R()
        assert rep.tau_max == pytest.approx((34.0 - 2.0 * SQRT37) / 63.0, abs=1e-10)
        assert rep.tau_min == pytest.approx((34.0 + 2.0 * SQRT37) / 63.0, abs=1e-10)

    def test_extremal_values_match_surds(self):
        rep = analyze_R()
        assert rep.r3_at_max == pytest.approx(
            (394.0 + 592.0 * SQRT37) / 11907.0, abs=1e-10
        )
        assert rep.r3_at_min == pytest.approx(
            (394.0 - 592.0 * SQRT37) / 11907.0, abs=1e-10
        )
        assert rep.r3_at_max == pytest.approx(0.33, abs=0.01)
        assert rep.r3_at_min == pytest.approx(-0.26, abs=0.01)

    def test_segment_endpoints(self):
        rep = analyze_R()
        assert rep.r3_at_0 == -2.0
        assert rep.r3_at_1 == 1.0

    def test_bounded_by_one(self):
        rep = analyze_R()
        assert rep.max_r3_on_01 == 1.0
        assert rep.r_bounded_by_one


class TestPremise:
    def test_full_deformation_holds(self):
        rep = check_premise(CounterexampleSpec(1.0), tol=1e-9)
        assert rep.ok
        assert rep.analytic_ok and rep.numeric_ok

    def test_seam_margin_at_half_point(self):
        # strictly inside the deformed region the profile sits below t^2
        g = build_g(CounterexampleSpec(1.0))
        t = T0 / 2
        assert g(t) / t < t

    def test_equality_outside_deformation(self):
        g = build_g(CounterexampleSpec(1.0))
        t = 2.0 * T0
        assert g(t) / t == pytest.approx(t, rel=1e-15)

    def test_eps_zero_premise_tight(self):
        rep = check_premise(
            CounterexampleSpec(0.0), grid=[0.9, 1.0, 2.0, 10.0], tol=1e-10
        )
        assert rep.ok
        assert abs(rep.worst_margin) <= 1e-6


class TestDeltaI:
    def test_full_deformation_value(self):
        res = delta_I(CounterexampleSpec(1.0), 1e-10)
        assert res.value == pytest.approx(DELTA_I_1, abs=1e-9)

    def test_zero_deformation(self):
        assert delta_I(CounterexampleSpec(0.0), 1e-9).value == 0.0

    def test_linearity_in_eps(self):
        full = delta_I(CounterexampleSpec(1.0), 1e-10).value
        half = delta_I(CounterexampleSpec(0.5), 1e-10).value
        assert half == pytest.approx(0.5 * full, rel=1e-12)
        assert half == pytest.approx(0.00649722, abs=1e-6)

    def test_positive_for_positive_eps(self):
        for eps in (0.1, 0.5, 1.0):
            assert delta_I(CounterexampleSpec(eps), 1e-9).value > 0.0


class TestLhs:
    def test_both_routes_agree(self):
        tol = 1e-9
        rep = lhs_integral(CounterexampleSpec(1.0), tol)
        assert abs(rep.difference) <= 10 * tol
        assert rep.direct.value == pytest.approx(LHS_1, abs=1e-7)
        assert rep.split.value == pytest.approx(SIX_PI + DELTA_I_1, abs=1e-8)

    def test_zero_deformation_gives_closed_form_total(self):
        rep = lhs_integral(CounterexampleSpec(0.0), 1e-9)
        assert rep.direct.value == pytest.approx(SIX_PI, abs=1e-8)


class TestVerify:
    def test_full_deformation(self):
        rep = verify(CounterexampleSpec(1.0), 1e-9)
        assert rep.premise_ok
        assert rep.failures == ()
        assert rep.violation_margin == pytest.approx(DELTA_I_1, abs=1e-7)
        assert rep.violated
        assert rep.bound_ok
        assert rep.c_upper == pytest.approx(C22, abs=1e-6)

    def test_margin_equals_excess_within_error(self):
        rep = verify(CounterexampleSpec(1.0), 1e-9)
        budget = (
            rep.lhs_integral.abs_error_estimate
            + rep.delta_I.abs_error_estimate
            + 1e-10
        )
        assert abs(rep.violation_margin - rep.delta_I.value) <= budget

    def test_equality_case(self):
        rep = verify(CounterexampleSpec(0.0), 1e-9)
        assert rep.premise_ok
        assert abs(rep.violation_margin) <= 1e-8
        assert not rep.violated
        assert rep.bound_ok

    def test_half_deformation(self):
        rep = verify(CounterexampleSpec(0.5), 1e-9)
        assert rep.violation_margin == pytest.approx(0.00649722, abs=1e-6)
        assert rep.violated

    def test_json_fields(self):
        data = verify(CounterexampleSpec(1.0), 1e-8).to_dict()
        assert data["params"] == {"n": 2, "alpha": 2.0, "epsilon": 1.0}
        assert set(data) == {
            "params",
            "premise",
            "lhs",
            "rhs_conjecture",
            "delta_I",
            "c_upper",
            "violation_margin",
            "bound_ok",
            "failures",
        }


def test_gluing_error_fires_on_coefficient_bug(monkeypatch):
    # a cubic-order zero at the seam breaks the third gluing condition
    import khab.counterexample as ce

    def broken_h(t0):
        return Polynomial(
            tuple(math.comb(3, k) * (-t0) ** (3 - k) / t0**3 for k in range(4))
        )

    monkeypatch.setattr(ce, "build_h", broken_h)
    with pytest.raises(GluingError):
        ce.build_g(CounterexampleSpec(1.0))
