import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khab.poly import Polynomial, RootCertificationError, positive_roots

R3 = Polynomial((-2.0, 16.0, -34.0, 21.0))


class TestEval:
    def test_r3_endpoints(self):
        assert R3(0.0) == -2.0
        assert R3(1.0) == 1.0

    def test_zero_polynomial(self):
        assert Polynomial()(7.3) == 0.0

    def test_normal_form_strips_trailing_zeros(self):
        p = Polynomial((1.0, 2.0, 0.0, 0.0))
        assert p.coeffs == (1.0, 2.0)
        assert p.degree == 1


class TestDerivative:
    def test_r3_derivative(self):
        assert R3.derivative().coeffs == (16.0, -68.0, 63.0)

    def test_constant_derivative_is_zero(self):
        assert Polynomial((5.0,)).derivative().is_zero()

    def test_second_derivative_of_square(self):
        assert Polynomial((0, 0, 1.0)).derivative().derivative().coeffs == (2.0,)

    def test_degree_drops_by_one(self):
        p = Polynomial((1.0, -2.0, 0.5, 3.0, 1.0))
        assert p.derivative().degree == p.degree - 1


@st.composite
def small_polys(draw):
    deg = draw(st.integers(min_value=1, max_value=8))
    coeffs = [
        draw(st.floats(min_value=-10, max_value=10, allow_nan=False))
        for _ in range(deg + 1)
    ]
    lead = draw(st.floats(min_value=0.5, max_value=10))
    coeffs[-1] = -lead if draw(st.booleans()) else lead
    return Polynomial(tuple(coeffs))


@given(p=small_polys(), x=st.floats(min_value=-2, max_value=2, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_derivative_matches_central_difference(p, x):
    h = 1e-5 * max(1.0, abs(x))
    fd = (p(x + h) - p(x - h)) / (2 * h)
    exact = p.derivative()(x)
    scale = max(abs(exact), abs(fd), 1.0)
    assert abs(exact - fd) <= 1e-8 * scale * 100  # O(h^2) truncation ~1e-10


class TestPositiveRoots:
    def test_quartic_root(self):
        roots = positive_roots(Polynomial((-3.0, 0.0, 0.0, 0.0, 5.0)), 1e-12)
        assert len(roots) == 1
        assert roots[0] == pytest.approx((3 / 5) ** 0.25, abs=1e-12)

    def test_linear_root(self):
        assert positive_roots(Polynomial((-3.0, 5.0)), 1e-12) == pytest.approx([0.6])

    def test_constant_has_no_roots(self):
        assert positive_roots(Polynomial((1.0,)), 1e-12) == []

    def test_root_at_zero_is_excluded(self):
        assert positive_roots(Polynomial((0.0, 2.0)), 1e-12) == []
        assert positive_roots(Polynomial((0.0, 0.0, 3.0)), 1e-12) == []

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            positive_roots(Polynomial(), 1e-9)

    def test_nonpositive_tol_rejected(self):
        with pytest.raises(ValueError):
            positive_roots(Polynomial((1.0, 1.0)), 0.0)

    def test_residual_bound(self):
        p = Polynomial((-3.0, 0.0, 0.0, 0.0, 5.0))
        tol = 1e-10
        for r in positive_roots(p, tol):
            assert abs(p(r)) <= tol * (abs(p.derivative()(r)) + 1.0)

    def test_grid_point_root_reported_once(self):
        # z = 1 sits exactly on the scan grid
        p = Polynomial((-1.0, 1.0)) * Polynomial((-3.0, 1.0))
        assert positive_roots(p, 1e-10) == pytest.approx([1.0, 3.0])

    def test_multiple_root_fails_certification(self):
        # float-rounded (z - 1.37)^2 has two exact roots ~1e-8 apart;
        # a merge tolerance above the separation cannot be certified
        p = Polynomial((1.37**2, -2 * 1.37, 1.0))
        with pytest.raises(RootCertificationError):
            positive_roots(p, 1e-6)

    def test_close_pair_resolved_at_tight_tol(self):
        p = Polynomial((1.37**2, -2 * 1.37, 1.0))
        roots = positive_roots(p, 1e-10)
        assert len(roots) == 2
        assert all(abs(r - 1.37) < 1e-7 for r in roots)


@given(st.data())
@settings(max_examples=100, deadline=None)
def test_planted_roots_recovered(data):
    k = data.draw(st.integers(min_value=1, max_value=4))
    roots = sorted(
        data.draw(
            st.lists(
                st.floats(min_value=0.01, max_value=50),
                min_size=k,
                max_size=k,
                unique=True,
            )
        )
    )
    if any(b - a < 1e-5 for a, b in zip(roots, roots[1:])):
        return
    p = Polynomial((1.0,))
    for r in roots:
        p = p * Polynomial((-r, 1.0))
    got = positive_roots(p, 1e-8)
    assert len(got) == len(roots)
    for g, r in zip(got, roots):
        assert abs(g - r) < 1e-7


def test_planted_roots_seeded_battery():
    rng = random.Random(20240817)
    for _ in range(50):
        roots = sorted(rng.uniform(0.05, 20) for _ in range(rng.randint(1, 4)))
        if any(b - a < 1e-4 for a, b in zip(roots, roots[1:])):
            continue
        p = Polynomial((rng.choice([-2.0, 1.0, 3.0]),))
        for r in roots:
            p = p * Polynomial((-r, 1.0))
        got = positive_roots(p, 1e-9)
        assert got == pytest.approx(roots, abs=1e-8)


def test_compose():
    inner = Polynomial((1.0, -2.0))
    outer = Polynomial((0.0, 0.0, 1.0))
    composed = outer.compose(inner)
    for x in (-1.0, 0.0, 0.3, 2.0):
        assert composed(x) == pytest.approx((1 - 2 * x) ** 2, rel=1e-14)


def test_arithmetic_identities():
    p = Polynomial((1.0, 2.0, 3.0))
    q = Polynomial((-1.0, 0.5))
    x = 0.7
    assert (p + q)(x) == pytest.approx(p(x) + q(x))
    assert (p - q)(x) == pytest.approx(p(x) - q(x))
    assert (p * q)(x) == pytest.approx(p(x) * q(x))
    assert (2.5 * p)(x) == pytest.approx(2.5 * p(x))
    assert p.shift_up(2)(x) == pytest.approx(x * x * p(x))
