"""Geometry of round hyperbolic annuli and collars."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qcannulus.annulus import (
    annulus_from_length,
    annulus_from_s,
    jorgensen_predicate,
    maximal_collar,
    maximal_collar_area,
    maximal_collar_modulus_lower_bound,
)
from qcannulus.specfun import integrate


class TestAnnulusBasics:
    def test_log_relation(self):
        assert_allclose(annulus_from_length(math.pi**2).s, math.e, rtol=1e-15)
        assert_allclose(annulus_from_length(1.0).log_s, math.pi**2, rtol=1e-15)

    def test_round_trip(self):
        for ell in np.geomspace(0.05, 20.0, 100):
            assert_allclose(annulus_from_s(annulus_from_length(ell).s).ell, ell, rtol=1e-12)

    def test_small_ell_s_overflows_to_inf(self):
        assert annulus_from_length(1e-3).s == math.inf
        assert math.isfinite(annulus_from_length(1e-3).log_s)

    def test_invalid(self):
        with pytest.raises(ValueError):
            annulus_from_length(-1.0)
        with pytest.raises(ValueError):
            annulus_from_s(0.5)


class TestDensity:
    def test_core_value(self):
        A = annulus_from_length(2.5)
        assert_allclose(A.density(1.0), 2.5 / (2.0 * math.pi), rtol=1e-15)

    def test_core_circle_length(self):
        # 2 pi r * density at r = 1 recovers the core geodesic length
        for ell in [0.3, 1.0, 4.0]:
            A = annulus_from_length(ell)
            assert_allclose(2.0 * math.pi * 1.0 * A.density(1.0), ell, rtol=1e-15)

    def test_blow_up_towards_boundary(self):
        A = annulus_from_s(math.e)
        assert A.density(0.999 * math.e) > 10.0 * A.density(0.9 * math.e)

    def test_monotone_on_outward_radii(self):
        # The density is increasing once tan(ell log(r)/2pi) exceeds 2pi/ell
        # (the 1/r factor wins before that), and blows up monotonically at
        # the outer circle.
        A = annulus_from_length(1.0)
        u_start = math.atan(2.0 * math.pi / A.ell) + 1e-9
        us = np.linspace(u_start, 0.5 * math.pi - 1e-6, 50)
        rs = np.exp(2.0 * math.pi * us / A.ell)
        vals = [A.density(r) for r in rs]
        assert np.all(np.diff(vals) > 0.0)

    def test_theta_consistency_invariant(self):
        # collar theta satisfies sin(theta) = tanh(delta); compare through
        # sin, since asin(tanh .) itself degrades for large delta
        A = annulus_from_length(1.0)
        for delta in [0.1, 1.0, 5.0, 15.0]:
            theta = A.collar(delta).theta
            assert abs(math.sin(theta) - math.tanh(delta)) <= 1e-14
        for delta in [0.1, 1.0, 5.0]:
            assert abs(A.collar(delta).theta - math.asin(math.tanh(delta))) <= 1e-14

    def test_boundary_guard(self):
        A = annulus_from_s(math.e)
        with pytest.raises(ValueError):
            A.density(math.e)
        with pytest.raises(ValueError):
            A.density(1.0 / math.e)


class TestDistances:
    def test_core_distance_zero(self):
        assert annulus_from_length(1.0).geodesic_distance(1.0) == 0.0

    def test_inverse_pair(self):
        A = annulus_from_length(1.0)
        for delta in np.linspace(0.01, 5.0, 50):
            r = A.radius_at_distance(delta)
            assert_allclose(A.geodesic_distance(r), delta, rtol=1e-12, atol=1e-12)

    def test_distance_matches_density_integral(self):
        A = annulus_from_length(1.0)
        res = integrate(A.density, 1.0, 2.0, 1e-12)
        assert_allclose(A.geodesic_distance(2.0), res.value, atol=1e-10)

    def test_radius_limit_towards_boundary(self):
        A = annulus_from_length(1.0)
        assert abs(A.radius_at_distance(40.0) - A.s) <= 1e-10 * A.s

    def test_radius_at_zero(self):
        assert annulus_from_length(0.7).radius_at_distance(0.0) == 1.0


class TestCircleLength:
    def test_core(self):
        A = annulus_from_length(2.0)
        assert A.circle_length(0.0) == 2.0

    def test_direct_formula(self):
        assert_allclose(annulus_from_length(2.0).circle_length(1.0), 2.0 * math.cosh(1.0))

    def test_length_identity_with_density(self):
        # 2 pi r * density(r(delta)) = ell cosh(delta)
        A = annulus_from_length(1.3)
        for delta in [0.2, 1.0, 2.5]:
            r = A.radius_at_distance(delta)
            assert_allclose(
                2.0 * math.pi * r * A.density(r), A.circle_length(delta), rtol=1e-12
            )


class TestCollar:
    def test_modulus_full_annulus_limit(self):
        A = annulus_from_length(1.0)
        assert_allclose(A.collar(40.0).modulus, A.modulus, rtol=1e-12)

    def test_modulus_matches_round_subannulus(self):
        # collar modulus at delta equals 2 log(radius_at_distance(delta))
        for ell in [0.5, 1.0, 3.0]:
            A = annulus_from_length(ell)
            for delta in [0.1, 0.7, 2.0]:
                col = A.collar(delta)
                assert_allclose(
                    col.modulus, 2.0 * math.log(A.radius_at_distance(delta)), rtol=1e-12
                )

    def test_monotone_in_delta(self):
        A = annulus_from_length(1.0)
        deltas = np.linspace(0.05, 4.0, 40)
        mods = [A.collar(d).modulus for d in deltas]
        areas = [A.collar(d).area for d in deltas]
        assert np.all(np.diff(mods) > 0.0)
        assert np.all(np.diff(areas) > 0.0)

    def test_area_against_2d_quadrature(self):
        # area = int lambda^2 over the ring, in polar coordinates
        A = annulus_from_length(1.0)
        delta = 1.0
        col = A.collar(delta)
        r0 = A.radius_at_distance(delta)

        def radial(r):
            lam = A.density(r)
            return lam * lam * r

        inner = integrate(radial, 1.0 / r0, r0, 1e-9)
        assert_allclose(2.0 * math.pi * inner.value, col.area, atol=1e-6)

    def test_identity_energy_matches_area(self):
        # ell^2 int_0^T sec^2(ell (x - T/2)) dx = 2 ell tan(Theta) = 2 ell sinh(delta)
        ell, delta = 1.0, 1.2
        theta = math.asin(math.tanh(delta))
        T = 2.0 * theta / ell
        res = integrate(lambda x: ell**2 / math.cos(ell * (x - T / 2)) ** 2, 0.0, T, 1e-10)
        assert_allclose(res.value, 2.0 * ell * math.sinh(delta), atol=1e-8)
        assert_allclose(2.0 * ell * math.tan(theta), 2.0 * ell * math.sinh(delta), rtol=1e-12)


class TestMaximalCollar:
    def test_closed_forms(self):
        col = maximal_collar(1.0)
        assert_allclose(col.delta, math.asinh(1.0 / math.sinh(0.5)), rtol=1e-15)
        assert_allclose(col.theta, math.acos(math.tanh(0.5)), atol=1e-12)
        assert_allclose(col.area, 2.0 / math.sinh(0.5), rtol=1e-14)

    def test_area_bound_and_limit(self):
        ells = np.geomspace(1e-4, 10.0, 60)
        areas = [maximal_collar_area(ell) for ell in ells]
        assert np.all(np.asarray(areas) <= 4.0 + 1e-12)
        assert_allclose(maximal_collar_area(1e-6), 4.0, rtol=1e-9)
        for ell in [0.5, 1.0, 2.0]:
            assert_allclose(maximal_collar_area(ell), maximal_collar(ell).area, rtol=1e-13)

    def test_modulus_chain(self):
        # exact modulus >= sech form >= 4 pi / ell - pi ell / 2; the second
        # margin is ~ell^3 relative, i.e. sub-ulp at ell = 1e-4, hence the
        # rounding slack
        for ell in np.geomspace(1e-4, 10.0, 60):
            exact = maximal_collar(ell).modulus
            sech_form = maximal_collar_modulus_lower_bound(ell)
            poly = 4.0 * math.pi / ell - 0.5 * math.pi * ell
            assert exact >= sech_form * (1.0 - 1e-14)
            assert sech_form >= poly - 1e-12 * abs(poly)

    def test_theta_series_bracket(self):
        # pi/2 - ell/2 <= Theta <= pi/2 - ell/2 + ell^3/48 for 0 < ell <= 1.
        # Both margins fall below one ulp of pi/2 as ell -> 0 (they are
        # O(ell^3) and O(ell^5) absolute), so the comparison carries a
        # few-ulp slack.
        for ell in np.linspace(1e-4, 1.0, 50):
            theta = maximal_collar(ell).theta
            assert math.pi / 2 - ell / 2 - 1e-15 <= theta
            assert theta <= math.pi / 2 - ell / 2 + ell**3 / 48.0 + 1e-15

    def test_theta_at_one(self):
        theta = maximal_collar(1.0).theta
        assert math.pi / 2 - 0.5 <= theta <= math.pi / 2 - 0.5 + 1.0 / 48.0


class TestJorgensen:
    def test_equality_case(self):
        tau = 2.0 * math.asinh(1.0)  # sinh(tau/2) = 1
        assert jorgensen_predicate(tau, tau, math.pi / 2)

    def test_small_translations(self):
        assert not jorgensen_predicate(0.1, 0.1, math.pi / 2)

    def test_maximal_collar_consistency(self):
        # crossing geodesic of length 2*delta(ell) saturates the inequality
        for ell in [0.3, 1.0, 2.0]:
            x = 2.0 * maximal_collar(ell).delta
            prod = math.sinh(0.5 * ell) * math.sinh(0.5 * x)
            assert prod >= 1.0 - 1e-12

    def test_domain(self):
        with pytest.raises(ValueError):
            jorgensen_predicate(-1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            jorgensen_predicate(1.0, 1.0, 4.0)
