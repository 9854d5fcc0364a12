"""The p = 1 extremal problem: solver, closed forms, and the sharp bound."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import qcannulus as qc
from qcannulus.specfun import integrate

# Frozen solver fixture: maximal collar at ell = 1 (Theta = acos(tanh 1/2)),
# target modulus 2.  Residual verified against quadrature of u_x below.
FIX_ALPHA = -76.168329848440735
FIX_ENERGY = 12.74943308733666


@pytest.fixture
def fixture_problem():
    return qc.GrotzschProblem.for_maximal_collar(1.0, 2.0)


class TestWeight:
    def test_minimum_at_center(self):
        prob = qc.GrotzschProblem(ell=1.5, T=1.0, b=1.0)
        assert_allclose(prob.weight(0.5), 1.5**2, rtol=1e-15)
        assert prob.weight(0.1) > prob.weight(0.5)

    def test_symmetry(self):
        prob = qc.GrotzschProblem(ell=1.5, T=1.0, b=1.0)
        assert_allclose(prob.weight(0.0), prob.weight(1.0), rtol=1e-12)

    def test_total_integral(self):
        # int_0^T lambda = 2 ell tan(Theta)
        prob = qc.GrotzschProblem.for_maximal_collar(0.8, 3.0)
        want = 2.0 * prob.ell * math.tan(prob.theta)
        assert_allclose(prob.weight_integral(0.0, prob.T), want, rtol=1e-12)
        got = integrate(prob.weight, 0.0, prob.T, 1e-9)
        assert_allclose(got.value, want, atol=1e-8)

    def test_domain(self):
        prob = qc.GrotzschProblem(ell=1.5, T=1.0, b=1.0)
        with pytest.raises(ValueError):
            prob.weight(-0.1)
        with pytest.raises(ValueError):
            prob.weight(1.1)


class TestStretchDerivative:
    def test_identity_at_zero_multiplier(self):
        prob = qc.GrotzschProblem(ell=1.0, T=1.0, b=1.0)
        xs = np.linspace(0.0, prob.T, 7)
        assert_allclose(qc.ux_p1(prob, 0.0, xs), np.ones(7), rtol=0)

    def test_center_value(self):
        prob = qc.GrotzschProblem(ell=1.0, T=1.0, b=1.0)
        assert_allclose(qc.ux_p1(prob, -3.0, 0.5 * prob.T), 0.5, rtol=1e-15)

    def test_deviation_peaks_at_center(self):
        # |u_x - 1| is maximal where the weight is minimal (x = T/2):
        # largest u_x there for expanding maps, smallest for contracting.
        prob = qc.GrotzschProblem(ell=1.0, T=1.0, b=1.0)
        xs = np.linspace(0.0, prob.T, 101)
        for a in [-10.0, -1.0, 0.5]:
            dev = np.abs(qc.ux_p1(prob, a, xs) - 1.0)
            assert np.argmax(dev) == 50
        assert np.argmax(qc.ux_p1(prob, 0.5, xs)) == 50

    def test_rejects_supercritical_multiplier(self):
        prob = qc.GrotzschProblem(ell=1.0, T=1.0, b=1.0)
        with pytest.raises(ValueError):
            qc.ux_p1(prob, 1.0, 0.5)


class TestSolver:
    def test_identity_when_moduli_match(self):
        col = qc.maximal_collar(1.0)
        prob = qc.GrotzschProblem.for_maximal_collar(1.0, col.modulus)
        sol = qc.solve_alpha_p1(prob)
        assert sol.alpha_ell == 0.0
        assert sol.stretch_sign == 0
        assert_allclose(sol.energy, col.area, rtol=1e-12)

    def test_trichotomy(self):
        prob = qc.GrotzschProblem.for_maximal_collar(1.0, 2.0)
        sol = qc.solve_alpha_p1(prob)
        assert sol.alpha_ell < 0.0 and sol.stretch_sign == -1
        assert np.all(sol.ux(np.linspace(0, prob.T, 50)) < 1.0)

        fat = qc.GrotzschProblem.for_maximal_collar(
            1.0, 2.0 * qc.maximal_collar(1.0).modulus
        )
        sol2 = qc.solve_alpha_p1(fat)
        assert 0.0 < sol2.alpha_ell < 1.0 and sol2.stretch_sign == 1
        assert np.all(sol2.ux(np.linspace(0, fat.T, 50)) > 1.0)

    def test_frozen_fixture(self, fixture_problem):
        sol = qc.solve_alpha_p1(fixture_problem)
        assert_allclose(sol.alpha_ell, FIX_ALPHA, rtol=1e-12)
        assert_allclose(sol.energy, FIX_ENERGY, rtol=1e-12)
        assert sol.boundary_residual <= 1e-10

    def test_boundary_conditions(self, fixture_problem):
        sol = qc.solve_alpha_p1(fixture_problem)
        assert abs(sol.u(0.0)) <= 1e-12
        assert_allclose(sol.u(fixture_problem.T), fixture_problem.b, atol=1e-10)

    def test_normalisation_via_quadrature(self, fixture_problem):
        # independent route: integrate u_x directly
        sol = qc.solve_alpha_p1(fixture_problem)
        res = integrate(lambda x: qc.ux_p1(fixture_problem, sol.alpha_ell, x),
                        0.0, fixture_problem.T, 1e-12)
        assert abs(res.value - fixture_problem.b) <= 1e-10

    def test_stretch_increasing(self, fixture_problem):
        sol = qc.solve_alpha_p1(fixture_problem)
        xs = np.linspace(0.0, fixture_problem.T, 80)
        assert np.all(np.diff(sol.u(xs)) > 0.0)

    def test_lem3_monotone_map(self):
        # the boundary map is strictly increasing on (-inf, 1), diverges at
        # 1, and vanishes as alpha -> -inf
        prob = qc.GrotzschProblem.for_maximal_collar(1.0, 2.0)
        alphas = np.concatenate([np.linspace(-200.0, 0.9, 60), [0.999999]])
        widths = [qc.boundary_width(prob, a) for a in alphas]
        assert np.all(np.diff(widths) > 0.0)
        # divergence toward a = 1 is logarithmic in 1 - a
        assert qc.boundary_width(prob, 1.0 - 1e-12) > 3.0 * qc.boundary_width(prob, 0.9)
        assert qc.boundary_width(prob, -1e12) < 1e-5


class TestEnergy:
    def test_identity_energy_is_area(self):
        # alpha = 0: energy = 2 ell tan(Theta) = 2 ell sinh(delta)
        col = qc.maximal_collar(0.7)
        prob = qc.GrotzschProblem.from_collar(col, col.modulus)
        assert_allclose(qc.energy_p1(prob, 0.0), col.area, rtol=1e-12)

    def test_against_direct_quadrature(self, fixture_problem):
        sol = qc.solve_alpha_p1(fixture_problem)

        def integrand(x):
            ux = qc.ux_p1(fixture_problem, sol.alpha_ell, x)
            return 0.5 * (ux + 1.0 / ux) * fixture_problem.weight(x)

        res = integrate(integrand, 0.0, fixture_problem.T, 1e-10)
        assert_allclose(res.value, sol.energy, atol=1e-8)

    def test_tan2_identity_grid(self):
        # tan(T)sqrt(1-a cos^2 T) - sqrt(1-a) E = int_0^T tan^2/sqrt(1-a cos^2)
        for theta in [0.4, 0.9, 1.3]:
            for a in [-30.0, -2.0, 0.0, 0.7]:
                want = integrate(
                    lambda t: math.tan(t) ** 2
                    / math.sqrt(1.0 - a * math.cos(t) ** 2),
                    0.0,
                    theta,
                    1e-12,
                ).value
                assert_allclose(qc.tan2_integral(theta, a), want, atol=1e-10)

    def test_corollary_form_equality(self, fixture_problem):
        sol = qc.solve_alpha_p1(fixture_problem)
        assert_allclose(
            qc.corollary_energy(fixture_problem, sol.alpha_ell),
            sol.energy,
            rtol=1e-9,
        )


class TestThm2Bound:
    def test_sharpness(self):
        # the bound equals the exact extremal energy on the same inputs
        rep = qc.thm2_bound(1.0, 2.0, delta=qc.maximal_collar(1.0).delta)
        prob = qc.GrotzschProblem.for_maximal_collar(1.0, 2.0)
        sol = qc.solve_alpha_p1(prob)
        assert_allclose(rep.value, sol.energy, rtol=1e-9)
        assert rep.applicable

    def test_alpha_decreasing_in_theta(self):
        # the boundary map rises with Theta, so at fixed target the solved
        # multiplier moves down
        alphas = [
            qc.thm2_bound(1.0, 2.0, theta=t).terms["alpha_ell"]
            for t in [0.6, 0.9, 1.2, 1.5]
        ]
        assert all(a1 > a2 for a1, a2 in zip(alphas, alphas[1:]))

    def test_degenerate_collar_limits(self):
        # At fixed target modulus the bound does NOT vanish as the collar
        # degenerates: the solved multiplier runs to 1 and the energy tends
        # to ell^2 m_Omega/(4 pi) (thin collar, fixed fat ring).  It decays
        # to zero only when the target modulus degenerates along with it.
        ell, m_omega = 1.0, 2.0
        vals = [qc.thm2_bound(ell, m_omega, theta=t).value for t in [1e-2, 1e-4, 1e-6]]
        limit = ell**2 * m_omega / (4.0 * math.pi)
        assert vals[0] > vals[1] > vals[2] > limit
        assert_allclose(vals[2], limit, rtol=1e-3)
        matched = qc.thm2_bound(ell, 4.0 * 1e-6 / ell * math.pi, theta=1e-6)
        assert matched.value < 1e-5

    def test_input_validation(self):
        with pytest.raises(ValueError):
            qc.thm2_bound(1.0, 2.0)
        with pytest.raises(ValueError):
            qc.thm2_bound(1.0, 2.0, delta=1.0, theta=1.0)


class TestExtremality:
    def test_random_perturbations_never_undercut(self, fixture_problem):
        sol = qc.solve_alpha_p1(fixture_problem)
        report = qc.perturbation_test(
            fixture_problem, sol.u, sol.energy, trials=120, seed=7
        )
        assert report.min_gap >= -1e-8
        assert report.all_nonnegative
