"""The p = 1 extremal problem: closed-form minimiser and exact energy.

For exponent p = 1 the variational equation linearises to

    u_x = 1 / sqrt(1 - a cos^2(ell (x - T/2))),   a = alpha_ell < 1,

and every quantity of interest has a closed form in the incomplete
elliptic integrals with parameter a/(a-1):

* the boundary stretch  int_0^T u_x = 2 F(Theta | a/(a-1)) / (ell sqrt(1-a)),
  strictly increasing in a from 0 (a -> -inf) to infinity (a -> 1), so the
  multiplier matching any target width is unique;
* the minimal energy  ell [ (sqrt(1-a) + 1/sqrt(1-a)) F - 2 sqrt(1-a) E
  + 2 tan(Theta) sqrt(1 - a cos^2 Theta) ].

The sharp lower bound for mappings of a collar onto a ring of modulus
m_Omega is exactly this energy at the solved multiplier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize as _sp_optimize

from .bounds import BoundReport, elliptic_parameter
from .grotzsch import GrotzschProblem
from .specfun import ellip_e, ellip_f

__all__ = [
    "ExtremalSolution",
    "ux_p1",
    "boundary_width",
    "alphaell_map",
    "stretch",
    "solve_alpha_p1",
    "energy_bracket",
    "energy_p1",
    "tan2_integral",
    "corollary_energy",
    "thm2_bound",
]


def ux_p1(problem: GrotzschProblem, alpha_ell: float, x):
    """Radial stretch derivative u_x at x for multiplier alpha_ell < 1.

    Identically 1 iff alpha_ell = 0.  The deviation |u_x - 1| peaks at
    x = T/2 where the weight is minimal: u_x is largest there for
    expanding maps (alpha_ell > 0) and smallest for contracting ones.
    """
    if alpha_ell >= 1.0:
        raise ValueError(f"multiplier must be below 1, got {alpha_ell}")
    x = np.asarray(x, dtype=float)
    c = np.cos(problem.ell * (x - 0.5 * problem.T))
    out = 1.0 / np.sqrt(1.0 - alpha_ell * c * c)
    return float(out) if out.ndim == 0 else out


def alphaell_map(theta: float, alpha_ell: float) -> float:
    """The boundary-condition map F(Theta | a/(a-1)) / sqrt(1 - a).

    Strictly increasing in a on (-inf, 1) with limits 0 and +inf, and
    increasing in Theta; solving it against ell*m_Omega/(4 pi) is what
    pins the multiplier down.
    """
    return ellip_f(theta, elliptic_parameter(alpha_ell)) / math.sqrt(1.0 - alpha_ell)


def boundary_width(problem: GrotzschProblem, alpha_ell: float) -> float:
    """Total stretch int_0^T u_x dx = (2/ell) F(Theta | a/(a-1))/sqrt(1-a)."""
    return 2.0 * alphaell_map(problem.theta, alpha_ell) / problem.ell


def _ellip_f_signed(phi: float, m: float) -> float:
    """F extended to negative amplitudes by oddness."""
    return math.copysign(ellip_f(abs(phi), m), phi)


def stretch(problem: GrotzschProblem, alpha_ell: float, x):
    """Closed-form minimiser u(x) on [0, T], with u(0) = 0.

    u(x) = [F(ell (x - T/2) | a/(a-1)) + F(Theta | a/(a-1))]
           / (ell sqrt(1 - a)).
    """
    m = elliptic_parameter(alpha_ell)
    f_half = ellip_f(problem.theta, m)
    scale = problem.ell * math.sqrt(1.0 - alpha_ell)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    vals = np.array(
        [(_ellip_f_signed(problem.ell * (xi - 0.5 * problem.T), m) + f_half) / scale
         for xi in xs]
    )
    return float(vals[0]) if np.ndim(x) == 0 else vals


@dataclass(frozen=True)
class ExtremalSolution:
    """Solved multiplier, exact energy and solver diagnostics."""

    problem: GrotzschProblem
    alpha_ell: float
    energy: float
    boundary_residual: float
    iterations: int

    def ux(self, x):
        return ux_p1(self.problem, self.alpha_ell, x)

    def u(self, x):
        return stretch(self.problem, self.alpha_ell, x)

    @property
    def stretch_sign(self) -> int:
        """Trichotomy: sign of u_x - 1, constant on [0, T], equals sign(a)."""
        if self.alpha_ell == 0.0:
            return 0
        return 1 if self.alpha_ell > 0.0 else -1


def solve_alpha_p1(problem: GrotzschProblem, residual_tol: float = 1e-10) -> ExtremalSolution:
    """Solve the boundary condition for the unique multiplier in (-inf, 1).

    Bracketed root finding on the strictly increasing boundary defect, in
    the substituted variable t = 1/sqrt(1 - a): there the defect is well
    conditioned uniformly, including extreme expansions where a crowds
    against 1 (the defect in a itself steepens like 1/(1-a) and double
    precision cannot hold the residual).  The bracket grows geometrically
    until it straddles the root; the convergence contract is the boundary
    residual, not the multiplier.
    """
    if problem.p != 1.0:
        raise ValueError("solve_alpha_p1 handles exponent p = 1 only")
    b = problem.b

    def defect_t(t: float) -> float:
        # boundary_width written in t: (2/ell) t F(Theta | 1 - t^2) - b
        return 2.0 * t * ellip_f(problem.theta, 1.0 - t * t) / problem.ell - b

    d0 = defect_t(1.0)  # = T - b
    if abs(d0) <= 1e-13 * max(1.0, b):
        return ExtremalSolution(
            problem=problem,
            alpha_ell=0.0,
            energy=energy_p1(problem, 0.0),
            boundary_residual=abs(d0),
            iterations=0,
        )
    if d0 < 0.0:  # expansion: t > 1, multiplier in (0, 1)
        lo, hi = 1.0, 2.0
        for _ in range(1100):
            if defect_t(hi) > 0.0:
                break
            hi *= 2.0
        else:
            raise ArithmeticError(f"failed to bracket the multiplier (b={b})")
    else:  # contraction: t < 1, multiplier negative
        lo, hi = 0.5, 1.0
        for _ in range(1100):
            if defect_t(lo) < 0.0:
                break
            lo *= 0.5
        else:
            raise ArithmeticError(f"failed to bracket the multiplier (b={b})")
    t, info = _sp_optimize.brentq(
        defect_t, lo, hi, xtol=1e-300, rtol=8.9e-16, maxiter=300, full_output=True
    )
    residual = abs(defect_t(t))
    if residual > residual_tol * max(1.0, b):
        raise ArithmeticError(
            f"boundary residual {residual:g} exceeds {residual_tol:g} "
            f"after {info.iterations} iterations (problem={problem})"
        )
    alpha = 1.0 - 1.0 / (t * t)
    return ExtremalSolution(
        problem=problem,
        alpha_ell=alpha,
        energy=energy_p1(problem, alpha),
        boundary_residual=residual,
        iterations=info.iterations,
    )


def energy_bracket(theta: float, alpha_ell: float) -> float:
    """The Theta-dependent bracket of the exact energy (energy / ell).

    (sqrt(1-a) + 1/sqrt(1-a)) F(Theta|m) - 2 sqrt(1-a) E(Theta|m)
    + 2 tan(Theta) sqrt(1 - a cos^2 Theta),   m = a/(a-1).
    """
    m = elliptic_parameter(alpha_ell)
    root = math.sqrt(1.0 - alpha_ell)
    f_val = ellip_f(theta, m)
    e_val = ellip_e(theta, m)
    cos_t = math.cos(theta)
    return (
        (root + 1.0 / root) * f_val
        - 2.0 * root * e_val
        + 2.0 * math.tan(theta) * math.sqrt(1.0 - alpha_ell * cos_t * cos_t)
    )


def energy_p1(problem: GrotzschProblem, alpha_ell: float) -> float:
    """Exact minimal energy (1/2)(I_1 + I_2) = ell * energy_bracket."""
    return problem.ell * energy_bracket(problem.theta, alpha_ell)


def tan2_integral(theta: float, alpha_ell: float) -> float:
    """int_0^Theta tan^2(t) / sqrt(1 - a cos^2 t) dt, in closed form.

    Equals tan(Theta) sqrt(1 - a cos^2 Theta) - sqrt(1-a) E(Theta | a/(a-1));
    the difference vanishes at Theta = 0 and has the integrand as its
    derivative.
    """
    m = elliptic_parameter(alpha_ell)
    cos_t = math.cos(theta)
    return math.tan(theta) * math.sqrt(
        1.0 - alpha_ell * cos_t * cos_t
    ) - math.sqrt(1.0 - alpha_ell) * ellip_e(theta, m)


def corollary_energy(problem: GrotzschProblem, alpha_ell: float) -> float:
    """Energy rewritten through the boundary condition:

    (2 - a)/(4 pi) * ell^2 * m_Omega + 2 ell int_0^Theta tan^2/sqrt(...).

    Agrees with :func:`energy_p1` at the solved multiplier.
    """
    first = (2.0 - alpha_ell) / (4.0 * math.pi) * problem.ell**2 * problem.mod_target
    return first + 2.0 * problem.ell * tan2_integral(problem.theta, alpha_ell)


def thm2_bound(
    ell: float,
    m_omega: float,
    delta: float | None = None,
    theta: float | None = None,
) -> BoundReport:
    """Sharp p = 1 lower bound for finite-distortion maps of a collar onto
    a ring of modulus m_omega.

    The collar is given either by its hyperbolic radius delta or directly
    by Theta = asin(tanh delta).  The bound is the exact extremal energy,
    so it is attained; the report records the multiplier used.
    """
    if (delta is None) == (theta is None):
        raise ValueError("pass exactly one of delta or theta")
    if theta is None:
        if delta <= 0.0:
            raise ValueError("collar radius must be positive")
        theta = math.asin(math.tanh(delta))
    if not 0.0 < theta < 0.5 * math.pi:
        raise ValueError(f"Theta must lie in (0, pi/2), got {theta}")
    problem = GrotzschProblem(
        ell=ell, T=2.0 * theta / ell, b=m_omega / (2.0 * math.pi), p=1.0
    )
    sol = solve_alpha_p1(problem)
    return BoundReport(
        name="thm2",
        value=sol.energy,
        inputs={"ell": ell, "m_omega": m_omega, "theta": theta},
        hypotheses={"theta_in_range": True, "doubly_connected": True},
        terms={
            "alpha_ell": sol.alpha_ell,
            "boundary_residual": sol.boundary_residual,
            "first_term": (2.0 - sol.alpha_ell) / (4.0 * math.pi) * ell**2 * m_omega,
            "tan2_term": 2.0 * ell * tan2_integral(theta, sol.alpha_ell),
        },
    )
