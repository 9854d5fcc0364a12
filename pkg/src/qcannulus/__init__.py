"""Extremal mappings of finite distortion between hyperbolic annuli.

Computes the unique extremal radial stretches between round hyperbolic
annuli, their exact p-conformal energies in closed form, the collar
geometry they live on, and the sharp lower/upper energy bounds, each
verifiable against independent brute-force quadrature oracles.
"""

from .annulus import (
    Collar,
    HyperbolicAnnulus,
    annulus_from_length,
    annulus_from_s,
    jorgensen_predicate,
    maximal_collar,
    maximal_collar_area,
    maximal_collar_modulus_lower_bound,
)
from .bounds import (
    BoundInput,
    BoundReport,
    CurveFamilyBounds,
    CurveFamilyInput,
    alpha_of_t,
    collar_ratio_diagnostic,
    containment_bound,
    cot_guard,
    curve_family_bound,
    elliptic_parameter,
    short_target_bound,
    solve_t,
    t0,
    t0_lambert_approx,
    t0est_check,
    t0est_lhs,
    t0est_rhs,
    t_of_alpha,
    thm7_bound,
    thm7_chain,
    upper_bound_p1,
)
from .extremal_p import (
    GeneralPSolution,
    solve_general,
    solve_small_ell,
    thm3_bound,
)
from .extremal_p1 import (
    ExtremalSolution,
    alphaell_map,
    boundary_width,
    corollary_energy,
    energy_bracket,
    energy_p1,
    solve_alpha_p1,
    stretch,
    tan2_integral,
    thm2_bound,
    ux_p1,
)
from .grotzsch import GrotzschProblem
from .oracle import (
    PerturbationReport,
    RadialMap,
    energy_quadrature,
    intro_example_check,
    perturbation_test,
)
from .specfun import (
    QuadratureError,
    QuadratureResult,
    ellip_e,
    ellip_f,
    ellip_k,
    ellip_k_complement,
    inc_beta,
    integrate,
    lambert_w,
    sec_power_integral,
)

__version__ = "0.1.0"
