"""Asymptotic and geometric energy bounds.

Everything here returns a :class:`BoundReport` rather than a bare number:
the hypotheses (core-length thresholds, modulus orderings) are easy to
violate silently, so each report carries its inputs, the individual
hypothesis checks, and the sub-terms of the bound.

The central substitution is t = 1/sqrt(1 - a) for the multiplier a < 1,
under which the boundary equation becomes t F(Theta | 1 - t^2) = ell*m_ell
with m_ell = mod_target/(4 pi), and the explicit majorant

    t0 = 4 exp(W_-1(-ell (m_ell + 1/2) / 4))

satisfies t0 log(4/t0) = ell (m_ell + 1/2) identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .specfun import ellip_f, lambert_w

__all__ = [
    "BoundReport",
    "BoundInput",
    "CurveFamilyInput",
    "CurveFamilyBounds",
    "t_of_alpha",
    "alpha_of_t",
    "elliptic_parameter",
    "solve_t",
    "t0",
    "t0_lambert_approx",
    "t0est_lhs",
    "t0est_rhs",
    "t0est_check",
    "thm7_bound",
    "thm7_chain",
    "cot_guard",
    "upper_bound_p1",
    "containment_bound",
    "curve_family_bound",
    "short_target_bound",
    "collar_ratio_diagnostic",
]


@dataclass(frozen=True)
class BoundReport:
    """A named bound with its inputs, hypothesis checks and sub-terms."""

    name: str
    value: float
    inputs: dict = field(default_factory=dict)
    hypotheses: dict = field(default_factory=dict)
    terms: dict = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return all(self.hypotheses.values())

    def compare(self, energy: float) -> dict:
        """Comparison of this bound against a computed energy."""
        return {
            "bound": self.value,
            "energy": energy,
            "gap": energy - self.value,
            "satisfied": energy >= self.value - 1e-9 * max(1.0, abs(energy)),
            "applicable": self.applicable,
        }


@dataclass(frozen=True)
class BoundInput:
    """Inputs for the short-geodesic-in-domain bounds.

    m is (1/2 pi) times the largest annular modulus about a simple closed
    geodesic of the target surface; m_ell = mod_target/(4 pi) defaults to
    the worst case m/2 realised by that fattest annulus.
    """

    ell: float
    m: float
    g: int = 2
    p: float = 1.0
    m_ell: float | None = None

    def __post_init__(self):
        if self.ell <= 0.0 or self.m <= 0.0:
            raise ValueError("ell and m must be positive")
        if self.g < 2 or self.g != int(self.g):
            raise ValueError(f"genus must be an integer >= 2, got {self.g}")
        if self.m_ell is not None and self.m_ell <= 0.0:
            raise ValueError("m_ell must be positive")

    @property
    def effective_m_ell(self) -> float:
        return 0.5 * self.m if self.m_ell is None else self.m_ell


def t_of_alpha(alpha_ell: float) -> float:
    """Substitution t = 1/sqrt(1 - a) for a multiplier a < 1."""
    if alpha_ell >= 1.0:
        raise ValueError(f"multiplier must be below 1, got {alpha_ell}")
    return 1.0 / math.sqrt(1.0 - alpha_ell)

def alpha_of_t(t: float) -> float:
    """Inverse substitution a = 1 - 1/t^2 for t > 0."""
    if t <= 0.0:
        raise ValueError(f"t must be positive, got {t}")
    return 1.0 - 1.0 / (t * t)

def elliptic_parameter(alpha_ell: float) -> float:
    """Elliptic parameter a/(a-1) = 1 - t^2 fed to F and E."""
    if alpha_ell >= 1.0:
        raise ValueError(f"multiplier must be below 1, got {alpha_ell}")
    return alpha_ell / (alpha_ell - 1.0)


def _width_map(t: float, theta: float) -> float:
    return t * ellip_f(theta, 1.0 - t * t)


def solve_t(theta: float, ell: float, m_ell: float, residual_tol: float = 1e-11) -> float:
    """Solve t F(Theta | 1 - t^2) = ell * m_ell for the unique t > 0.

    The left side is concave and strictly increasing from 0 to infinity,
    so the root exists and is unique; we bracket it geometrically and
    finish with bisection, then verify the residual.
    """
    if not 0.0 < theta < 0.5 * math.pi:
        raise ValueError(f"Theta must lie in (0, pi/2), got {theta}")
    target = ell * m_ell
    if target <= 0.0:
        raise ValueError("right side ell*m_ell must be positive")

    lo, hi = 1.0, 1.0
    for _ in range(2200):
        if _width_map(lo, theta) <= target:
            break
        lo *= 0.5
    else:
        raise ArithmeticError("failed to bracket t from below")
    for _ in range(1100):
        if _width_map(hi, theta) >= target:
            break
        hi *= 2.0
    else:
        raise ArithmeticError("failed to bracket t from above")

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _width_map(mid, theta) < target:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    residual = abs(_width_map(t, theta) - target)
    if residual > residual_tol * max(1.0, target):
        raise ArithmeticError(
            f"solve_t residual {residual:g} exceeds {residual_tol:g} "
            f"(theta={theta}, ell={ell}, m_ell={m_ell})"
        )
    return t


def t0(ell: float, m_ell: float) -> float:
    """Explicit majorant t0 = 4 exp(W_-1(-ell (m_ell + 1/2)/4)) of the solved t.

    Defined for ell (m_ell + 1/2) <= 4/e (the W_-1 domain); satisfies the
    algebraic identity t0 log(4/t0) = ell (m_ell + 1/2), and dominates the
    solution of t F(Theta | 1-t^2) = ell m_ell for ell below 0.15.
    """
    if ell <= 0.0 or m_ell <= 0.0:
        raise ValueError("ell and m_ell must be positive")
    arg = -0.25 * ell * (m_ell + 0.5)
    w = lambert_w(arg, branch="lower")  # raises below the branch point
    return 4.0 * math.exp(w)


def t0_lambert_approx(ell: float, m_ell: float, beta: float = 0.3205) -> float:
    """Closed-form approximation of :func:`t0` avoiding the W evaluation.

    Diagnostic only, never used internally.  Its relative error is a few
    times 1e-3 near the top of the branch domain (arguments
    y = ell (m_ell + 1/2) of order 1) but degrades to about 2e-2 as
    y -> 0, where it also loses the property t0/ell -> 0.
    """
    y = ell * (m_ell + 0.5)
    if not 0.0 < y <= 4.0 * math.exp(-1.0):
        raise ValueError(f"argument ell*(m_ell+1/2)={y} outside (0, 4/e]")
    root = math.sqrt(math.log(4.0 / y) - 1.0) if y < 4.0 * math.exp(-1.0) else 0.0
    return (y / math.exp(2.0 / beta)) * math.exp(
        2.0 * math.sqrt(2.0) / (math.sqrt(2.0) * beta + beta * beta * root)
    )


def t0est_lhs(x: float) -> float:
    """Left side 4 exp(W_-1(-x/8)) of the Lambert bound, x in (0, 8/e]."""
    if not 0.0 < x <= 8.0 * math.exp(-1.0) * (1.0 + 1e-15):
        raise ValueError(f"x must lie in (0, 8/e], got {x}")
    return 4.0 * math.exp(lambert_w(-x / 8.0, branch="lower"))

def t0est_rhs(x: float) -> float:
    """Right side x / (2 log(8/x)) of the Lambert bound."""
    if not 0.0 < x <= 8.0 * math.exp(-1.0) * (1.0 + 1e-15):
        raise ValueError(f"x must lie in (0, 8/e], got {x}")
    return x / (2.0 * math.log(8.0 / x))

def t0est_check(x: float) -> bool:
    """True iff 4 exp(W_-1(-x/8)) <= x/(2 log(8/x)) at x (up to rounding).

    Holds on all of (0, 8/e], with equality exactly at the right endpoint
    where both sides equal 4/e.
    """
    lhs, rhs = t0est_lhs(x), t0est_rhs(x)
    return lhs <= rhs + 4e-16 * max(1.0, rhs)


def thm7_bound(inp: BoundInput) -> BoundReport:
    """Explicit p = 1 lower bound for a short geodesic in the domain surface.

    For a shortest geodesic of length ell <= 8/((2m+1) e^(2(2m+1))) the
    total distortion integral is at least

        4 pi (g-1) - 4 + (sqrt(2)/(2m+1)) (1 + log(4/ell)) log(8/(ell (2m+1)))

    which diverges as ell -> 0.  The report carries the two logarithmic
    factors separately and the hypothesis check.
    """
    ell, m, g = inp.ell, inp.m, inp.g
    threshold = 8.0 / ((2.0 * m + 1.0) * math.exp(2.0 * (2.0 * m + 1.0)))
    offset = 4.0 * math.pi * (g - 1) - 4.0
    factor1 = 1.0 + math.log(4.0 / ell)
    factor2 = math.log(8.0 / (ell * (2.0 * m + 1.0)))
    collar_term = math.sqrt(2.0) / (2.0 * m + 1.0) * factor1 * factor2
    return BoundReport(
        name="thm7",
        value=offset + collar_term,
        inputs={"ell": ell, "m": m, "g": g},
        hypotheses={"ell_below_threshold": ell <= threshold},
        terms={
            "offset": offset,
            "collar_term": collar_term,
            "log_factor_1": factor1,
            "log_factor_2": factor2,
            "ell_threshold": threshold,
        },
    )


def thm7_chain(ell: float, m: float, m_ell: float | None = None) -> dict:
    """Pointwise checks of the intermediate inequalities behind thm7_bound.

    Returns, for the given data (m_ell defaults to the worst case m/2):

    * ``l_over_t0``: ell/t0 >= (2/(2m+1)) log(8/(ell (2m+1)))
    * ``f_lower``:   F(pi/2 - ell/2 | 1 - t0^2) >= (1 + log(4/ell))/sqrt(2)
    * ``cot_guard``: tan(ell/2) >= t0, i.e. cot(theta) >= t0 on
      [pi/4, pi/2 - ell/2]
    """
    me = 0.5 * m if m_ell is None else m_ell
    t_0 = t0(ell, me)
    lhs1 = ell / t_0
    rhs1 = (2.0 / (2.0 * m + 1.0)) * math.log(8.0 / (ell * (2.0 * m + 1.0)))
    theta = 0.5 * math.pi - 0.5 * ell
    lhs2 = ellip_f(theta, 1.0 - t_0 * t_0)
    rhs2 = (1.0 + math.log(4.0 / ell)) / math.sqrt(2.0)
    lhs3 = math.tan(0.5 * ell)
    return {
        "t0": t_0,
        "l_over_t0": {"lhs": lhs1, "rhs": rhs1, "ok": lhs1 >= rhs1},
        "f_lower": {"lhs": lhs2, "rhs": rhs2, "ok": lhs2 >= rhs2},
        "cot_guard": {"lhs": lhs3, "rhs": t_0, "ok": lhs3 >= t_0},
    }


def cot_guard(ell: float, m: float, m_ell: float | None = None) -> bool:
    """True iff cot(theta) >= t0 holds on all of [pi/4, pi/2 - ell/2].

    cot is decreasing there, so the check reduces to tan(ell/2) >= t0.
    Guaranteed under the thm7 hypothesis on ell; may fail outside it.
    """
    me = 0.5 * m if m_ell is None else m_ell
    return math.tan(0.5 * ell) >= t0(ell, me)


def upper_bound_p1(ell: float, mod_domain: float, m_omega: float) -> BoundReport:
    """Competitor upper bound for the p = 1 energy on the maximal collar.

    The affine stretch between the rectangles has constant distortion
    (mod_1/m + m/mod_1)/2, giving

        inf energy <= (1/2)(mod_1/m + m/mod_1) * 2 ell / sinh(ell/2).

    The simplified form 4 pi / sinh(ell) is only claimed when the target
    modulus is below the domain modulus.
    """
    if ell <= 0.0 or mod_domain <= 0.0 or m_omega <= 0.0:
        raise ValueError("all inputs must be positive")
    area = 2.0 * ell / math.sinh(0.5 * ell)
    ratio = mod_domain / m_omega
    general = 0.5 * (ratio + 1.0 / ratio) * area
    simplified = 4.0 * math.pi / math.sinh(ell)
    return BoundReport(
        name="upper_p1",
        value=general,
        inputs={"ell": ell, "mod_domain": mod_domain, "m_omega": m_omega},
        hypotheses={"positive_inputs": True},
        terms={
            "general": general,
            "simplified": simplified,
            "simplified_valid": float(m_omega < mod_domain),
            "collar_area": area,
        },
    )


def containment_bound(
    lambda0: float, area_omega: float, mod_omega: float, mod_a: float
) -> float:
    """Lower energy bound when the preimage of the fat annulus sits in a
    round collar of the domain surface.

    Value lambda0 * |Omega| * (mod(A)/mod(Omega) + mod(Omega)/mod(A));
    increasing in mod(A) once mod(A) >= mod(Omega).
    """
    if min(lambda0, area_omega, mod_omega, mod_a) <= 0.0:
        raise ValueError("all inputs must be positive")
    r = mod_a / mod_omega
    return lambda0 * area_omega * (r + 1.0 / r)


@dataclass(frozen=True)
class CurveFamilyInput:
    """Data for the length-area (path family) modulus estimates."""

    d: float                    # min length of homotopically nontrivial curves in U
    k_integral: float           # integral of the distortion over U
    lambda_plus: float = 1.0    # max hyperbolic density on the enclosing region
    lambda_minus: float = 1.0   # min hyperbolic density on the enclosing region
    r_width: float = 1.0        # round-annulus width about the fixed geodesic

    def __post_init__(self):
        if self.d <= 0.0:
            raise ValueError("curve length d must be positive")
        if not 0.0 < self.lambda_minus <= self.lambda_plus:
            raise ValueError("need 0 < lambda_minus <= lambda_plus")
        if self.k_integral < 0.0 or self.r_width <= 0.0:
            raise ValueError("k_integral must be >= 0 and r_width > 0")


@dataclass(frozen=True)
class CurveFamilyBounds:
    """Both directions of the path-family estimate."""

    mod_v_upper: float      # mod(V) <= (1/d^2) * int_U K
    k_integral_lower: float  # int K dsigma >= (2 r lambda_-/lambda_+)^2 mod(A)

    @staticmethod
    def k_lower(inp: CurveFamilyInput, mod_a: float) -> float:
        return (2.0 * inp.r_width * inp.lambda_minus / inp.lambda_plus) ** 2 * mod_a


def curve_family_bound(inp: CurveFamilyInput, mod_a: float | None = None) -> CurveFamilyBounds:
    """Admissibility-based modulus bounds from the curve family joining the
    boundary components.

    The density 1/d is admissible, giving mod(V) <= k_integral / d^2 for
    any finite-distortion image V of the ring U; dually, the distortion
    integral is at least (2 r lambda_-/lambda_+)^2 mod(A) whenever the
    image contains an annulus of modulus mod(A).
    """
    upper = inp.k_integral / (inp.d * inp.d)
    lower = CurveFamilyBounds.k_lower(inp, mod_a) if mod_a is not None else 0.0
    return CurveFamilyBounds(mod_v_upper=upper, k_integral_lower=lower)


def short_target_bound(ell_target: float, a_param: float) -> BoundReport:
    """Displayed lower bound (4 a^2 pi / (2 ell)) (pi - ell) for a short
    geodesic in the *target* surface.

    The constant a is caller data (it is not pinned down by the statement;
    the proof route goes through :func:`containment_bound` and
    :func:`curve_family_bound`, which are the primary forms).
    """
    if not 0.0 < ell_target < math.pi:
        raise ValueError(f"target geodesic length must lie in (0, pi), got {ell_target}")
    value = (4.0 * a_param * a_param * math.pi / (2.0 * ell_target)) * (math.pi - ell_target)
    return BoundReport(
        name="thm1b",
        value=value,
        inputs={"ell_target": ell_target, "a_param": a_param},
        hypotheses={"ell_in_range": True},
        terms={"decay_factor": (math.pi - ell_target) / ell_target},
    )


def collar_ratio_diagnostic(ell: float) -> float:
    """Figure diagnostic (2/ell) F(ell/2 | 1 - (log(4/ell)/ell)^2).

    The ratio of the two collar-term bounds when t is of size
    ell/log(4/ell); stays below 1 on (0, 1e-5] (and indeed for all small
    ell), which is the inequality used where the thm7 constants are
    assembled.
    """
    if ell <= 0.0:
        raise ValueError("ell must be positive")
    u = math.log(4.0 / ell) / ell
    return (2.0 / ell) * ellip_f(0.5 * ell, 1.0 - u * u)
