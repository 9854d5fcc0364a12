"""Special functions used by the closed forms: incomplete elliptic integrals,
real Lambert W branches, incomplete Beta differences, and the adaptive
quadrature backbone that serves as the independent oracle for all of them.

Conventions
-----------
Elliptic integrals use the *parameter* m (not the modulus k) throughout:

    F(phi | m) = int_0^phi dt / sqrt(1 - m sin^2 t)
    E(phi | m) = int_0^phi sqrt(1 - m sin^2 t) dt

with phi in [0, pi/2] and m < 1.  Deeply negative m is a first-class use
case here (m = a/(a-1) for multipliers a -> -inf), so implementations must
stay accurate for m down to -1e18 and beyond.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate as _sp_integrate
from scipy import special as _sp_special

__all__ = [
    "QuadratureResult",
    "QuadratureError",
    "integrate",
    "ellip_f",
    "ellip_e",
    "ellip_k",
    "ellip_k_complement",
    "lambert_w",
    "inc_beta",
    "sec_power_integral",
]

_INV_E = math.exp(-1.0)
_HALF_PI = 0.5 * math.pi


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to meet the requested tolerance.

    Carries the partial estimate and its error estimate so callers can
    report what was achieved before giving up.
    """

    def __init__(self, message: str, value: float, abs_error: float, neval: int):
        super().__init__(message)
        self.value = value
        self.abs_error = abs_error
        self.neval = neval


@dataclass(frozen=True)
class QuadratureResult:
    """Value, error estimate and cost of one adaptive integration."""

    value: float
    abs_error: float
    neval: int


def integrate(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12
) -> QuadratureResult:
    """Adaptive quadrature of ``f`` over [lo, hi] to absolute tolerance ``tol``.

    Backed by QUADPACK (Gauss-Kronrod with epsilon extrapolation), which
    copes with integrable endpoint singularities.  Deterministic for fixed
    inputs.

    Raises
    ------
    QuadratureError
        If the requested tolerance cannot be certified.  The partial
        estimate is attached to the exception.
    """
    if not tol > 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("integration limits must be finite")
    value, abserr, info, *tail = _sp_integrate.quad(
        f, lo, hi, epsabs=tol, epsrel=0.0, limit=500, full_output=1
    )
    neval = int(info["neval"])
    if tail:  # quad appends a message (and possibly explanations) on trouble
        raise QuadratureError(
            f"quadrature did not converge to tol={tol:g}: {tail[0]}",
            value=value,
            abs_error=abserr,
            neval=neval,
        )
    if abserr > tol and abserr > 10.0 * abs(value) * 1e-16:
        raise QuadratureError(
            f"quadrature error estimate {abserr:g} exceeds tol={tol:g}",
            value=value,
            abs_error=abserr,
            neval=neval,
        )
    return QuadratureResult(value=value, abs_error=abserr, neval=neval)


def _check_elliptic_args(phi: float, m: float, strict: bool = True) -> None:
    if not 0.0 <= phi <= _HALF_PI:
        raise ValueError(f"phi must lie in [0, pi/2], got {phi}")
    edge = m * math.sin(phi) ** 2
    if edge > 1.0 or (strict and edge == 1.0):
        raise ValueError(f"m*sin(phi)^2 must stay below 1, got m={m}, phi={phi}")


def ellip_f(phi: float, m: float) -> float:
    """Incomplete elliptic integral of the first kind, parameter convention.

    Evaluates int_0^phi dt/sqrt(1 - m sin^2 t) for phi in [0, pi/2] and
    m sin^2(phi) < 1.  Accurate for arbitrarily negative m.
    """
    _check_elliptic_args(phi, m)
    if phi == 0.0:
        return 0.0
    if m == 0.0:
        return phi
    return float(_sp_special.ellipkinc(phi, m))


def ellip_e(phi: float, m: float) -> float:
    """Incomplete elliptic integral of the second kind, parameter convention.

    Evaluates int_0^phi sqrt(1 - m sin^2 t) dt; the integrand is still real
    (and zero) at m sin^2(phi) = 1, so that edge is allowed here although
    :func:`ellip_f` diverges there.
    """
    _check_elliptic_args(phi, m, strict=False)
    if phi == 0.0:
        return 0.0
    if m == 0.0:
        return phi
    return float(_sp_special.ellipeinc(phi, m))


def ellip_k(m: float) -> float:
    """Complete elliptic integral K(m) = F(pi/2 | m), for m < 1."""
    if m >= 1.0:
        raise ValueError(f"K(m) requires m < 1, got {m}")
    if m == 0.0:
        return _HALF_PI
    return float(_sp_special.ellipk(m))


def ellip_k_complement(t: float) -> float:
    """K(1 - t^2) computed from the complementary modulus t, for t in (0, 1].

    Near m = 1 the direct route K(m) loses half the significant digits to
    the cancellation in 1 - m; the arithmetic-geometric mean in t,

        K(1 - t^2) = pi / (2 * AGM(1, t)),

    is machine accurate down to t = 1e-300 and is what the power-series
    bracket tests for t*K(1-t^2) require.
    """
    if not 0.0 < t <= 1.0:
        raise ValueError(f"complementary modulus must lie in (0, 1], got {t}")
    a, b = 1.0, t
    for _ in range(64):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def lambert_w(x: float, branch: str = "principal") -> float:
    """Real Lambert W: the solution w of w*exp(w) = x on the named branch.

    branch="principal" is W_0 on [-1/e, inf); branch="lower" is W_-1 on
    [-1/e, 0), which takes values in (-inf, -1].  Arguments within a few
    ulp below -1/e are treated as the branch point (both branches return
    exactly -1 there); anything further out is a domain error.
    """
    if branch not in ("principal", "lower"):
        raise ValueError(f"branch must be 'principal' or 'lower', got {branch!r}")
    branch_pad = 4.0 * math.ulp(_INV_E)
    if x < -_INV_E - branch_pad:
        raise ValueError(f"argument {x} below the branch point -1/e")
    if x <= -_INV_E + branch_pad:
        return -1.0
    if branch == "lower":
        if x >= 0.0:
            raise ValueError(f"lower branch requires x < 0, got {x}")
        w = _sp_special.lambertw(x, k=-1)
    else:
        w = _sp_special.lambertw(x, k=0)
    w = complex(w)
    if not math.isfinite(w.real) or abs(w.imag) > 1e-12 * max(1.0, abs(w.real)):
        raise ArithmeticError(f"Lambert W evaluation failed for x={x}, branch={branch}")
    return w.real


def inc_beta(x: float, a: float, b: float) -> float:
    """Unnormalised incomplete Beta function B_x(a, b) for a, b > 0.

    B_x(a, b) = int_0^x t^(a-1) (1-t)^(b-1) dt.  For the a <= 0 cases that
    arise at exponent p = 1, only differences are finite; use
    :func:`sec_power_integral`, which implements exactly those differences.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if a <= 0.0 or b <= 0.0:
        raise ValueError(
            "inc_beta requires a, b > 0; for a <= 0 only differences are "
            "defined -- use sec_power_integral"
        )
    return float(_sp_special.betainc(a, b, x) * _sp_special.beta(a, b))


def sec_power_integral(x1: float, x2: float, p: float) -> float:
    """Definite integral of cos(x)^(-2/(p+1)) over [x1, x2], p >= 1.

    This is the incomplete-Beta difference

        -1/2 * [B_{cos^2 x}(1/2 - 1/(p+1), 1/2)]_{x1}^{x2},

    the quantity every small-core-length energy formula consumes.  For
    p = 1 the antiderivative is elementary (atanh(sin x)) and the upper
    limit pi/2 is a non-integrable singularity; for p > 1 the endpoint
    x = pi/2 is integrable and allowed.
    """
    if p < 1.0:
        raise ValueError(f"exponent p must be >= 1, got {p}")
    if not 0.0 <= x1 <= x2:
        raise ValueError(f"need 0 <= x1 <= x2, got x1={x1}, x2={x2}")
    if x2 > _HALF_PI:
        raise ValueError(f"upper limit {x2} beyond pi/2: integrand singular inside")
    if x1 == x2:
        return 0.0
    if p == 1.0:
        if x2 >= _HALF_PI:
            raise ValueError("integral of sec(x) diverges at pi/2")
        return math.atanh(math.sin(x2)) - math.atanh(math.sin(x1))
    a = 0.5 - 1.0 / (p + 1.0)
    complete = float(_sp_special.beta(a, 0.5))

    def _B(x: float) -> float:
        # the double nearest pi/2 sits ~6e-17 short of it, where cos^2 is
        # ~4e-33 rather than 0; read it as the exact (improper) endpoint
        c2 = 0.0 if x >= _HALF_PI else math.cos(x) ** 2
        return float(_sp_special.betainc(a, 0.5, c2)) * complete

    return 0.5 * (_B(x1) - _B(x2))
