"""Round hyperbolic annuli and collars.

The round annulus A_s = {1/s < |z| < s} carries its complete hyperbolic
metric; the unit circle is the core geodesic, of length ell = pi^2/log(s).
All lengths, distances and areas are hyperbolic; the only model-coordinate
quantity exposed is the Euclidean radius in A_s (``radius_at_distance``),
which is explicitly model data.

A collar is the tubular neighbourhood of hyperbolic radius delta about the
core geodesic.  Its conformal modulus is (4 pi / ell) asin(tanh delta) and
its hyperbolic area is 2 ell sinh(delta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "HyperbolicAnnulus",
    "Collar",
    "annulus_from_length",
    "annulus_from_s",
    "maximal_collar",
    "maximal_collar_area",
    "maximal_collar_modulus_lower_bound",
    "jorgensen_predicate",
]

_PI_SQ = math.pi * math.pi
# Keep |ell*log(r)/(2pi)| clear of pi/2 so the metric density stays finite.
_BOUNDARY_PAD = 1e-12


@dataclass(frozen=True)
class HyperbolicAnnulus:
    """Round annulus A_s determined by its core geodesic length ell > 0."""

    ell: float

    def __post_init__(self):
        if not (self.ell > 0.0 and math.isfinite(self.ell)):
            raise ValueError(f"core geodesic length must be positive, got {self.ell}")

    @property
    def log_s(self) -> float:
        """log of the outer model radius; always finite."""
        return _PI_SQ / self.ell

    @property
    def s(self) -> float:
        """Outer model radius exp(pi^2/ell); +inf if it overflows a double."""
        try:
            return math.exp(self.log_s)
        except OverflowError:
            return math.inf

    @property
    def modulus(self) -> float:
        """Conformal modulus of the whole annulus, 2 log(s) = 2 pi^2 / ell."""
        return 2.0 * self.log_s

    def _angle(self, r: float) -> float:
        """The angle ell*log(r)/(2 pi) entering the density, range-checked."""
        u = self.ell * math.log(r) / (2.0 * math.pi)
        if abs(u) >= 0.5 * math.pi - _BOUNDARY_PAD:
            raise ValueError(
                f"radius {r} at or beyond the boundary circles of A_s (s={self.s:g})"
            )
        return u

    def density(self, r: float) -> float:
        """Hyperbolic metric density at |z| = r, for 1/s < r < s.

        Strictly increasing on [1, s), blows up at the boundary; the value
        at r = 1 is ell/(2 pi), so the core circle has length ell.
        """
        if r <= 0.0:
            raise ValueError(f"radius must be positive, got {r}")
        u = self._angle(r)
        return self.ell / (2.0 * math.pi * r * math.cos(u))

    def geodesic_distance(self, r: float) -> float:
        """Hyperbolic distance from the core geodesic to the circle |z| = r.

        Closed form atanh(sin(ell*log(r)/(2 pi))), valid for 1 <= r < s.
        Inverse of :meth:`radius_at_distance`.
        """
        if r < 1.0:
            raise ValueError(f"need r >= 1 (use symmetry r -> 1/r), got {r}")
        u = self._angle(r)
        return math.atanh(math.sin(u))

    def radius_at_distance(self, delta: float) -> float:
        """Euclidean model radius of the circle at hyperbolic distance delta.

        r = exp((2 pi / ell) asin(tanh delta)); may overflow to +inf for
        very small ell, in which case work with delta/theta directly.
        """
        if delta < 0.0:
            raise ValueError(f"distance must be nonnegative, got {delta}")
        ang = math.asin(math.tanh(delta))
        if ang > 0.5 * math.pi:  # unreachable for finite delta; guard anyway
            raise ValueError(f"distance {delta} reaches the ideal boundary")
        try:
            return math.exp(2.0 * math.pi * ang / self.ell)
        except OverflowError:
            return math.inf

    def circle_length(self, delta: float) -> float:
        """Hyperbolic length of the distance-delta circle: ell * cosh(delta)."""
        if delta < 0.0:
            raise ValueError(f"distance must be nonnegative, got {delta}")
        return self.ell * math.cosh(delta)

    def collar(self, delta: float) -> "Collar":
        return Collar(annulus=self, delta=delta)


@dataclass(frozen=True)
class Collar:
    """Tubular neighbourhood of hyperbolic radius delta about the core."""

    annulus: HyperbolicAnnulus
    delta: float

    def __post_init__(self):
        if not (self.delta > 0.0 and math.isfinite(self.delta)):
            raise ValueError(f"collar radius must be positive, got {self.delta}")

    @property
    def ell(self) -> float:
        return self.annulus.ell

    @property
    def theta(self) -> float:
        """Half the scaled width: Theta = asin(tanh delta) in (0, pi/2).

        Evaluated as the Gudermannian 2 atan(tanh(delta/2)), which stays
        fully accurate for large delta where asin(tanh(.)) loses half its
        digits to the flat spot of asin at 1.
        """
        return 2.0 * math.atan(math.tanh(0.5 * self.delta))

    @property
    def modulus(self) -> float:
        """Conformal modulus (4 pi / ell) asin(tanh delta) <= 2 pi^2 / ell."""
        return 4.0 * math.pi * self.theta / self.ell

    @property
    def area(self) -> float:
        """Hyperbolic area 2 ell sinh(delta)."""
        return 2.0 * self.ell * math.sinh(self.delta)


def annulus_from_length(ell: float) -> HyperbolicAnnulus:
    """Round annulus with core geodesic length ell; s = exp(pi^2/ell)."""
    return HyperbolicAnnulus(ell=ell)


def annulus_from_s(s: float) -> HyperbolicAnnulus:
    """Round annulus A_s from its model radius s > 1; ell = pi^2/log(s)."""
    if not s > 1.0:
        raise ValueError(f"model radius must exceed 1, got {s}")
    return HyperbolicAnnulus(ell=_PI_SQ / math.log(s))


def maximal_collar(ell: float) -> Collar:
    """The collar of radius asinh(1/sinh(ell/2)) about a shortest geodesic.

    Every shortest closed geodesic of length ell in a closed hyperbolic
    surface admits an embedded collar of at least this radius.  Its half
    width is Theta = asin(sech(ell/2)), its area 2*ell/sinh(ell/2) <= 4,
    and its conformal modulus (4 pi/ell) asin(sech(ell/2)).
    """
    annulus = HyperbolicAnnulus(ell=ell)
    delta = math.asinh(1.0 / math.sinh(0.5 * ell))
    return Collar(annulus=annulus, delta=delta)


def maximal_collar_area(ell: float) -> float:
    """Area 2*ell/sinh(ell/2) of the maximal collar; at most 4, -> 4 as ell -> 0."""
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    return 2.0 * ell / math.sinh(0.5 * ell)


def maximal_collar_modulus_lower_bound(ell: float) -> float:
    """The closed-form modulus estimate 4 pi sech(ell/2) / ell.

    This underestimates the exact modulus (4 pi/ell) asin(sech(ell/2)) of
    the maximal collar (asin(y) >= y) and itself dominates the polynomial
    bound 4 pi/ell - pi ell/2.
    """
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    return 4.0 * math.pi / (ell * math.cosh(0.5 * ell))


def jorgensen_predicate(tau_f: float, tau_g: float, theta: float) -> bool:
    """Universal discreteness constraint for crossing hyperbolic axes.

    True iff sinh(tau_f/2) sinh(tau_g/2) sin(theta) >= 1, the inequality
    satisfied by translation lengths tau_f, tau_g of a discrete torsion
    free group whose axes cross at angle theta.  Diagnostic used in the
    collar-radius derivation.
    """
    if tau_f <= 0.0 or tau_g <= 0.0:
        raise ValueError("translation lengths must be positive")
    if not 0.0 < theta < math.pi:
        raise ValueError(f"crossing angle must lie in (0, pi), got {theta}")
    return math.sinh(0.5 * tau_f) * math.sinh(0.5 * tau_g) * math.sin(theta) >= 1.0
