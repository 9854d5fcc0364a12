"""The normalised rectangle problem induced by a round hyperbolic annulus.

After the exponential change of variables, minimising the p-th power of the
distortion over homeomorphisms between annuli of moduli mod_1 and mod_2
becomes a one-dimensional problem on the strip [0, T] x [0, 1]:

    minimise  int_0^T (1/2 (u_x + 1/u_x))^p lambda(x) dx
    subject to u(0) = 0, u(T) = b, u increasing,

with domain width T = mod_1/(2 pi), target width b = mod_2/(2 pi), and
weight lambda(x) = ell^2 / cos^2(ell (x - T/2)).  The half scaled width
Theta = ell T / 2 must stay below pi/2, which is automatic when the domain
is a collar (Theta = asin(tanh delta)).

The minimiser form and its variational equation require the domain to be a
round annulus; the minimum value is not invariant under replacing the
domain by a conformally equivalent non-round region, so callers must feed
round-annulus data here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .annulus import Collar, maximal_collar

__all__ = ["GrotzschProblem"]


@dataclass(frozen=True)
class GrotzschProblem:
    """Domain width T, target width b, core length ell, exponent p >= 1."""

    ell: float
    T: float
    b: float
    p: float = 1.0

    def __post_init__(self):
        if self.ell <= 0.0:
            raise ValueError(f"core length must be positive, got {self.ell}")
        if self.T <= 0.0 or self.b <= 0.0:
            raise ValueError("domain and target widths must be positive")
        if self.p < 1.0:
            raise ValueError(f"exponent must satisfy p >= 1, got {self.p}")
        if not self.theta < 0.5 * math.pi:
            raise ValueError(
                f"half width Theta = ell*T/2 = {self.theta} must stay below pi/2"
            )

    @property
    def theta(self) -> float:
        """Half the scaled domain width, Theta = ell*T/2 = ell*mod_1/(4 pi)."""
        return 0.5 * self.ell * self.T

    @property
    def mod_domain(self) -> float:
        return 2.0 * math.pi * self.T

    @property
    def mod_target(self) -> float:
        return 2.0 * math.pi * self.b

    @classmethod
    def from_moduli(cls, ell, mod_domain, mod_target, p=1.0) -> "GrotzschProblem":
        """Problem for annuli of the given conformal moduli."""
        return cls(
            ell=ell,
            T=mod_domain / (2.0 * math.pi),
            b=mod_target / (2.0 * math.pi),
            p=p,
        )

    @classmethod
    def from_collar(cls, collar: Collar, mod_target, p=1.0) -> "GrotzschProblem":
        """Problem whose domain is the given collar (T = 2 Theta / ell)."""
        return cls(
            ell=collar.ell,
            T=2.0 * collar.theta / collar.ell,
            b=mod_target / (2.0 * math.pi),
            p=p,
        )

    @classmethod
    def for_maximal_collar(cls, ell, mod_target, p=1.0) -> "GrotzschProblem":
        """Problem on the maximal collar about a shortest geodesic of length ell."""
        return cls.from_collar(maximal_collar(ell), mod_target, p=p)

    def with_exponent(self, p: float) -> "GrotzschProblem":
        return replace(self, p=p)

    def weight(self, x):
        """Weight lambda(x) = ell^2 / cos^2(ell (x - T/2)) on [0, T].

        Symmetric about T/2 where it attains its minimum ell^2; accepts
        scalars or arrays.
        """
        x = np.asarray(x, dtype=float)
        if np.any(x < -1e-15) or np.any(x > self.T * (1.0 + 1e-15)):
            raise ValueError("weight evaluated outside [0, T]")
        c = np.cos(self.ell * (x - 0.5 * self.T))
        out = (self.ell / c) ** 2
        return float(out) if out.ndim == 0 else out

    def weight_integral(self, x1: float, x2: float) -> float:
        """Exact integral of the weight over [x1, x2] within [0, T].

        Antiderivative ell * tan(ell (x - T/2)); the basis of the cellwise
        exact oracle energies.
        """
        if not (0.0 <= x1 <= x2 <= self.T * (1.0 + 1e-15)):
            raise ValueError("weight integral limits must satisfy 0 <= x1 <= x2 <= T")
        h = 0.5 * self.T
        return self.ell * (math.tan(self.ell * (x2 - h)) - math.tan(self.ell * (x1 - h)))

    @property
    def identity_energy(self) -> float:
        """Energy of the identity stretch: total weight 2 ell tan(Theta).

        Equals the hyperbolic area 2 ell sinh(delta) when the domain is the
        collar of radius delta.
        """
        return 2.0 * self.ell * math.tan(self.theta)
