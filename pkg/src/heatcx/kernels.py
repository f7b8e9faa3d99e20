"""Fiber kernel measures shared by the sphere and hyperbolic modules.

The isometry and inversion formulas on S^3 and H^3 use the same kernel
measure up to the exchange sinh <-> sin and e^{-t/2} <-> e^{+t/2}; both
modules draw their weights from the constructors here, so the duality
dictionary is a code-path identity rather than a convention to keep in
sync by hand.

``fiber="hyperbolic"`` gives the weights for a compact base (S^3: the
fiber carries the H^3 heat kernel measure); ``fiber="spherical"`` gives
the weights for the H^3 base (an unwrapped spherical kernel measure).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import sin_over_x, sinh_over_x

__all__ = [
    "NuKernel",
    "nu_kernel",
    "inversion_fiber_weight",
    "isometry_fiber_weight",
]


@dataclass(frozen=True)
class NuKernel:
    """Radial heat kernel of hyperbolic d-space, d in {1, 3}.

    d=3 has the closed form e^{-t/2} e^{-R^2/2t} (2 pi t)^{-3/2} R/sinh R;
    d=1 is the Euclidean Gaussian (hyperbolic 1-space is the line).
    """

    d: int
    t: float

    def __post_init__(self):
        if self.d not in (1, 3):
            raise ValueError("NuKernel supports d in {1, 3}")
        if self.t <= 0:
            raise ValueError("time must be positive")

    def __call__(self, R):
        return nu_kernel(self, R)


def nu_kernel(k: NuKernel, R):
    """Evaluate the fiber heat kernel at radius R >= 0 (R=0 by series)."""
    R = np.asarray(R, dtype=float)
    if np.any(R < 0):
        raise ValueError("radius must be >= 0")
    gauss = np.exp(-R * R / (2.0 * k.t)) * (2.0 * math.pi * k.t) ** (-k.d / 2.0)
    if k.d == 1:
        out = gauss
    else:
        out = math.exp(-k.t / 2.0) * gauss / sinh_over_x(R)
    return out[()] if out.ndim == 0 else out


def _sc(rho, fiber: str):
    if fiber == "hyperbolic":
        return sinh_over_x(rho)
    if fiber == "spherical":
        return sin_over_x(rho)
    raise ValueError("fiber must be 'hyperbolic' or 'spherical'")


def inversion_fiber_weight(rho, t: float, fiber: str):
    """Radial density of the inversion kernel measure (d=3 fibers):

        exp(-sigma t/2) * e^{-rho^2/2t} (2 pi t)^{-3/2} * sc(rho)/rho,

    with (sc, sigma) = (sinh, +1) for hyperbolic fibers and (sin, -1) for
    spherical fibers.  Multiply by rho^2 dOmega drho for the fiber integral.
    """
    rho = np.asarray(rho, dtype=float)
    sigma = 1.0 if fiber == "hyperbolic" else -1.0
    out = (
        math.exp(-sigma * t / 2.0)
        * np.exp(-rho * rho / (2.0 * t))
        * (2.0 * math.pi * t) ** -1.5
        * _sc(rho, fiber)
    )
    return out[()] if out.ndim == 0 else out


def isometry_fiber_weight(rho, t: float, fiber: str):
    """Radial density of the isometry kernel measure (d=3 fibers):

        exp(-sigma t) * e^{-rho^2/t} (pi t)^{-3/2} * sc(2 rho)/(2 rho).

    This is nu_{2t}(|2Y|) j(2Y) 2^d collapsed to its radial profile; the
    doubled time and radius relative to the inversion weight are load
    bearing (swapping the two is the designed-to-fail negative control).
    """
    rho = np.asarray(rho, dtype=float)
    sigma = 1.0 if fiber == "hyperbolic" else -1.0
    out = (
        math.exp(-sigma * t)
        * np.exp(-rho * rho / t)
        * (math.pi * t) ** -1.5
        * _sc(2.0 * rho, fiber)
    )
    return out[()] if out.ndim == 0 else out
