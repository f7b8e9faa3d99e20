"""Geometry-agnostic numerical substrate.

Gauss quadrature rules (Golub-Welsch), stable removable-singularity
evaluators for sin(x)/x and sinh(x)/x, and least-squares Chebyshev fits
used for one-dimensional analytic continuation.

All objects are immutable after construction and all functions are pure;
summations go through ``numpy.sum`` (pairwise, fixed association order),
so results are reproducible across runs and worker counts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

__all__ = [
    "QuadratureRule",
    "ChebApprox",
    "gauss_hermite",
    "gauss_legendre",
    "trapezoid_periodic",
    "integrate",
    "sin_over_x",
    "sinh_over_x",
    "cheb_fit",
    "geometric_decay_ok",
]

# Crossover between Taylor series and direct evaluation for sin(x)/x-type
# functions; both branches agree to ~1e-16 relative error there.
_SERIES_CUTOFF = 1e-2


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights with a domain descriptor and declared weight function.

    ``kind`` is one of ``gauss_hermite`` (weight e^{-x^2} on R),
    ``gauss_legendre`` (weight 1 on [a, b]) or ``trapezoid_periodic``
    (weight 1 on a full period).
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    domain: tuple[float, float] | str

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if nodes.size > 1 and not np.all(np.diff(nodes) > 0):
            raise ValueError("nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("weights must all be positive")

    @property
    def n(self) -> int:
        return self.nodes.size

    def __call__(self, f: Callable[[np.ndarray], np.ndarray]) -> float | complex:
        return integrate(self, f(self.nodes))


def integrate(rule: QuadratureRule, values: np.ndarray) -> float | complex:
    """Weighted pairwise sum of sampled integrand values."""
    return np.sum(rule.weights * np.asarray(values))


def _golub_welsch(offdiag: np.ndarray, mu0: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights from the symmetric tridiagonal Jacobi matrix.

    ``offdiag`` holds the recurrence coefficients b_k; ``mu0`` is the zeroth
    moment of the weight function.
    """
    n = offdiag.size + 1
    jacobi = np.zeros((n, n))
    idx = np.arange(n - 1)
    jacobi[idx, idx + 1] = offdiag
    jacobi[idx + 1, idx] = offdiag
    nodes, vecs = np.linalg.eigh(jacobi)
    weights = mu0 * vecs[0, :] ** 2
    return nodes, weights


@lru_cache(maxsize=None)
def gauss_hermite(n: int) -> QuadratureRule:
    """n-point rule for integrals against the weight e^{-x^2} on R.

    Exact for polynomials of degree <= 2n-1; the weights sum to sqrt(pi).
    """
    if n < 1:
        raise ValueError(f"gauss_hermite requires n >= 1 (got n={n})")
    b = np.sqrt(np.arange(1, n) / 2.0)
    nodes, weights = _golub_welsch(b, math.sqrt(math.pi))
    # The spectrum is symmetric; symmetrize away eigensolver roundoff so the
    # rule is exactly even.
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule("gauss_hermite", nodes, weights, "real line with weight e^{-x^2}")


@lru_cache(maxsize=None)
def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [a, b], exact for degree <= 2n-1."""
    if n < 1:
        raise ValueError(f"gauss_legendre requires n >= 1 (got n={n})")
    if not b > a:
        raise ValueError(f"degenerate interval [{a}, {b}] rejected")
    k = np.arange(1, n)
    off = k / np.sqrt(4.0 * k**2 - 1.0)
    nodes, weights = _golub_welsch(off, 2.0)
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return QuadratureRule("gauss_legendre", mid + half * nodes, half * weights, (a, b))


@lru_cache(maxsize=None)
def trapezoid_periodic(n: int, period: float = 2.0 * math.pi) -> QuadratureRule:
    """Equally weighted nodes over one period (spectrally accurate for
    smooth periodic integrands; exact for trigonometric polynomials of
    degree < n)."""
    if n < 1:
        raise ValueError(f"trapezoid_periodic requires n >= 1 (got n={n})")
    nodes = period * np.arange(n) / n
    weights = np.full(n, period / n)
    return QuadratureRule("trapezoid_periodic", nodes, weights, (0.0, period))


def sin_over_x(x):
    """sin(x)/x for real or complex x, removable singularity handled.

    Uses the even Taylor series for |x| < 1e-2, relative accuracy <= 1e-14
    on either branch.
    """
    x = np.asarray(x)
    small = np.abs(x) < _SERIES_CUTOFF
    xs = np.where(small, x, 1.0)  # keep the direct branch out of 0/0
    u = xs * xs
    series = 1.0 + u * (-1.0 / 6.0 + u * (1.0 / 120.0 - u / 5040.0))
    xd = np.where(small, 1.0, x)
    direct = np.sin(xd) / xd
    out = np.where(small, series, direct)
    return out[()] if out.ndim == 0 else out


def sinh_over_x(x):
    """sinh(x)/x with the same branch structure as :func:`sin_over_x`."""
    x = np.asarray(x)
    small = np.abs(x) < _SERIES_CUTOFF
    xs = np.where(small, x, 1.0)
    u = xs * xs
    series = 1.0 + u * (1.0 / 6.0 + u * (1.0 / 120.0 + u / 5040.0))
    xd = np.where(small, 1.0, x)
    direct = np.sinh(xd) / xd
    out = np.where(small, series, direct)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class ChebApprox:
    """Least-squares Chebyshev fit on [a, b].

    Evaluation outside the fit interval is permitted (extrapolation of a
    putative analytic continuation); the caller owns that risk, and
    check reports flag it.  ``coefficients`` are exposed so callers can run
    the analyticity-based decay gate.
    """

    interval: tuple[float, float]
    coefficients: np.ndarray
    fit_residual: float
    condition: float = field(default=float("nan"))

    def __call__(self, x):
        a, b = self.interval
        u = (2.0 * np.asarray(x, dtype=float) - (a + b)) / (b - a)
        return np.polynomial.chebyshev.chebval(u, self.coefficients)

    def in_interval(self, x) -> bool:
        a, b = self.interval
        x = np.asarray(x)
        return bool(np.all((x >= a) & (x <= b)))


def cheb_fit(samples, interval, degree: int) -> ChebApprox:
    """Least-squares Chebyshev fit of (x, y) samples on ``interval``.

    Requires at least 8 samples spanning the interval.  A rank-deficient
    normal system is rejected with a condition estimate.
    """
    pts = np.asarray(samples, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 8:
        raise ValueError("cheb_fit needs >= 8 (x, y) samples")
    a, b = float(interval[0]), float(interval[1])
    if not b > a:
        raise ValueError(f"degenerate interval [{a}, {b}] rejected")
    x, y = pts[:, 0], pts[:, 1]
    if x.min() > a + 0.25 * (b - a) or x.max() < b - 0.25 * (b - a):
        raise ValueError("samples must span the fit interval")
    u = (2.0 * x - (a + b)) / (b - a)
    design = np.polynomial.chebyshev.chebvander(u, degree)
    coef, _, rank, sv = np.linalg.lstsq(design, y, rcond=None)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")
    if rank < degree + 1:
        raise ValueError(f"rank-deficient Chebyshev fit (rank {rank} < {degree + 1}, cond ~ {cond:.3e})")
    resid = float(np.max(np.abs(design @ coef - y)))
    return ChebApprox((a, b), coef, resid, cond)


def geometric_decay_ok(coefficients, ratio: float = 0.9, tail: int = 6, floor: float = 1e-13) -> bool:
    """Trust gate for continuation: trailing Chebyshev coefficients must
    decay geometrically (ratio test over the last ``tail`` coefficients).

    Coefficients already at the roundoff floor pass by themselves.
    """
    c = np.abs(np.asarray(coefficients, dtype=float))
    scale = c.max() if c.size else 0.0
    if scale == 0.0:
        return True
    c = c[-(tail + 1):]
    if np.all(c <= floor * scale):
        return True
    ratios = []
    for lo, hi in zip(c[:-1], c[1:]):
        if lo <= floor * scale:
            continue
        ratios.append(hi / lo)
    if not ratios:
        return True
    # Geometric mean tolerates a single odd/even parity dip.
    return float(np.exp(np.mean(np.log(np.maximum(ratios, 1e-300))))) < ratio
