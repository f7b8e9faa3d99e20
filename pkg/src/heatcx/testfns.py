"""Catalog of initial conditions with exact oracle data.

Every verification in the geometry modules starts from one of these
descriptors, each of which carries a closed-form pointwise evaluator, a
closed-form transform against its geometry's eigenbasis, and a closed-form
squared L^2 norm.  The catalog is closed: no user-defined black boxes, so
every acceptance check has an independent ground truth.

Geometries and descriptors
--------------------------
euclidean(d), d in {1,2,3}:
    gaussian(center, variance)  -- the density (2 pi v)^{-d/2} e^{-|x-c|^2/2v}
    hermite(k)                  -- L^2(R)-orthonormal Hermite function (d=1)
    fourier_mode(xi)            -- e^{i xi.x} (not square-integrable)
circle:
    fourier_mode(l), constant(c)       -- basis e^{i l theta}, measure dtheta
sphere3:
    zonal_eigen(l), constant(c)        -- unit-norm zonal eigenfunctions
                                          about the pole e1, round measure of
                                          total volume 2 pi^2
hyperbolic3_radial:
    spectral_gaussian(width)    -- defined by its radial spectral profile
                                   ghat(lam) = exp(-lam^2 / (2 width^2))
finite_sum -- complex linear combinations within one geometry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .numerics import sinh_over_x

__all__ = [
    "TestFunction",
    "SpectralRep",
    "L2NormSq",
    "gaussian",
    "hermite",
    "fourier_mode",
    "zonal_eigen",
    "spectral_gaussian",
    "constant",
    "finite_sum",
    "cos_mode",
    "sin_mode",
    "evaluate",
    "exact_transform",
    "exact_l2_norm",
    "hermite_function",
    "hermite_heat",
    "parse_descriptor",
    "format_descriptor",
    "VOL_S3",
]

VOL_S3 = 2.0 * math.pi**2

_GEOMETRIES = ("euclidean", "circle", "sphere3", "hyperbolic3_radial")


class L2NormSq(float):
    """Squared L^2 norm carrying its provenance tag ("closed_form" or
    "quadrature")."""

    provenance: str

    def __new__(cls, value, provenance="closed_form"):
        obj = super().__new__(cls, value)
        obj.provenance = provenance
        return obj


@dataclass(frozen=True)
class TestFunction:
    """Symbolic descriptor of an initial condition.

    ``params`` is a kind-specific tuple; ``terms`` is only populated for
    ``finite_sum`` and holds (coefficient, TestFunction) pairs.
    """

    geometry: str
    d: int
    kind: str
    params: tuple = ()
    terms: tuple = ()

    def __post_init__(self):
        if self.geometry not in _GEOMETRIES:
            raise ValueError(f"unknown geometry {self.geometry!r}")

    def flattened(self) -> list[tuple[complex, "TestFunction"]]:
        """Expand nested finite sums into (coefficient, atom) pairs."""
        if self.kind != "finite_sum":
            return [(1.0 + 0.0j, self)]
        out = []
        for c, g in self.terms:
            out.extend((c * ci, gi) for ci, gi in g.flattened())
        return out


# ---------------------------------------------------------------------------
# constructors

def gaussian(center, variance: float, d: int = 1) -> TestFunction:
    if variance <= 0:
        raise ValueError("gaussian variance must be positive")
    c = np.atleast_1d(np.asarray(center, dtype=float))
    if c.size == 1 and d > 1:
        c = np.full(d, c[0])
    if c.size != d:
        raise ValueError(f"center must have dimension {d}")
    return TestFunction("euclidean", d, "gaussian", (tuple(c), float(variance)))


def hermite(k: int) -> TestFunction:
    if k < 0:
        raise ValueError("hermite order must be >= 0")
    return TestFunction("euclidean", 1, "hermite", (int(k),))


def fourier_mode(xi, geometry: str = "euclidean", d: int = 1) -> TestFunction:
    if geometry == "circle":
        ell = int(xi)
        return TestFunction("circle", 1, "fourier_mode", (ell,))
    x = np.atleast_1d(np.asarray(xi, dtype=float))
    if x.size != d:
        raise ValueError(f"mode frequency must have dimension {d}")
    return TestFunction("euclidean", d, "fourier_mode", (tuple(x),))


def zonal_eigen(ell: int) -> TestFunction:
    if ell < 0:
        raise ValueError("zonal line index must be >= 0")
    return TestFunction("sphere3", 3, "zonal_eigen", (int(ell),))


def spectral_gaussian(width: float) -> TestFunction:
    if width <= 0:
        raise ValueError("spectral width must be positive")
    return TestFunction("hyperbolic3_radial", 3, "spectral_gaussian", (float(width),))


def constant(c, geometry: str, d: int | None = None) -> TestFunction:
    dims = {"euclidean": d or 1, "circle": 1, "sphere3": 3, "hyperbolic3_radial": 3}
    return TestFunction(geometry, dims[geometry], "constant", (complex(c),))


def finite_sum(*terms) -> TestFunction:
    """finite_sum((c1, f1), (c2, f2), ...) within a single geometry."""
    if not terms:
        raise ValueError("finite_sum needs at least one term")
    fns = [f for _, f in terms]
    geo, d = fns[0].geometry, fns[0].d
    if any(f.geometry != geo or f.d != d for f in fns):
        raise ValueError("finite_sum terms must share one geometry")
    return TestFunction(geo, d, "finite_sum", (), tuple((complex(c), f) for c, f in terms))


def cos_mode(ell: int) -> TestFunction:
    """cos(l theta) on the circle."""
    return finite_sum((0.5, fourier_mode(ell, "circle")), (0.5, fourier_mode(-ell, "circle")))


def sin_mode(ell: int) -> TestFunction:
    """sin(l theta) on the circle."""
    return finite_sum((-0.5j, fourier_mode(ell, "circle")), (0.5j, fourier_mode(-ell, "circle")))


# ---------------------------------------------------------------------------
# Hermite machinery (physicists' H_k, L^2(R, dx)-orthonormal functions)

def _hermite_poly(k: int, x):
    coef = np.zeros(k + 1)
    coef[k] = 1.0
    return np.polynomial.hermite.hermval(x, coef)


def _hermite_norm(k: int) -> float:
    return 1.0 / math.sqrt(2.0**k * math.factorial(k) * math.sqrt(math.pi))


def hermite_function(k: int, x):
    """Orthonormal Hermite function h_k; entire, so complex x is allowed."""
    x = np.asarray(x)
    return _hermite_norm(k) * _hermite_poly(k, x) * np.exp(-x * x / 2.0)


def hermite_heat(k: int, t: float, z):
    """Closed form of the time-t heat evolution of h_k, continued to z.

    Derived from the Hermite generating function: with alpha = 1 + t and
    gamma = sqrt((t-1)/(t+1)) (principal branch),

        F(z) = N_k (1+t)^{-1/2} e^{-z^2/(2 alpha)} ((-i) gamma)^k H_k(i z/(alpha gamma)),

    which is real on the real axis.  t = 0 reduces to h_k itself.
    """
    z = np.asarray(z, dtype=complex)
    alpha = 1.0 + t
    pref = _hermite_norm(k) / math.sqrt(alpha)
    if abs(t - 1.0) < 1e-12:
        # gamma -> 0 limit: only the leading Hermite term survives.
        poly = (2.0 * z / alpha) ** k
    else:
        gamma = np.sqrt(complex(t - 1.0) / (t + 1.0))
        poly = ((-1j) * gamma) ** k * _hermite_poly(k, 1j * z / (alpha * gamma))
    out = pref * np.exp(-z * z / (2.0 * alpha)) * poly
    return out[()] if out.ndim == 0 else out


def _gauss_density(v: float, d: int, x2):
    return (2.0 * math.pi * v) ** (-d / 2.0) * np.exp(-x2 / (2.0 * v))


# ---------------------------------------------------------------------------
# spectral representation

@dataclass(frozen=True)
class SpectralRep:
    """A function written against its geometry's eigenbasis.

    euclidean: ``lines`` are (xi, coeff) plane-wave atoms, ``gauss_terms``
    are (A, center, V) meaning A * rho_V(x - center), and ``hermite_terms``
    are (coeff, k) Hermite components; ``t_applied`` is the total heat time
    baked into the coefficients (the heat multiplier acts on all families).

    circle / sphere3: ``lines`` are (l, coeff) against e^{i l theta} resp.
    the unit-norm zonal functions.
    """

    geometry: str
    d: int
    t_applied: float = 0.0
    lines: tuple = ()
    gauss_terms: tuple = ()
    hermite_terms: tuple = ()

    def line_dict(self) -> dict:
        out: dict = {}
        for key, c in self.lines:
            out[key] = out.get(key, 0.0) + c
        return out

    @property
    def has_density(self) -> bool:
        return bool(self.gauss_terms or self.hermite_terms)

    def density(self, xi) -> np.ndarray:
        """Spectral density against the convention f(x) = int e^{i xi.x} fhat(xi) dxi."""
        if self.geometry != "euclidean":
            raise ValueError("spectral densities are a euclidean notion here")
        if self.lines:
            raise ValueError("plane-wave atoms have no spectral density")
        xi = np.atleast_2d(np.asarray(xi, dtype=float))
        xi2 = np.sum(xi * xi, axis=-1)
        out = np.zeros(xi.shape[0], dtype=complex)
        for A, c, V in self.gauss_terms:
            phase = np.exp(-1j * xi @ np.asarray(c))
            out += A * (2.0 * math.pi) ** (-self.d) * np.exp(-V * xi2 / 2.0) * phase
        for coeff, k in self.hermite_terms:
            hk = hermite_function(k, xi[:, 0])
            out += coeff * (2.0 * math.pi) ** (-0.5) * (-1j) ** k * hk * np.exp(
                -self.t_applied * xi2 / 2.0
            )
        return out

    def density_decay(self) -> float:
        """Gaussian decay scale a with |fhat(xi)| <~ C e^{-a |xi|^2 / 2}."""
        scales = [V for _, _, V in self.gauss_terms]
        scales += [1.0 + self.t_applied for _ in self.hermite_terms]
        if not scales:
            raise ValueError("no continuous spectral part")
        return min(scales)


# ---------------------------------------------------------------------------
# catalog operations

def evaluate(f: TestFunction, p):
    """Pointwise value of f at a manifold point.

    Points: euclidean -- (d,) array or scalar; circle -- angle in radians;
    sphere3 -- unit 4-vector (or the polar angle from e1 as a scalar);
    hyperbolic3_radial -- geodesic distance from the basepoint (or a
    Minkowski 4-vector on the hyperboloid).
    """
    if f.kind == "finite_sum":
        return sum(c * evaluate(g, p) for c, g in f.terms)
    if f.kind == "constant":
        return f.params[0]
    if f.geometry == "euclidean":
        x = np.atleast_1d(np.asarray(p, dtype=float))
        if x.size != f.d:
            raise ValueError(f"point has dimension {x.size}, expected {f.d}")
        if f.kind == "gaussian":
            c, v = f.params
            dx = x - np.asarray(c)
            return float(_gauss_density(v, f.d, float(dx @ dx)))
        if f.kind == "hermite":
            return float(hermite_function(f.params[0], x[0]))
        if f.kind == "fourier_mode":
            return complex(np.exp(1j * float(np.asarray(f.params[0]) @ x)))
    if f.geometry == "circle" and f.kind == "fourier_mode":
        return complex(np.exp(1j * f.params[0] * float(p)))
    if f.geometry == "sphere3" and f.kind == "zonal_eigen":
        theta = _sphere3_angle(p)
        return float(zonal_character(f.params[0], theta).real) / math.sqrt(VOL_S3)
    if f.geometry == "hyperbolic3_radial" and f.kind == "spectral_gaussian":
        r = _h3_radius(p)
        a = 1.0 / (2.0 * f.params[0] ** 2)
        val = math.sqrt(math.pi / a) / (4.0 * a) * np.exp(-r * r / (4.0 * a))
        return float(val / sinh_over_x(r)) / VOL_S3
    raise ValueError(f"cannot evaluate {f.kind} on {f.geometry}")


def _sphere3_angle(p) -> float:
    p = np.asarray(p, dtype=float)
    if p.ndim == 0:
        return float(p)
    if p.shape != (4,):
        raise ValueError("sphere3 points are unit 4-vectors")
    return float(np.arccos(np.clip(p[0] / np.linalg.norm(p), -1.0, 1.0)))


def _h3_radius(p) -> float:
    p = np.asarray(p, dtype=float)
    if p.ndim == 0:
        if p < 0:
            raise ValueError("radial coordinate must be >= 0")
        return float(p)
    if p.shape != (4,):
        raise ValueError("hyperboloid points are Minkowski 4-vectors")
    return float(np.arccosh(max(p[0], 1.0)))


def zonal_character(ell: int, theta):
    """S^3 zonal character sin((l+1) theta)/sin(theta) = U_l(cos theta).

    Stable for real and complex theta: a direct sine ratio away from the
    zeros of sin, a Chebyshev recurrence in cos(theta) near them.
    """
    theta = np.asarray(theta, dtype=complex)
    w = np.cos(theta)
    s = np.sin(theta)
    safe = np.abs(s) > 0.1
    direct = np.sin((ell + 1) * np.where(safe, theta, 0.0)) / np.where(safe, s, 1.0)
    u_prev = np.ones_like(w)
    u = 2.0 * w
    if ell == 0:
        rec = u_prev
    else:
        for _ in range(ell - 1):
            u_prev, u = u, 2.0 * w * u - u_prev
        rec = u
    out = np.where(safe, direct, rec)
    return out[()] if out.ndim == 0 else out


def exact_transform(f: TestFunction):
    """Closed-form transform of f against its geometry's eigenbasis.

    Returns a :class:`SpectralRep` (a :class:`~heatcx.hyperbolic3.RadialSpectralFn`
    for the hyperbolic geometry).
    """
    if f.geometry == "hyperbolic3_radial":
        from .hyperbolic3 import radial_spectral_fn  # local import breaks the cycle

        return radial_spectral_fn(f)
    lines: list = []
    gauss_terms: list = []
    hermite_terms: list = []
    for c, g in f.flattened():
        if g.geometry == "euclidean":
            if g.kind == "gaussian":
                gauss_terms.append((c, g.params[0], g.params[1]))
            elif g.kind == "hermite":
                hermite_terms.append((c, g.params[0]))
            elif g.kind == "fourier_mode":
                lines.append((g.params[0], c))
            elif g.kind == "constant":
                # the zero mode: constants ride along as xi = 0 atoms
                lines.append((tuple([0.0] * g.d), c * g.params[0]))
            else:
                raise ValueError(f"{g.kind} has no closed transform on R^d")
        elif g.geometry == "circle":
            if g.kind == "fourier_mode":
                lines.append((g.params[0], c))
            elif g.kind == "constant":
                lines.append((0, c * g.params[0]))
        elif g.geometry == "sphere3":
            if g.kind == "zonal_eigen":
                lines.append((g.params[0], c))
            elif g.kind == "constant":
                lines.append((0, c * g.params[0] * math.sqrt(VOL_S3)))
    return SpectralRep(
        f.geometry, f.d, 0.0, tuple(lines), tuple(gauss_terms), tuple(hermite_terms)
    )


def _inner_product(c1, g1: TestFunction, c2, g2: TestFunction) -> complex:
    """<c1 g1, c2 g2> for catalog atoms (closed forms only)."""
    w = c1 * np.conj(c2)
    k1, k2 = sorted((g1.kind, g2.kind))
    if g1.geometry == "euclidean":
        if "fourier_mode" in (k1, k2) or "constant" in (k1, k2):
            raise ValueError(f"{k1}/{k2} is not square-integrable on R^d")
        if g1.kind == "hermite" and g2.kind == "hermite":
            return w if g1.params == g2.params else 0.0
        if g1.kind == "gaussian" and g2.kind == "gaussian":
            (a, va), (b, vb) = g1.params, g2.params
            dx = np.asarray(a) - np.asarray(b)
            return w * _gauss_density(va + vb, g1.d, float(dx @ dx))
        # gaussian x hermite: integrating h_k against rho_v(.-c) is the
        # time-v heat evolution of h_k at c.
        gg, hh = (g1, g2) if g1.kind == "gaussian" else (g2, g1)
        c, v = gg.params
        val = hermite_heat(hh.params[0], v, complex(c[0]))
        return w * complex(val)
    if g1.geometry == "circle":
        l1 = g1.params[0] if g1.kind == "fourier_mode" else 0
        l2 = g2.params[0] if g2.kind == "fourier_mode" else 0
        a1 = 1.0 if g1.kind == "fourier_mode" else g1.params[0]
        a2 = 1.0 if g2.kind == "fourier_mode" else g2.params[0]
        return w * a1 * np.conj(a2) * (2.0 * math.pi if l1 == l2 else 0.0)
    if g1.geometry == "sphere3":
        l1 = g1.params[0] if g1.kind == "zonal_eigen" else 0
        l2 = g2.params[0] if g2.kind == "zonal_eigen" else 0
        a1 = 1.0 if g1.kind == "zonal_eigen" else g1.params[0] * math.sqrt(VOL_S3)
        a2 = 1.0 if g2.kind == "zonal_eigen" else g2.params[0] * math.sqrt(VOL_S3)
        return w * a1 * np.conj(a2) * (1.0 if l1 == l2 else 0.0)
    if g1.geometry == "hyperbolic3_radial":
        if "constant" in (g1.kind, g2.kind):
            raise ValueError("constants are not square-integrable on H^3")
        # Plancherel pairing of two spectral gaussians.
        aa = 1.0 / (2.0 * g1.params[0] ** 2)
        ab = 1.0 / (2.0 * g2.params[0] ** 2)
        return w * math.sqrt(math.pi) / (4.0 * (aa + ab) ** 1.5) / VOL_S3
    raise ValueError("no closed inner product")


def exact_l2_norm(f: TestFunction) -> L2NormSq:
    """Squared L^2 norm of f on its geometry (closed form), with provenance.

    Rejects descriptors that are not square-integrable (constants and plane
    waves on R^d, constants on H^3).
    """
    atoms = f.flattened()
    total = 0.0
    for ci, gi in atoms:
        for cj, gj in atoms:
            total += complex(_inner_product(ci, gi, cj, gj)).real
    return L2NormSq(total, "closed_form")


# ---------------------------------------------------------------------------
# descriptor (de)serialization for the CLI config format

_KIND_ALIASES = {
    "gaussian": "gaussian",
    "hermite": "hermite",
    "mode": "fourier_mode",
    "fourier_mode": "fourier_mode",
    "zonal": "zonal_eigen",
    "zonal_eigen": "zonal_eigen",
    "sgauss": "spectral_gaussian",
    "spectral_gaussian": "spectral_gaussian",
    "constant": "constant",
    "cos_mode": "cos_mode",
    "sin_mode": "sin_mode",
}


def parse_descriptor(text: str, geometry: str, d: int = 1) -> TestFunction:
    """Parse 'coef*kind(args) + ...' into a TestFunction."""
    terms = []
    for chunk in text.replace(" ", "").split("+"):
        if not chunk:
            raise ValueError("empty descriptor term")
        coef = 1.0
        if "*" in chunk:
            cs, chunk = chunk.split("*", 1)
            coef = float(cs)
        if "(" not in chunk or not chunk.endswith(")"):
            raise ValueError(f"malformed descriptor term {chunk!r}")
        name, argtext = chunk[:-1].split("(", 1)
        if name not in _KIND_ALIASES:
            raise ValueError(f"unknown descriptor kind {name!r}")
        kind = _KIND_ALIASES[name]
        args = [float(a) for a in argtext.split(",")] if argtext else []
        if kind == "gaussian":
            g = gaussian(args[:-1] if len(args) > 2 else args[0], args[-1], d=d)
        elif kind == "hermite":
            g = hermite(int(args[0]))
        elif kind == "fourier_mode":
            g = fourier_mode(int(args[0]) if geometry == "circle" else args, geometry, d=d)
        elif kind == "zonal_eigen":
            g = zonal_eigen(int(args[0]))
        elif kind == "spectral_gaussian":
            g = spectral_gaussian(args[0])
        elif kind == "constant":
            g = constant(args[0], geometry, d=d)
        elif kind == "cos_mode":
            g = cos_mode(int(args[0]))
        else:
            g = sin_mode(int(args[0]))
        terms.append((coef, g))
    if len(terms) == 1 and terms[0][0] == 1.0:
        return terms[0][1]
    return finite_sum(*terms)


def format_descriptor(f: TestFunction) -> str:
    if f.kind == "finite_sum":
        return " + ".join(
            f"{c.real:g}*{format_descriptor(g)}" for c, g in f.terms
        )
    if f.kind == "gaussian":
        c, v = f.params
        return f"gaussian({','.join(f'{x:g}' for x in c)},{v:g})"
    if f.kind == "constant":
        return f"constant({f.params[0].real:g})"
    if f.kind == "fourier_mode" and f.geometry == "euclidean":
        return f"mode({','.join(f'{x:g}' for x in f.params[0])})"
    if f.kind == "fourier_mode":
        return f"mode({f.params[0]})"
    name = {"hermite": "hermite", "zonal_eigen": "zonal", "spectral_gaussian": "sgauss"}[f.kind]
    return f"{name}({f.params[0]:g})"
