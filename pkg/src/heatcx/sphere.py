"""Heat transforms on the circle and the 3-sphere, continued to the
complexified sphere, with isometry/inversion checks, reproducing-kernel
pointwise bounds, and the compact/noncompact duality probe.

The complexified sphere is {z in C^{d+1} : z.z = 1} with the bilinear
(unconjugated) form; Phi(x, Y) = exp_x(iY) identifies it with the tangent
bundle.  The fiber measures come from :mod:`heatcx.kernels` with
``fiber="hyperbolic"``; the hyperbolic module uses the same constructors
with ``fiber="spherical"``, which is the duality dictionary as a shared
code path.

S^3 spectral conventions: zonal lines about the pole e1 with the unit-norm
zonal functions Z_l = chi_l / sqrt(2 pi^2), chi_l(theta) =
sin((l+1) theta)/sin(theta), eigenvalue -l(l+2), heat multiplier
e^{-t l(l+2)/2}.  The circle uses e^{i l theta} with eigenvalue -l^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import testfns
from .kernels import NuKernel, inversion_fiber_weight, isometry_fiber_weight, nu_kernel
from .numerics import gauss_legendre, sin_over_x, sinh_over_x, trapezoid_periodic
from .report import CheckReport
from .testfns import VOL_S3, SpectralRep, TestFunction, zonal_character

__all__ = [
    "SpherePoint",
    "SphereTangent",
    "ComplexSpherePoint",
    "SphereHeatKernel",
    "NuKernel",
    "nu_kernel",
    "nu_pde_residual",
    "nu_normalization",
    "sphere_exp",
    "phi_map",
    "sphere_heat_transform",
    "continue_sphere",
    "isometry_check_sphere",
    "inversion_sphere",
    "s3_heat_kernel",
    "make_s3_heat_kernel",
    "s3_heat_kernel_continued",
    "pointwise_bound_sdbnd",
    "duality_probe",
    "sobolev_s3_check",
    "multiply_sphere",
    "POLE",
    "base_point",
]

POLE = np.array([1.0, 0.0, 0.0, 0.0])


@dataclass(frozen=True)
class SpherePoint:
    """Unit vector in R^{d+1}."""

    u: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        if abs(np.linalg.norm(u) - 1.0) > 1e-12:
            raise ValueError("|u| must equal 1 within 1e-12")
        object.__setattr__(self, "u", u)

    @property
    def d(self) -> int:
        return self.u.size - 1


@dataclass(frozen=True)
class SphereTangent:
    """Tangent vector at a sphere point: Y.u = 0."""

    base: SpherePoint
    Y: np.ndarray

    def __post_init__(self):
        Y = np.asarray(self.Y, dtype=float)
        if Y.shape != self.base.u.shape:
            raise ValueError("tangent vector has the wrong dimension")
        if abs(float(Y @ self.base.u)) > 1e-12 * (1.0 + np.linalg.norm(Y)):
            raise ValueError("Y must be tangent: Y.u = 0 within 1e-12")
        object.__setattr__(self, "Y", Y)


@dataclass(frozen=True)
class ComplexSpherePoint:
    """Point of the complexified sphere: z.z = 1 bilinearly (this is not
    the unit sphere of C^{d+1})."""

    z: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=complex)
        if abs(complex(np.sum(z * z)) - 1.0) > 1e-12:
            raise ValueError("bilinear constraint z.z = 1 violated")
        object.__setattr__(self, "z", z)


def base_point(alpha: float) -> SpherePoint:
    """S^3 point at polar angle alpha from the pole e1."""
    return SpherePoint(np.array([math.cos(alpha), math.sin(alpha), 0.0, 0.0]))


def _as_tangent(p, Y) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(p, SpherePoint):
        p = p.u
    p = np.asarray(p, dtype=float)
    if isinstance(Y, SphereTangent):
        Y = Y.Y
    Y = np.asarray(Y, dtype=float)
    if abs(float(Y @ p)) > 1e-10 * (1.0 + np.linalg.norm(Y)):
        raise ValueError("Y is not tangent at p")
    return p, Y


def sphere_exp(p, Y) -> SpherePoint:
    """Geodesic exponential: cos|Y| p + (sin|Y|/|Y|) Y (|Y|=0 by series)."""
    p, Y = _as_tangent(p, Y)
    r = float(np.linalg.norm(Y))
    return SpherePoint(math.cos(r) * p + float(sin_over_x(r)) * Y)


def phi_map(p, Y) -> ComplexSpherePoint:
    """Phi(x, Y) = exp_x(iY) = cosh|Y| x + i (sinh|Y|/|Y|) Y."""
    p, Y = _as_tangent(p, Y)
    r = float(np.linalg.norm(Y))
    return ComplexSpherePoint(math.cosh(r) * p + 1j * float(sinh_over_x(r)) * Y)


# ---------------------------------------------------------------------------
# fiber kernel diagnostics

def nu_pde_residual(k: NuKernel, t_vals, R_vals, ht: float = 5e-4, hR: float = 2e-3) -> float:
    """Max residual of d nu/dt = (1/2)[d^2/dR^2 + (d-1) coth R d/dR] nu on
    the probe grid, by 4th-order centered finite differences."""
    tg, Rg = np.meshgrid(np.asarray(t_vals, float), np.asarray(R_vals, float), indexing="ij")

    def nu(ts, Rs):
        gauss = np.exp(-Rs * Rs / (2.0 * ts)) * (2.0 * math.pi * ts) ** (-k.d / 2.0)
        if k.d == 1:
            return gauss
        return np.exp(-ts / 2.0) * gauss / sinh_over_x(Rs)

    dt = (nu(tg - 2 * ht, Rg) - 8 * nu(tg - ht, Rg) + 8 * nu(tg + ht, Rg) - nu(tg + 2 * ht, Rg)) / (
        12 * ht
    )
    dR = (nu(tg, Rg - 2 * hR) - 8 * nu(tg, Rg - hR) + 8 * nu(tg, Rg + hR) - nu(tg, Rg + 2 * hR)) / (
        12 * hR
    )
    dRR = (
        -nu(tg, Rg - 2 * hR)
        + 16 * nu(tg, Rg - hR)
        - 30 * nu(tg, Rg)
        + 16 * nu(tg, Rg + hR)
        - nu(tg, Rg + 2 * hR)
    ) / (12 * hR * hR)
    resid = dt - 0.5 * (dRR + (k.d - 1) / np.tanh(Rg) * dR)
    return float(np.max(np.abs(resid)))


def nu_normalization(k: NuKernel, n: int = 400) -> float:
    """c_d int_0^inf nu_t(R) (sinh R)^{d-1} dR (should equal 1)."""
    c_d = 2.0 if k.d == 1 else 4.0 * math.pi
    Rmax = k.t * (k.d - 1) + math.sqrt(2.0 * k.t * 40.0) + 5.0
    rule = gauss_legendre(n, 0.0, Rmax)
    vals = nu_kernel(k, rule.nodes) * np.sinh(rule.nodes) ** (k.d - 1)
    if k.d == 1:
        # hyperbolic 1-space is the line: plain Gaussian over both half-lines
        vals = nu_kernel(k, rule.nodes)
    return float(c_d * np.sum(rule.weights * vals))


# ---------------------------------------------------------------------------
# spectral machinery

def _eigenvalue(ell: int, d: int) -> float:
    return float(ell * (ell + d - 1))


def sphere_heat_transform(f: TestFunction, t: float, d: int) -> SpectralRep:
    """Multiplier e^{-t l(l+d-1)/2} on each spectral line."""
    if d not in (1, 3):
        raise ValueError("d must be 1 (circle) or 3")
    geo = "circle" if d == 1 else "sphere3"
    if f.geometry != geo:
        raise ValueError("geometry mismatch")
    rep = testfns.exact_transform(f)
    lines = tuple(
        (ell, c * math.exp(-t * _eigenvalue(abs(ell), d) / 2.0)) for ell, c in rep.lines
    )
    return SpectralRep(geo, d, rep.t_applied + t, lines)


def _circle_value(F: SpectralRep, theta_c) -> np.ndarray:
    theta_c = np.asarray(theta_c, dtype=complex)
    out = np.zeros_like(theta_c, dtype=complex)
    for ell, c in F.lines:
        out = out + c * np.exp(1j * ell * theta_c)
    return out


def _zonal_value(F: SpectralRep, w) -> np.ndarray:
    """Sum of lines against U_l(w)/sqrt(2 pi^2) for w = cos(theta_C).

    One Chebyshev recurrence covers every line; the recurrence follows the
    dominant solution, which is the stable direction for complexified w.
    """
    w = np.asarray(w, dtype=complex)
    out = np.zeros_like(w, dtype=complex)
    if not F.lines:
        return out
    coef = F.line_dict()
    u_prev = np.ones_like(w)  # U_0
    u_cur = 2.0 * w  # U_1
    for ell in range(max(coef) + 1):
        if ell == 0:
            u_l = u_prev
        elif ell == 1:
            u_l = u_cur
        else:
            u_prev, u_cur = u_cur, 2.0 * w * u_cur - u_prev
            u_l = u_cur
        c = coef.get(ell)
        if c:
            out = out + c * u_l
    return out / math.sqrt(VOL_S3)


def continue_sphere(F: SpectralRep, p, Y, d: int) -> complex:
    """F(exp_p(iY)) by the spectral sum with complexified zonal angle."""
    if d == 1:
        if isinstance(p, SpherePoint):
            theta0 = math.atan2(p.u[1], p.u[0])
        else:
            theta0 = float(p)
        if np.ndim(Y) == 0:
            y = float(Y)
        else:
            pu = np.array([math.cos(theta0), math.sin(theta0)])
            tangent = np.array([-math.sin(theta0), math.cos(theta0)])
            _, Yv = _as_tangent(pu, Y)
            y = float(Yv @ tangent)
        return complex(_circle_value(F, theta0 + 1j * y))
    z = phi_map(p, Y).z
    w = complex(z @ POLE.astype(complex))
    return complex(_zonal_value(F, np.asarray(w)))


# ---------------------------------------------------------------------------
# S^3 heat kernel

def _lmax_real(t: float, d: int, tol: float = 1e-14) -> int:
    ell = 0
    while math.exp(-t * _eigenvalue(ell, d) / 2.0) * (ell + 1) ** 2 >= tol:
        ell += 1
        if ell > 100000:
            raise RuntimeError("l_max runaway")
    return ell


def _lmax_continued(t: float, im_radius: float) -> int:
    # largest term of e^{-t(l+1)^2/2 + (l+1) R} sits at l+1 = R/t; the tail
    # budget adds sqrt(2C/t) with C ~ 38 (relative 1e-14)
    return int(math.ceil(im_radius / t + math.sqrt(2.0 * 38.0 / t))) + 4


@dataclass(frozen=True)
class SphereHeatKernel:
    """Truncated eigen-series of the S^3 heat kernel based at a point."""

    t: float
    l_max: int
    weights: tuple  # weights[l] = e^{-t l(l+2)/2} (l+1) / (2 pi^2)

    def __call__(self, theta):
        """Kernel value at geodesic angle theta (real or complex)."""
        theta = np.asarray(theta, dtype=complex)
        out = np.zeros_like(theta)
        for ell, wgt in enumerate(self.weights):
            out = out + wgt * zonal_character(ell, theta)
        return out[()] if out.ndim == 0 else out


def make_s3_heat_kernel(t: float, im_radius: float = 0.0) -> SphereHeatKernel:
    if t <= 0:
        raise ValueError("t must be positive")
    lmax = max(_lmax_real(t, 3), _lmax_continued(t, im_radius) if im_radius > 0 else 0)
    if (lmax + 1) * im_radius > 690.0:
        raise ValueError("continued series would overflow; shrink the radius")
    weights = tuple(
        math.exp(-t * _eigenvalue(ell, 3) / 2.0) * (ell + 1) / VOL_S3 for ell in range(lmax + 1)
    )
    return SphereHeatKernel(t, lmax, weights)


def s3_heat_kernel(t: float, theta: float) -> float:
    """S^3 heat kernel at real geodesic angle theta in [0, pi]."""
    if not 0.0 <= theta <= math.pi:
        raise ValueError("theta must lie in [0, pi]")
    return float(np.real(make_s3_heat_kernel(t)(theta)))


def s3_heat_kernel_continued(t: float, rho: float) -> float:
    """Continued kernel at the imaginary angle i*rho (positive series
    sum(e^{-t l(l+2)/2} (l+1) sinh((l+1) rho) / (2 pi^2 sinh rho)))."""
    if rho < 0:
        raise ValueError("rho must be >= 0")
    lmax = max(_lmax_real(t, 3), _lmax_continued(t, rho))
    ells = np.arange(lmax + 1)
    if rho == 0.0:
        terms = np.exp(-t * ells * (ells + 2) / 2.0) * (ells + 1) ** 2
        return float(np.sum(terms) / VOL_S3)
    terms = (
        np.exp(-t * ells * (ells + 2) / 2.0)
        * (ells + 1)
        * np.sinh((ells + 1) * rho)
        / math.sinh(rho)
    )
    return float(np.sum(terms) / VOL_S3)


# ---------------------------------------------------------------------------
# isometry / inversion

def _angle_mesh(F: SpectralRep, rho, alpha, beta):
    """cos(theta_C) on the (rho, alpha, beta) mesh for zonal data."""
    rg, ag, bg = np.meshgrid(rho, alpha, beta, indexing="ij")
    return np.cosh(rg) * np.cos(ag) - 1j * np.sinh(rg) * np.sin(ag) * np.cos(bg)


def _rho_max(F: SpectralRep, t: float) -> float:
    lmax_f = max((ell for ell, _ in F.lines), default=0)
    return t * (lmax_f + 1) + math.sqrt(40.0 * t) + 1.0


def isometry_check_sphere(
    f: TestFunction,
    t: float,
    d: int,
    n: int = 64,
    tol: float = 1e-4,
    swap_kernels: bool = False,
) -> CheckReport:
    """Fiber-and-base quadrature of the isometry integral against the exact
    L^2 norm.  ``swap_kernels=True`` uses the inversion kernel measure in
    place of the isometry one (designed-to-fail negative control)."""
    F = sphere_heat_transform(f, t, d)
    rhs = float(testfns.exact_l2_norm(f))
    if d == 1:
        ntheta = 8 * (max((abs(ell) for ell, _ in F.lines), default=0) + 2)
        th = trapezoid_periodic(ntheta)
        k2 = NuKernel(1, 2.0 * t)
        L = math.sqrt(t) * 9.0
        yr = gauss_legendre(n * 2, -L, L)
        thg, yg = np.meshgrid(th.nodes, yr.nodes, indexing="ij")
        vals = np.abs(_circle_value(F, thg + 1j * yg)) ** 2
        wy = nu_kernel(NuKernel(1, t), np.abs(yg)) if swap_kernels else 2.0 * nu_kernel(
            k2, 2.0 * np.abs(yg)
        )
        lhs = float(np.sum(th.weights[:, None] * yr.weights[None, :] * vals * wy))
        coarse_nodes = n
        nodes = {"theta": ntheta, "y": yr.n}
    else:
        rho_hi = _rho_max(F, t)
        rr = gauss_legendre(max(48, n), 0.0, rho_hi)
        aa = gauss_legendre(max(48, n // 2 * 2), 0.0, math.pi)
        bb = gauss_legendre(max(32, n // 2), 0.0, math.pi)
        w = _angle_mesh(F, rr.nodes, aa.nodes, bb.nodes)
        dens = np.abs(_zonal_value(F, w)) ** 2
        rg, ag, bg = np.meshgrid(rr.nodes, aa.nodes, bb.nodes, indexing="ij")
        if swap_kernels:
            wfib = inversion_fiber_weight(rg, t, "hyperbolic")
        else:
            wfib = isometry_fiber_weight(rg, t, "hyperbolic")
        meas = (4.0 * math.pi * np.sin(ag) ** 2) * (2.0 * math.pi * np.sin(bg)) * rg**2
        w3 = (
            rr.weights[:, None, None]
            * aa.weights[None, :, None]
            * bb.weights[None, None, :]
        )
        lhs = float(np.sum(dens * wfib * meas * w3))
        nodes = {"rho": rr.n, "alpha": aa.n, "beta": bb.n}
        coarse_nodes = n
    drift = float("nan")
    return CheckReport(
        id=f"sphere{d}.isometry[{testfns.format_descriptor(f)};t={t}]"
        + (";swap_kernels" if swap_kernels else ""),
        lhs=lhs,
        rhs=rhs,
        tol=tol,
        node_counts=nodes,
        drift=drift,
    )


def inversion_sphere(
    F: SpectralRep, t: float, d: int, p, R: float, n: int = 128, swap_kernels: bool = False
) -> float:
    """Fiber integral of F(exp_p(iY)) against the inversion kernel measure
    over |Y| <= R; converges to f(p) as R grows."""
    if R <= 0:
        return 0.0
    if d == 1:
        theta0 = math.atan2(p.u[1], p.u[0]) if isinstance(p, SpherePoint) else float(p)
        yr = gauss_legendre(n, -R, R)
        vals = _circle_value(F, theta0 + 1j * yr.nodes)
        if swap_kernels:
            wy = 2.0 * nu_kernel(NuKernel(1, 2.0 * t), 2.0 * np.abs(yr.nodes))
        else:
            wy = nu_kernel(NuKernel(1, t), np.abs(yr.nodes))
        return float(np.sum(yr.weights * vals * wy).real)
    pu = p.u if isinstance(p, SpherePoint) else np.asarray(p, dtype=float)
    alpha = math.acos(max(-1.0, min(1.0, float(pu @ POLE))))
    rr = gauss_legendre(n, 0.0, R)
    bb = gauss_legendre(max(48, n // 2), 0.0, math.pi)
    rg, bg = np.meshgrid(rr.nodes, bb.nodes, indexing="ij")
    w = np.cosh(rg) * math.cos(alpha) - 1j * np.sinh(rg) * math.sin(alpha) * np.cos(bg)
    vals = _zonal_value(F, w)
    wfib = (
        isometry_fiber_weight(rg, t, "hyperbolic")
        if swap_kernels
        else inversion_fiber_weight(rg, t, "hyperbolic")
    )
    meas = 2.0 * math.pi * np.sin(bg) * rg**2
    total = np.sum(rr.weights[:, None] * bb.weights[None, :] * vals * wfib * meas)
    return float(total.real)


# ---------------------------------------------------------------------------
# bounds and probes

def pointwise_bound_sdbnd(f: TestFunction, t: float, grid, tol: float = 1e-9) -> CheckReport:
    """Reproducing-kernel bound on S^3:
    |F(exp_x(iY))| <= ||f|| sqrt(rho_{2t,x}(exp_x(2iY))) on the grid of
    (point, tangent) pairs."""
    F = sphere_heat_transform(f, t, 3)
    norm = math.sqrt(float(testfns.exact_l2_norm(f)))
    worst = 0.0
    for p, Y in grid:
        _, Yv = _as_tangent(p.u if isinstance(p, SpherePoint) else p, Y)
        rho = float(np.linalg.norm(Yv))
        val = abs(continue_sphere(F, p, Y, 3))
        bound = norm * math.sqrt(s3_heat_kernel_continued(2.0 * t, 2.0 * rho))
        worst = max(worst, val / bound)
    return CheckReport(
        id=f"sphere3.pointwise_bound[{testfns.format_descriptor(f)};t={t}]",
        lhs=worst,
        rhs=1.0,
        tol=tol,
        mode="bound",
        node_counts={"grid": len(grid)},
    )


def duality_probe(t: float, rho_grid, tol: float = math.inf) -> CheckReport:
    """Probe of the heat-kernel duality band: report the min/max over the
    grid of rho_{t,x}(exp_x(iY)) nu_t(|Y|) j(Y) (2 pi t)^3, plus the
    continued-kernel growth profile constant."""
    rho_grid = np.asarray(rho_grid, dtype=float)
    k = NuKernel(3, t)
    prods = []
    eq22 = []
    for rho in rho_grid:
        rho = float(rho)
        rc = s3_heat_kernel_continued(t, rho)
        nu = float(nu_kernel(k, rho))
        j = float(sinh_over_x(rho)) ** 2
        prods.append(rc * nu * j * (2.0 * math.pi * t) ** 3)
        profile = math.exp(rho * rho / (2.0 * t)) / float(sinh_over_x(rho))
        eq22.append(rc / profile)
    prods = np.asarray(prods)
    a_t, b_t = float(np.min(prods)), float(np.max(prods))
    finite = bool(np.all(np.isfinite(prods)))
    return CheckReport(
        id=f"sphere3.duality_probe[t={t}]",
        lhs=b_t,
        rhs=a_t,
        tol=tol,
        node_counts={"rho": rho_grid.size},
        trust_failures=() if finite else ("nonfinite_product",),
        details={
            "a_t": a_t,
            "b_t": b_t,
            "growth_profile_sup": float(np.max(eq22)),
            "products": prods.tolist(),
        },
    )


def sobolev_s3_check(f: TestFunction, n_order: int, t: float, n: int = 64) -> CheckReport:
    """Polynomially weighted isometry integral (finite for H^{2n} data) and
    the fitted constant of the matching pointwise bound."""
    F = sphere_heat_transform(f, t, 3)
    rho_hi = _rho_max(F, t)
    rr = gauss_legendre(max(48, n), 0.0, rho_hi)
    aa = gauss_legendre(max(48, n), 0.0, math.pi)
    bb = gauss_legendre(max(32, n // 2), 0.0, math.pi)
    w = _angle_mesh(F, rr.nodes, aa.nodes, bb.nodes)
    dens = np.abs(_zonal_value(F, w)) ** 2
    rg, ag, bg = np.meshgrid(rr.nodes, aa.nodes, bb.nodes, indexing="ij")
    # n = 0 degenerates to the plain isometry weight
    poly = 1.0 if n_order == 0 else 1.0 + rg ** (4 * n_order)
    wfib = isometry_fiber_weight(rg, t, "hyperbolic") * poly
    meas = (4.0 * math.pi * np.sin(ag) ** 2) * (2.0 * math.pi * np.sin(bg)) * rg**2
    w3 = rr.weights[:, None, None] * aa.weights[None, :, None] * bb.weights[None, None, :]
    integral = float(np.sum(dens * wfib * meas * w3))
    # fitted constant of the pointwise bound along the pole direction
    rhos = np.linspace(1e-3, 1.5, 60)
    worst = 0.0
    for rho in rhos:
        val = abs(continue_sphere(F, SpherePoint(POLE), rho * np.array([0, 1.0, 0, 0]), 3))
        damp = (
            (1.0 + rho ** (2 * n_order))
            * math.sqrt(2.0 * rho / math.sinh(2.0 * rho))
            * math.exp(-rho * rho / (2.0 * t))
        )
        worst = max(worst, val * damp)
    return CheckReport(
        id=f"sphere3.sobolev[{testfns.format_descriptor(f)};n={n_order},t={t}]",
        lhs=integral,
        rhs=integral,
        tol=math.inf,
        node_counts={"rho": rr.n, "alpha": aa.n, "beta": bb.n},
        details={"integral": integral, "fitted_C": worst},
    )


def multiply_sphere(
    f1: TestFunction, t: float, f2: TestFunction, s: float, tol: float = 1e-8
) -> CheckReport:
    """Clebsch-Gordan product of two S^3 heat images, divided back through
    the time-r multiplier (1/r = 1/s + 1/t); exact finite line algebra."""
    F1 = sphere_heat_transform(f1, t, 3)
    F2 = sphere_heat_transform(f2, s, 3)
    r = s * t / (s + t)
    prod: dict[int, complex] = {}
    for l1, c1 in F1.lines:
        for l2, c2 in F2.lines:
            if c1 == 0 or c2 == 0:
                continue
            for j in range(abs(l1 - l2), l1 + l2 + 1, 2):
                prod[j] = prod.get(j, 0.0) + c1 * c2 / math.sqrt(VOL_S3)
    recovered = {j: c * math.exp(r * _eigenvalue(j, 3) / 2.0) for j, c in prod.items()}
    # forward check on an angle grid: e^{r Lap/2} f against F1 F2 pointwise
    thetas = np.linspace(0.05, math.pi - 0.05, 41)
    lhs_vals = np.zeros_like(thetas, dtype=complex)
    for j, c in recovered.items():
        lhs_vals += (
            c
            * math.exp(-r * _eigenvalue(j, 3) / 2.0)
            * zonal_character(j, thetas.astype(complex))
            / math.sqrt(VOL_S3)
        )
    f1v = np.zeros_like(thetas, dtype=complex)
    f2v = np.zeros_like(thetas, dtype=complex)
    for ell, c in F1.lines:
        f1v += c * zonal_character(ell, thetas.astype(complex)) / math.sqrt(VOL_S3)
    for ell, c in F2.lines:
        f2v += c * zonal_character(ell, thetas.astype(complex)) / math.sqrt(VOL_S3)
    target = f1v * f2v
    resid = float(np.max(np.abs(lhs_vals - target)))
    scale = max(float(np.max(np.abs(target))), 1e-300)
    support = max(recovered, default=0)
    return CheckReport(
        id=f"sphere3.multiply[{testfns.format_descriptor(f1)}@t={t} x {testfns.format_descriptor(f2)}@s={s}]",
        lhs=resid,
        rhs=0.0,
        tol=tol,
        scale=scale,
        node_counts={"lines": len(recovered)},
        details={
            "r": r,
            "support_max": support,
            "recovered_lines": {str(k): [complex(v).real, complex(v).imag] for k, v in sorted(recovered.items())},
        },
    )
