"""Miller-Good quantization with a harmonic comparison problem.

The original equation psi'' + p(x)**2/hbar**2 psi = 0 is mapped onto an
exactly solvable auxiliary equation phi'' + P(s)**2/hbar**2 phi = 0 with
P(s)**2 = hbar**2 (alpha - s**2), alpha = 2n + 1, through a monotone change of
variable s0(x).  Dropping the Schwarzian-type correction term leaves

    P(s0) s0' = p(x),   s0(x1) = -sqrt(alpha),

and integrating between turning points gives the quantization rule

    integral of p dx over [x1, x2] = hbar * alpha * pi / 2.

The same rule is available after a change of coordinate x = x(y), where the
right-hand side becomes the integral of x'(y) p(x(y)) dy between the turning
points in y.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import hermite
from scipy import interpolate, optimize

from .errors import (
    DomainError,
    NoRootError,
    NoTurningPointsError,
    QuantizationViolatedError,
    TransformError,
    WrongTopologyError,
)
from .potential import Potential1D, turning_points
from .quadrature import action_integral, quad

ACTION_TOL = 1e-9
QUAD_TOL = 1e-13


def half_disk_area(u):
    """Integral of sqrt(1 - t**2) from -1 to u, for u in [-1, 1]."""
    u = np.clip(u, -1.0, 1.0)
    return 0.5 * (u * np.sqrt(1.0 - u * u) + np.arcsin(u)) + 0.25 * np.pi


def inverse_half_disk_area(area):
    """Invert :func:`half_disk_area` elementwise (bisection, then Newton polish)."""
    area = np.asarray(area, dtype=float)
    target = np.clip(area, 0.0, 0.5 * np.pi)
    lo = np.full(target.shape, -1.0)
    hi = np.full(target.shape, 1.0)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        below = half_disk_area(mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    u = 0.5 * (lo + hi)
    for _ in range(2):
        slope = np.sqrt(np.maximum(1.0 - u * u, 0.0))
        ok = slope > 1e-4
        step = np.where(ok, (half_disk_area(u) - target) / np.where(ok, slope, 1.0), 0.0)
        u = np.clip(u - step, -1.0, 1.0)
    return u if u.ndim else float(u)


@dataclass(frozen=True)
class AuxiliaryProblem:
    """Harmonic comparison problem P(s)**2 = hbar**2 (alpha - s**2), alpha = 2n+1."""

    n: int = 0
    hbar: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"quantum number must be a non-negative integer, got {self.n!r}")
        if not self.hbar > 0:
            raise DomainError("hbar must be positive")

    @property
    def alpha(self) -> float:
        return 2.0 * self.n + 1.0

    @property
    def s01(self) -> float:
        return -math.sqrt(self.alpha)

    @property
    def s02(self) -> float:
        return math.sqrt(self.alpha)

    def momentum_squared(self, s):
        return self.hbar**2 * (self.alpha - np.asarray(s) ** 2)

    def momentum(self, s):
        with np.errstate(invalid="ignore"):
            return self.hbar * np.sqrt(self.alpha - np.asarray(s) ** 2)

    def action(self) -> float:
        """Integral of P ds between the auxiliary turning points."""
        return self.hbar * self.alpha * math.pi / 2.0

    def partial_action(self, s):
        """Integral of P ds from s01 to s."""
        r = math.sqrt(self.alpha)
        return self.hbar * self.alpha * half_disk_area(np.asarray(s) / r)

    def inverse_partial_action(self, action):
        r = math.sqrt(self.alpha)
        return r * inverse_half_disk_area(np.asarray(action) / (self.hbar * self.alpha))

    def eigenfunction(self, s):
        """Unnormalized H_n(s) exp(-s**2/2)."""
        s = np.asarray(s, dtype=float)
        coef = np.zeros(self.n + 1)
        coef[-1] = 1.0
        return hermite.hermval(s, coef) * np.exp(-0.5 * s * s)


@dataclass(frozen=True)
class CoordinateTransform:
    """Monotone change of coordinate x = forward(y) with derivative dx/dy.

    ``inverse`` maps x back to y; ``even_inverse`` records that y(x) is an
    even function of x, which folds a symmetric pair of wells onto one.
    """

    forward: Callable
    derivative: Callable
    domain: tuple = (-math.inf, math.inf)
    inverse: Optional[Callable] = field(default=None, compare=False)
    even_inverse: bool = False
    name: str = "custom"

    @classmethod
    def identity(cls) -> "CoordinateTransform":
        return cls(lambda y: np.asarray(y, dtype=float),
                   lambda y: np.ones_like(np.asarray(y, dtype=float)),
                   inverse=lambda x: np.asarray(x, dtype=float), name="identity")

    @classmethod
    def quartic_double_well(cls, x0: float) -> "CoordinateTransform":
        """x**2 / x0**2 = y + 1/2 on the right half-line; the inverse is even in x."""
        def forward(y):
            return x0 * np.sqrt(np.asarray(y, dtype=float) + 0.5)

        def derivative(y):
            return 0.5 * x0 / np.sqrt(np.asarray(y, dtype=float) + 0.5)

        def inverse(x):
            return (np.asarray(x, dtype=float) / x0) ** 2 - 0.5

        return cls(forward, derivative, (-0.5, math.inf), inverse, True, "quartic-double-well")


@dataclass
class MappingTable:
    """Tabulated mapping function s0(x) with its derivative."""

    x: np.ndarray
    s: np.ndarray
    ds: np.ndarray
    x1: float
    x2: float
    s01: float
    s02: float
    action_residual: float

    def spline(self):
        return interpolate.CubicHermiteSpline(self.x, self.s, self.ds)


# -- quantization ---------------------------------------------------------

def _two_points(points) -> tuple:
    if len(points) != 2:
        raise WrongTopologyError(
            f"expected two turning points, found {len(points)}: {tuple(points)}")
    return points[0], points[1]


def _solve_energy(residual: Callable, bracket, xtol: float) -> float:
    lo, hi = bracket
    if not lo < hi:
        raise DomainError(f"bad energy bracket {bracket!r}")
    f_lo, f_hi = residual(lo), residual(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise NoRootError(f"quantization residual has no sign change on [{lo}, {hi}]")
    return optimize.brentq(residual, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)


def action(v: Potential1D, energy: float, tol: float = QUAD_TOL) -> float:
    """Integral of p dx between the two turning points (zero below the well bottom)."""
    try:
        tp = turning_points(v, energy)
    except NoTurningPointsError:
        return 0.0
    x1, x2 = _two_points(tp)
    return action_integral(v.momentum(energy), x1, x2, tol)


def mg_quantize(v: Potential1D, aux: AuxiliaryProblem, bracket, tol: float = ACTION_TOL) -> float:
    """Energy at which the action of ``v`` equals the auxiliary action."""
    target = aux.action()

    def residual(e):
        return action(v, e) - target

    energy = _solve_energy(residual, bracket, xtol=1e-14)
    if abs(residual(energy)) > tol * aux.hbar:
        raise NoRootError(f"action residual {residual(energy):.3g} above tolerance")
    return energy


def wkb_quantize(v: Potential1D, n: int, bracket, hbar: float = 1.0) -> float:
    """Plain Bohr-Sommerfeld-WKB: integral of p dx = hbar pi (n + 1/2)."""
    target = hbar * math.pi * (n + 0.5)
    return _solve_energy(lambda e: action(v, e) - target, bracket, xtol=1e-14)


def transformed_turning_points(v: Potential1D, t: CoordinateTransform, energy: float) -> tuple:
    """Turning points of v(x(y)) = E inside the transform's y-domain."""
    lo, hi = t.domain
    if t.inverse is not None and v.kind in ("quartic-double-well", "harmonic"):
        xs = turning_points(v, energy).points
        ys = sorted(float(t.inverse(x)) for x in xs)
        out = []
        for y in ys:
            if lo - 1e-12 <= y <= hi and not (out and abs(y - out[-1]) <= 1e-12 * max(1.0, abs(y))):
                out.append(max(y, lo))
        return tuple(out)
    w = Potential1D.from_callable(lambda y: v(t.forward(y)), (lo, hi), v.mass)
    return turning_points(w, energy).points


def _check_monotone(t: CoordinateTransform, y1: float, y2: float):
    ys = np.linspace(y1, y2, 257)[1:-1]
    d = np.asarray(t.derivative(ys))
    if not np.all(np.isfinite(d)) or np.any(d <= 0):
        raise TransformError(f"transform {t.name!r} is not monotone on [{y1}, {y2}]")


def transformed_action(v: Potential1D, t: CoordinateTransform, energy: float,
                       tol: float = QUAD_TOL) -> float:
    """Integral of x'(y) p(x(y)) dy between the turning points in y."""
    try:
        ys = transformed_turning_points(v, t, energy)
    except NoTurningPointsError:
        return 0.0
    y1, y2 = _two_points(ys)
    if y1 == y2:
        return 0.0
    _check_monotone(t, y1, y2)
    p = v.momentum(energy)

    def integrand(y):
        return t.derivative(y) * p(t.forward(y))

    return action_integral(integrand, y1, y2, tol)


def mg_quantize_transformed(v: Potential1D, t: CoordinateTransform, aux: AuxiliaryProblem,
                            bracket, tol: float = ACTION_TOL) -> float:
    """Quantize using the action written in the transformed coordinate y."""
    target = aux.action()

    def residual(e):
        return transformed_action(v, t, e) - target

    energy = _solve_energy(residual, bracket, xtol=1e-14)
    if abs(residual(energy)) > tol * aux.hbar:
        raise NoRootError(f"action residual {residual(energy):.3g} above tolerance")
    return energy


# -- mapping function and wavefunction ------------------------------------

def mapping_s0(v: Potential1D, energy: float, aux: AuxiliaryProblem, grid: int = 201,
               interval: Optional[tuple] = None, tol: float = 1e-8) -> MappingTable:
    """Tabulate s0(x) between two turning points by matching partial actions.

    ``interval`` selects a pair of turning points explicitly (for example the
    right-hand well of a double well); otherwise ``v`` must have exactly two.
    The partial actions are rescaled by the (tolerance-sized) quantization
    residual so the boundary values hold exactly.
    """
    if grid < 3:
        raise DomainError("grid needs at least 3 points")
    if interval is None:
        x1, x2 = _two_points(turning_points(v, energy))
    else:
        x1, x2 = map(float, interval)
    p = v.momentum(energy)
    x = np.linspace(x1, x2, grid)
    pieces = [action_integral(p, x[i], x[i + 1], QUAD_TOL) for i in range(grid - 1)]
    partial = np.concatenate([[0.0], np.cumsum(pieces)])
    total = partial[-1]
    residual = total - aux.action()
    if abs(residual) > tol * aux.hbar * aux.alpha:
        raise QuantizationViolatedError(
            f"E={energy} misses the quantization rule by {residual:.3g}")
    partial *= aux.action() / total
    s = np.asarray(aux.inverse_partial_action(partial), dtype=float)
    s[0], s[-1] = aux.s01, aux.s02

    ds = np.empty_like(s)
    with np.errstate(invalid="ignore", divide="ignore"):
        ds[1:-1] = p(x[1:-1]) / aux.momentum(s[1:-1])
    # P(s0) s0' = p has a 0/0 at turning points; the limit is s0'**3 = m|v'| / (hbar**2 sqrt(alpha))
    for i, xt in ((0, x1), (-1, x2)):
        ds[i] = np.cbrt(v.mass * abs(v.derivative(xt)) / (aux.hbar**2 * math.sqrt(aux.alpha)))
    return MappingTable(x, s, ds, x1, x2, aux.s01, aux.s02, float(residual))


def wavefunction(v: Potential1D, energy: float, aux: AuxiliaryProblem, table: MappingTable,
                 x, normalize: bool = False):
    """Zero-order Miller-Good wavefunction phi_n(s0(x)) / sqrt(s0'(x)).

    Returns ``(psi, valid)``; ``valid`` is False where the mapping derivative
    is not finite and positive, and those samples are set to NaN.
    """
    x = np.asarray(x, dtype=float)
    span = table.x2 - table.x1
    if np.any(x < table.x1 - 1e-12 * span) or np.any(x > table.x2 + 1e-12 * span):
        raise DomainError("wavefunction grid must lie between the turning points")
    x = np.clip(x, table.x1, table.x2)
    spline = table.spline()
    s = spline(x)
    ds = spline.derivative()(x)
    valid = np.isfinite(ds) & (ds > 0)
    psi = np.full(x.shape, np.nan)
    psi[valid] = aux.eigenfunction(s[valid]) / np.sqrt(ds[valid])
    if normalize and valid.sum() > 1:
        norm = np.sqrt(np.trapezoid(psi[valid] ** 2, x[valid]))
        psi = psi / norm
    return psi, valid
