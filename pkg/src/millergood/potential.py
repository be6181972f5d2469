"""One-dimensional potentials, with the symmetric quartic double well as the main case.

The quartic double well is

    v(x) = lam * x**4 - (m * omega**2 / 2) * x**2

with minima at x**2 = x0**2 / 2, where x0**2 = m omega**2 / (2 lam) is the
outer zero of v.  The single dimensionless parameter of the problem is
lam' = hbar lam / (m**2 omega**3), and the well depth is
U_min = -hbar omega / (16 lam').
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import interpolate, optimize

from .errors import DomainError, NoTurningPointsError

QUARTIC = "quartic-double-well"
HARMONIC = "harmonic"
SAMPLED = "custom-sampled"
CALLABLE = "custom"
KINDS = (QUARTIC, HARMONIC, SAMPLED, CALLABLE)


@dataclass(frozen=True)
class OscillatorParams:
    """Physical constants of the quartic oscillator."""

    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    coupling: float = 0.02

    def __post_init__(self):
        for name in ("mass", "omega", "hbar", "coupling"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be finite and positive, got {value!r}")

    @classmethod
    def natural(cls, lambda_prime: float) -> "OscillatorParams":
        """Parameters in units hbar = m = omega = 1, where lam = lam'."""
        return cls(mass=1.0, omega=1.0, hbar=1.0, coupling=lambda_prime)

    @property
    def lambda_prime(self) -> float:
        return self.hbar * self.coupling / (self.mass**2 * self.omega**3)

    @property
    def x0(self) -> float:
        return math.sqrt(self.mass * self.omega**2 / (2.0 * self.coupling))

    @property
    def u_min(self) -> float:
        return -(self.mass**2) * self.omega**4 / (16.0 * self.coupling)


def to_dimensionless(params: OscillatorParams) -> float:
    """Return the dimensionless coupling hbar*lam/(m**2 omega**3)."""
    return params.lambda_prime


def u_min(params: OscillatorParams) -> float:
    """Depth of the double well, -hbar omega/(16 lam')."""
    return -params.hbar * params.omega / (16.0 * params.lambda_prime)


@dataclass(frozen=True)
class Potential1D:
    """A one-dimensional potential of a given kind.

    Use the constructors (:meth:`quartic`, :meth:`harmonic`, :meth:`sampled`,
    :meth:`from_callable`) rather than the raw initializer.
    """

    kind: str
    mass: float = 1.0
    params: Optional[OscillatorParams] = None
    omega: float = 1.0
    domain: tuple = (-math.inf, math.inf)
    func: Optional[Callable] = field(default=None, compare=False, repr=False)
    dfunc: Optional[Callable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown potential kind {self.kind!r}")
        lo, hi = self.domain
        if not lo < hi:
            raise DomainError(f"empty domain {self.domain!r}")

    # -- constructors ---------------------------------------------------
    @classmethod
    def quartic(cls, params: OscillatorParams) -> "Potential1D":
        return cls(QUARTIC, mass=params.mass, params=params, omega=params.omega)

    @classmethod
    def harmonic(cls, mass: float = 1.0, omega: float = 1.0) -> "Potential1D":
        if mass <= 0 or omega <= 0:
            raise DomainError("harmonic potential needs positive mass and omega")
        return cls(HARMONIC, mass=mass, omega=omega)

    @classmethod
    def sampled(cls, x: Sequence[float], v: Sequence[float], mass: float = 1.0) -> "Potential1D":
        """Cubic-spline interpolant through tabulated samples."""
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        if x.ndim != 1 or x.shape != v.shape or x.size < 4:
            raise DomainError("need at least 4 matching (x, v) samples")
        if not np.all(np.isfinite(v)):
            raise DomainError("samples must be finite")
        spline = interpolate.CubicSpline(x, v)
        return cls(SAMPLED, mass=mass, domain=(float(x[0]), float(x[-1])),
                   func=spline, dfunc=spline.derivative())

    @classmethod
    def from_callable(cls, func: Callable, domain=(-math.inf, math.inf), mass: float = 1.0,
                      dfunc: Optional[Callable] = None) -> "Potential1D":
        """Wrap a vectorized callable ``func(x)``."""
        return cls(CALLABLE, mass=mass, domain=tuple(domain), func=func, dfunc=dfunc)

    # -- evaluation -----------------------------------------------------
    def _check(self, x):
        lo, hi = self.domain
        if np.any(np.isnan(x)) or np.any(x < lo) or np.any(x > hi):
            raise DomainError(f"x outside domain [{lo}, {hi}]")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        self._check(x)
        if self.kind == QUARTIC:
            p = self.params
            # through x*x so the result is exactly even in x
            x2 = x * x
            out = p.coupling * x2 * x2 - 0.5 * p.mass * p.omega**2 * x2
        elif self.kind == HARMONIC:
            out = 0.5 * self.mass * self.omega**2 * x**2
        else:
            out = np.asarray(self.func(x), dtype=float)
        return out if out.ndim else float(out)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        self._check(x)
        if self.kind == QUARTIC:
            p = self.params
            out = 4.0 * p.coupling * x**3 - p.mass * p.omega**2 * x
        elif self.kind == HARMONIC:
            out = self.mass * self.omega**2 * x
        elif self.dfunc is not None:
            out = np.asarray(self.dfunc(x), dtype=float)
        else:
            h = 1e-5 * np.maximum(1.0, np.abs(x))
            out = (np.asarray(self.func(x + h)) - np.asarray(self.func(x - h))) / (2 * h)
        return out if np.ndim(out) else float(out)

    def momentum(self, energy: float) -> Callable:
        """Classical momentum sqrt(2 m (E - v)) as a vectorized function.

        Returns NaN where the region is classically forbidden.
        """
        mass = self.mass

        def p(x):
            vx = np.asarray(self(x))
            ke = energy - vx
            # rounding at the turning points can leave ke at -1 ulp
            slack = 64 * np.finfo(float).eps * (abs(energy) + np.abs(vx))
            ke = np.where((ke < 0) & (ke > -slack), 0.0, ke)
            with np.errstate(invalid="ignore"):
                return np.sqrt(2.0 * mass * ke)

        return p


def evaluate(v: Potential1D, x):
    """Evaluate the potential, raising :class:`DomainError` outside its domain."""
    return v(x)


@dataclass(frozen=True)
class TurningPoints:
    """Distinct turning points in ascending order, with root multiplicities."""

    points: tuple
    multiplicity: tuple

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]


def _quartic_turning_points(v: Potential1D, energy: float) -> TurningPoints:
    p = v.params
    depth = p.u_min
    if energy <= depth:
        raise NoTurningPointsError(f"E={energy} is not above the well bottom {depth}")
    b = 0.5 * p.mass * p.omega**2
    lam = p.coupling
    # discriminant written as 4 lam (E - U_min) so it stays accurate near the bottom
    disc = 4.0 * lam * (energy - depth)
    u_big = (b + math.sqrt(disc)) / (2.0 * lam)
    x_out = _polish(v, energy, math.sqrt(u_big))
    if energy > 0:
        return TurningPoints((-x_out, x_out), (1, 1))
    if energy == 0:
        return TurningPoints((-x_out, 0.0, x_out), (1, 2, 1))
    u_small = -energy / (lam * u_big)
    x_in = _polish(v, energy, math.sqrt(u_small))
    return TurningPoints((-x_out, -x_in, x_in, x_out), (1, 1, 1, 1))


def _polish(v: Potential1D, energy: float, x: float) -> float:
    """One Newton step on v(x) = E, skipped where the slope is too small to trust."""
    slope = v.derivative(x)
    resid = v(x) - energy
    scale = abs(v.params.u_min) if v.params is not None else 1.0
    if abs(slope) * max(abs(x), 1.0) > 1e-6 * scale:
        step = resid / slope
        if abs(step) < 1e-6 * max(abs(x), 1.0):
            x -= step
    return x


def _numeric_turning_points(v: Potential1D, energy: float, samples: int = 4001) -> TurningPoints:
    lo, hi = v.domain
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError("numeric turning-point search needs a finite domain")
    xs = np.linspace(lo, hi, samples)
    g = v(xs) - energy
    points = []
    for i in range(samples - 1):
        if g[i] == 0.0:
            points.append(float(xs[i]))
        elif g[i] * g[i + 1] < 0:
            points.append(optimize.brentq(lambda t: v(t) - energy, xs[i], xs[i + 1],
                                          xtol=1e-15, rtol=4 * np.finfo(float).eps))
    if g[-1] == 0.0:
        points.append(float(xs[-1]))
    if len(points) < 1:
        raise NoTurningPointsError(f"no turning points for E={energy} on {v.domain}")
    return TurningPoints(tuple(points), (1,) * len(points))


def turning_points(v: Potential1D, energy: float) -> TurningPoints:
    """All real solutions of v(x) = E, in ascending order."""
    if v.kind == QUARTIC:
        return _quartic_turning_points(v, energy)
    if v.kind == HARMONIC:
        if energy <= 0:
            raise NoTurningPointsError(f"E={energy} is not above the harmonic minimum")
        x = math.sqrt(2.0 * energy / (v.mass * v.omega**2))
        return TurningPoints((-x, x), (1, 1))
    return _numeric_turning_points(v, energy)
