"""Ground level of the symmetric quartic double well in reduced variables.

With x**2/x0**2 = y + 1/2 each half of the double well becomes a single well in
y with turning points y = +-2z.  In units of hbar*omega the energy is

    E = (z**2 - 1/16) / lam'

and z is fixed by the one-well quantization condition (alpha = 1)

    pi/2 = sqrt(2) * z**2 / lam' * I(z),
    I(z) = integral over eta in [-1, 1] of sqrt((1 - eta**2) / (1 + 4 z eta)).

The method needs E < 0, i.e. z < 1/4, which caps lam' at ``lambda_max()``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Iterable, List, Union

import numpy as np
from scipy import optimize

from .errors import DomainError, MillerGoodError, NoBoundGroundStateError
from .quadrature import quad

Z_MAX = 0.25
Z_MIN = 1e-8
RESIDUAL_TOL = 1e-10
QUAD_TOL = 1e-14
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ZSolution:
    lambda_prime: float
    z: float
    z_squared: float
    e_over_hw: float
    e_over_umin: float
    eta_integral: float
    residual: float
    iterations: int

    def to_dict(self) -> dict:
        return asdict(self)


def eta_integral(z: float) -> float:
    """I(z) = integral of sqrt((1 - eta^2)/(1 + 4 z eta)) over [-1, 1]."""
    if not (0.0 <= z <= Z_MAX):
        raise DomainError(f"z must lie in [0, 1/4], got {z!r}")

    if z == Z_MAX:
        # (1 + eta) cancels exactly at the edge
        def f(eta):
            return np.sqrt(1.0 - eta)
    else:
        def f(eta):
            return np.sqrt((1.0 - eta * eta) / (1.0 + 4.0 * z * eta))

    return quad(f, -1.0, 1.0, "sqrt-vanishing", QUAD_TOL)


def quantization_residual(z: float, lambda_prime: float) -> float:
    """sqrt(2) z^2/lam' I(z) - pi/2; zero at the accepted z."""
    return _SQRT2 * z * z / lambda_prime * eta_integral(z) - 0.5 * math.pi


@lru_cache(maxsize=None)
def lambda_max() -> float:
    """Coupling at which z reaches 1/4 and the ground level touches E = 0."""
    return _SQRT2 * Z_MAX**2 * eta_integral(Z_MAX) / (0.5 * math.pi)


def solve_z(lambda_prime: float) -> ZSolution:
    """Solve the quantization condition for z and derive the energies."""
    lam = float(lambda_prime)
    if not (math.isfinite(lam) and lam > 0):
        raise DomainError(f"lambda' must be positive, got {lambda_prime!r}")
    if lam > lambda_max():
        raise NoBoundGroundStateError(
            f"lambda'={lam} exceeds lambda'_max={lambda_max():.6f}: ground level would be above the barrier")

    def g(z):
        return quantization_residual(z, lam)

    # z^2 I(z) is increasing, so g has one sign change on (Z_MIN, 1/4]
    if g(Z_MIN) > 0:
        raise DomainError(f"lambda'={lam} is too small to bracket z above {Z_MIN}")
    g_hi = g(Z_MAX)
    if g_hi == 0.0:
        z, iterations = Z_MAX, 0
    else:
        z, info = optimize.brentq(g, Z_MIN, Z_MAX, xtol=1e-16, rtol=4 * np.finfo(float).eps,
                                  maxiter=200, full_output=True)
        iterations = info.iterations
    integral = eta_integral(z)
    residual = _SQRT2 * z * z / lam * integral - 0.5 * math.pi
    z2 = z * z
    return ZSolution(
        lambda_prime=lam,
        z=z,
        z_squared=z2,
        e_over_hw=(z2 - 1.0 / 16.0) / lam,
        e_over_umin=1.0 - 16.0 * z2,
        eta_integral=integral,
        residual=residual,
        iterations=iterations,
    )


def ground_energy(lambda_prime: float) -> tuple:
    """Return ``(E/hbar omega, E/U_min)`` for the double-well ground level."""
    sol = solve_z(lambda_prime)
    return sol.e_over_hw, sol.e_over_umin


def sweep(lambdas: Iterable[float], jobs: int = 1) -> List[Union[ZSolution, MillerGoodError]]:
    """Solve every coupling independently.

    Failed rows come back as the raised exception instead of aborting the
    sweep; output order always follows input order.
    """
    lambdas = list(lambdas)

    def one(lam):
        try:
            return solve_z(lam)
        except MillerGoodError as exc:
            return exc

    if jobs > 1 and len(lambdas) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, lambdas))
    return [one(lam) for lam in lambdas]
