"""How good is the zero-order approximation for the double well?

In the reduced variables eta = y/(2z) and xi = s0/sqrt(alpha) the mapping
function obeys

    sqrt(1 - xi^2) xi' = sqrt(2) z^2/lam' sqrt((1 - eta^2)/(1 + 4 z eta)),
    xi(-1) = -1,

and the full (not truncated) mapping equation reads

    (1 - xi^2) xi'^2 = 2 z^4/(alpha^2 lam'^2) (1 - eta^2)/(1 + 4 z eta)
                       + D_xi(eta)/alpha^2 + 4 z^2/alpha^2 D_eta_xi,

    D_xi      = 3/2 xi''^2/xi'^2 - 1/2 xi'''/xi',
    D_eta_xi  = 3 xi''/(2 z xi' (1 + 4 z eta)) + 3/(2 (1 + 4 z eta)).

The zero-order method drops the two D terms.  This module builds xi(eta) for a
solved (z, lam') pair and measures those terms against the kept one.

D_eta_xi is used exactly as printed above.  Reducing the cross term
3/2 s''x''/(s'x') - 1/2 x'''/x' directly under x^2/x0^2 = y + 1/2 gives
instead 3 xi''/(4 z xi' (1 + 4 z eta)) + 3/(2 (1 + 4 z eta)^2) (with the sign
that makes it enter with +4 z^2/alpha^2); it is reported as
``d_eta_xi_derived``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .doublewell import Z_MAX, quantization_residual, solve_z
from .errors import DomainError, InconsistentParametersError, ResolutionError
from .mgcore import inverse_half_disk_area
from .quadrature import quad

EDGE_SKIP = 3
MIN_GRID = 64
MIN_FD_GRID = 128
PAIR_TOL = 1e-8

# artifact-defined cut-offs on the correction-to-leading ratio
GOOD = 0.05
MARGINAL = 0.2


def _jsonable(record) -> dict:
    return {k: v.tolist() if isinstance(v, np.ndarray) else v for k, v in asdict(record).items()}


@dataclass
class XiMapping:
    eta: np.ndarray
    xi: np.ndarray
    dxi: np.ndarray
    z: float
    lambda_prime: float
    sup_deviation: float

    def to_dict(self) -> dict:
        return _jsonable(self)


@dataclass
class CorrectionReport:
    """Dropped terms against the kept one on the interior eta nodes.

    ``bottom_ratio`` is |correction/leading| at the well bottom (eta = 0) and
    is the figure of merit; it converges as the grid is refined.
    ``max_ratio`` is the largest pointwise ratio over the interior nodes.
    Because the leading term vanishes at the turning points it keeps growing
    as nodes approach them, so it is informational only.
    """

    eta: np.ndarray
    d_xi: np.ndarray
    d_eta_xi: np.ndarray
    d_eta_xi_derived: np.ndarray
    correction: np.ndarray
    leading: np.ndarray
    bottom_ratio: float
    bottom_ratio_derived: float
    max_ratio: float
    fd_error: float
    z: float
    lambda_prime: float
    alpha: float = 1.0

    def to_dict(self) -> dict:
        return _jsonable(self)


def _integrand(z):
    def f(t):
        return np.sqrt((1.0 - t * t) / (1.0 + 4.0 * z * t))
    return f


def xi_mapping(z: float, lambda_prime: float, grid: int = 257) -> XiMapping:
    """Mapping xi(eta) on a uniform eta grid, from matched partial actions."""
    if grid < MIN_GRID:
        raise DomainError(f"grid must have at least {MIN_GRID} points")
    if not (0 < z < Z_MAX) or lambda_prime <= 0:
        raise DomainError(f"need 0 < z < 1/4 and lambda' > 0, got z={z}, lambda'={lambda_prime}")
    resid = quantization_residual(z, lambda_prime)
    if abs(resid) > PAIR_TOL:
        raise InconsistentParametersError(
            f"(z={z}, lambda'={lambda_prime}) leaves quantization residual {resid:.3g}")
    scale = math.sqrt(2.0) * z * z / lambda_prime
    f = _integrand(z)
    eta = np.linspace(-1.0, 1.0, grid)
    pieces = [quad(f, eta[i], eta[i + 1], "sqrt-vanishing", 1e-15) for i in range(grid - 1)]
    rhs = scale * np.concatenate([[0.0], np.cumsum(pieces)])
    # rhs[-1] equals pi/2 up to the residual; pin both ends exactly
    rhs *= (0.5 * math.pi) / rhs[-1]
    xi = np.asarray(inverse_half_disk_area(rhs), dtype=float)
    xi[0], xi[-1] = -1.0, 1.0

    dxi = np.empty_like(xi)
    dxi[1:-1] = scale * f(eta[1:-1]) / np.sqrt(1.0 - xi[1:-1] ** 2)
    # at eta = -+1 both sides vanish like (1 -+ eta)^(3/2); match the coefficients
    dxi[0] = (scale / math.sqrt(1.0 - 4.0 * z)) ** (2.0 / 3.0)
    dxi[-1] = (scale / math.sqrt(1.0 + 4.0 * z)) ** (2.0 / 3.0)
    return XiMapping(eta, xi, dxi, z, lambda_prime, float(np.max(np.abs(xi - eta))))


def _derivatives(eta, xi, stride=1):
    """Centered differences of xi on nodes EDGE_SKIP..n-1-EDGE_SKIP (step stride*h)."""
    h = (eta[1] - eta[0]) * stride
    n = len(xi)
    idx = np.arange(EDGE_SKIP, n - EDGE_SKIP)
    idx = idx[(idx - 2 * stride >= 0) & (idx + 2 * stride <= n - 1)]
    if stride > 1:
        idx = idx[(idx - EDGE_SKIP) % stride == 0]
    xm2, xm1, x0, xp1, xp2 = (xi[idx + k * stride] for k in (-2, -1, 0, 1, 2))
    d1 = (xp1 - xm1) / (2 * h)
    d2 = (xp1 - 2 * x0 + xm1) / h**2
    d3 = (xp2 - 2 * xp1 + 2 * xm1 - xm2) / (2 * h**3)
    return idx, d1, d2, d3


def _d_terms(eta, z, d1, d2, d3):
    d_xi = 1.5 * d2**2 / d1**2 - 0.5 * d3 / d1
    w = 1.0 + 4.0 * z * eta
    d_eta_xi = 3.0 * d2 / (2.0 * z * d1 * w) + 1.5 / w
    d_eta_xi_derived = 3.0 * d2 / (4.0 * z * d1 * w) + 1.5 / w**2
    return d_xi, d_eta_xi, d_eta_xi_derived


def _at_bottom(eta, values) -> float:
    return float(np.interp(0.0, eta, values))


def correction_terms(mapping: XiMapping, alpha: float = 1.0) -> CorrectionReport:
    """Evaluate the dropped D terms and compare them with the kept term.

    The finite-difference error is estimated by repeating the stencil with
    twice the step on every other node.
    """
    eta, xi, z, lam = mapping.eta, mapping.xi, mapping.z, mapping.lambda_prime
    if len(eta) < MIN_FD_GRID:
        raise ResolutionError(f"need at least {MIN_FD_GRID} nodes for finite differences")
    idx, d1, d2, d3 = _derivatives(eta, xi)
    e = eta[idx]
    d_xi, d_eta_xi, d_eta_xi_derived = _d_terms(e, z, d1, d2, d3)
    k = 4.0 * z * z / alpha**2
    correction = d_xi / alpha**2 + k * d_eta_xi
    correction_derived = d_xi / alpha**2 + k * d_eta_xi_derived
    leading = 2.0 * z**4 / (alpha**2 * lam**2) * (1.0 - e * e) / (1.0 + 4.0 * z * e)

    idx2, c1, c2, c3 = _derivatives(eta, xi, stride=2)
    dx2, dex2, _ = _d_terms(eta[idx2], z, c1, c2, c3)
    coarse = dx2 / alpha**2 + k * dex2
    fine = correction[np.searchsorted(idx, idx2)]
    fd_error = float(np.max(np.abs(coarse - fine)) / 3.0)
    signal = float(np.max(np.abs(correction)))
    if not np.all(np.isfinite(correction)) or fd_error > 0.1 * signal:
        raise ResolutionError(
            f"finite-difference error {fd_error:.3g} exceeds 10% of the signal {signal:.3g}")

    lead0 = _at_bottom(e, leading)
    return CorrectionReport(
        eta=e,
        d_xi=d_xi,
        d_eta_xi=d_eta_xi,
        d_eta_xi_derived=d_eta_xi_derived,
        correction=correction,
        leading=leading,
        bottom_ratio=abs(_at_bottom(e, correction) / lead0),
        bottom_ratio_derived=abs(_at_bottom(e, correction_derived) / lead0),
        max_ratio=float(np.max(np.abs(correction / leading))),
        fd_error=fd_error,
        z=z,
        lambda_prime=lam,
        alpha=alpha,
    )


def quality_flag(ratio: float) -> str:
    if ratio < GOOD:
        return "good"
    if ratio < MARGINAL:
        return "marginal"
    return "poor"


def validity_report(lambda_prime: float, grid: int = 257) -> dict:
    """z, E/U_min, the correction ratio at the well bottom and a qualitative flag."""
    sol = solve_z(lambda_prime)
    mapping = xi_mapping(sol.z, lambda_prime, grid)
    report = correction_terms(mapping)
    return {
        "lambda_prime": sol.lambda_prime,
        "z": sol.z,
        "z_squared": sol.z_squared,
        "e_over_hw": sol.e_over_hw,
        "e_over_umin": sol.e_over_umin,
        "sup_xi_minus_eta": mapping.sup_deviation,
        "correction_ratio": report.bottom_ratio,
        "correction_ratio_derived": report.bottom_ratio_derived,
        "max_pointwise_ratio": report.max_ratio,
        "fd_error": report.fd_error,
        "flag": quality_flag(report.bottom_ratio),
        "thresholds": {"good": GOOD, "marginal": MARGINAL},
    }
