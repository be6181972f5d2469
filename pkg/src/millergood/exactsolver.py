"""Reference eigenvalues of H = -(hbar^2/2m) d^2/dx^2 + v(x) for even potentials.

Two independent backends:

* ``"fd"``: three-point finite differences on [-L, L] with Dirichlet ends.
  Eigenvalues come from Sturm-sequence bisection on the tridiagonal matrix,
  and grid refinement is Richardson-extrapolated (the scheme is O(h^2)).
* ``"numerov"``: Numerov integration inward from x = L and shooting on E with
  the parity condition at x = 0 (psi'(0) = 0 even, psi(0) = 0 odd).

Energies are in units of hbar*omega (natural units hbar = m = omega = 1),
where the quartic double well reads v = lam' x^4 - x^2/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import linalg, optimize

from .errors import AccuracyError, DomainError
from .quadrature import quad

TAIL_ACTION = 30.0   # exp(-30) ~ 1e-13 at the box edge
MAX_LEVELS = 8


@dataclass
class EigenResult:
    lambda_prime: Optional[float]
    method: str
    half_width: float
    nodes: int
    eigenvalues: tuple
    parities: tuple
    convergence: float
    grid: Optional[np.ndarray] = field(default=None, repr=False)
    eigenvectors: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def ground(self) -> float:
        return self.eigenvalues[0]

    def to_dict(self) -> dict:
        return {
            "lambda_prime": self.lambda_prime,
            "method": self.method,
            "half_width": self.half_width,
            "nodes": self.nodes,
            "eigenvalues": list(self.eigenvalues),
            "parities": list(self.parities),
            "convergence": self.convergence,
        }


def quartic(lambda_prime: float) -> Callable:
    return lambda x: lambda_prime * x**4 - 0.5 * x**2


# -- Sturm sequences ------------------------------------------------------

def sturm_count(d, e, sigma: float) -> int:
    """Number of eigenvalues below ``sigma`` of the symmetric tridiagonal (d, e)."""
    d = [float(v) for v in d]
    e2 = [float(v) ** 2 for v in e]
    return _count(d, e2, sigma)


def _count(d, e2, sigma):
    tiny = 1e-300
    count = 0
    q = d[0] - sigma
    if q < 0:
        count += 1
    for i in range(1, len(d)):
        if q == 0.0:
            q = tiny
        q = d[i] - sigma - e2[i - 1] / q
        if q < 0:
            count += 1
    return count


def tridiagonal_eigenvalues(d, e, k: int, xtol: float = 1e-13) -> np.ndarray:
    """Lowest ``k`` eigenvalues by bisection on the Sturm count."""
    d = [float(v) for v in d]
    e2 = [float(v) ** 2 for v in e]
    n = len(d)
    if not 1 <= k <= n:
        raise DomainError(f"k must be in [1, {n}]")
    radius = [0.0] * n
    for i in range(n - 1):
        a = math.sqrt(e2[i])
        radius[i] += a
        radius[i + 1] += a
    lower = min(di - ri for di, ri in zip(d, radius))
    # grow an upper bracket from the bottom rather than using the (huge) Gershgorin top
    width = 1.0
    upper = lower + width
    while _count(d, e2, upper) < k:
        width *= 2.0
        upper = lower + width
    out = []
    lo_j = lower
    for j in range(k):
        lo, hi = lo_j, upper
        while hi - lo > xtol * max(1.0, abs(lo) + abs(hi)):
            mid = 0.5 * (lo + hi)
            if _count(d, e2, mid) > j:
                hi = mid
            else:
                lo = mid
        out.append(0.5 * (lo + hi))
        lo_j = lo
    return np.array(out)


# -- box size -------------------------------------------------------------

def half_width(lambda_prime: float, levels: int = 1) -> float:
    """Box half-width L for the quartic well.

    At least 1.5 times the outer zero of v, and far enough that the
    classically forbidden tail beyond the reference energy carries an action
    of TAIL_ACTION.
    """
    v = quartic(lambda_prime)
    x_zero = 1.0 / math.sqrt(2.0 * lambda_prime)
    e_ref = max(0.0, -1.0 / (16.0 * lambda_prime) + 2.0 * levels)
    # outer turning point at e_ref
    u = (0.5 + math.sqrt(0.25 + 4.0 * lambda_prime * e_ref)) / (2.0 * lambda_prime)
    x_t = math.sqrt(u)

    def kappa(x):
        return np.sqrt(np.maximum(2.0 * (v(x) - e_ref), 0.0))

    def excess(L):
        return quad(kappa, x_t, L, "sqrt-vanishing", 1e-10) - TAIL_ACTION

    hi = x_t + 1.0
    while excess(hi) < 0:
        hi = x_t + 2.0 * (hi - x_t)
    x_tail = optimize.brentq(excess, x_t, hi, xtol=1e-6)
    return max(1.5 * x_zero, x_tail)


# -- finite differences ---------------------------------------------------

def fd_matrix(v: Callable, L: float, n: int, mass: float = 1.0, hbar: float = 1.0):
    """Interior grid and tridiagonal (diagonal, off-diagonal) of the FD Hamiltonian."""
    if n < 3:
        raise DomainError("need at least 3 interior nodes")
    x = np.linspace(-L, L, n + 2)[1:-1]
    h = x[1] - x[0]
    t = hbar**2 / (2.0 * mass * h * h)
    d = 2.0 * t + np.asarray(v(x), dtype=float)
    e = np.full(n - 1, -t)
    return x, d, e


def fd_levels(v: Callable, L: float, n: int, k: int = 1, **kw) -> np.ndarray:
    _, d, e = fd_matrix(v, L, n, **kw)
    return tridiagonal_eigenvalues(d, e, k)


def _inverse_iteration(d, e, sigma):
    n = len(d)
    ab = np.zeros((3, n))
    ab[0, 1:] = e
    ab[1] = d - sigma - 1e-10 * max(1.0, abs(sigma))
    ab[2, :-1] = e
    vec = np.ones(n)
    for _ in range(3):
        vec = linalg.solve_banded((1, 1), ab, vec)
        vec /= np.linalg.norm(vec)
    return vec


def _fd_solve(v, L, k, tol, n_start, n_max, vectors):
    """Refine n -> 2n until successive Richardson values agree to ``tol``."""
    history = []
    n = n_start
    extrap = []
    while True:
        history.append((n, fd_levels(v, L, n, k)))
        if len(history) >= 2:
            (_, coarse), (_, fine) = history[-2:]
            extrap.append((4.0 * fine - coarse) / 3.0)
        if len(extrap) >= 2:
            change = float(np.max(np.abs(extrap[-1] - extrap[-2])))
            if change < tol:
                break
        if 2 * n > n_max:
            best = extrap[-1] if extrap else history[-1][1]
            change = float(np.max(np.abs(extrap[-1] - extrap[-2]))) if len(extrap) >= 2 else math.inf
            raise AccuracyError(f"finite differences not converged to {tol:g} by n={n}",
                                best=best, error=change)
        n *= 2
    n_fine, levels = history[-1]
    grid = vecs = None
    if vectors:
        grid, d, e = fd_matrix(v, L, n_fine)
        h = grid[1] - grid[0]
        vecs = np.array([_inverse_iteration(d, e, lev) / math.sqrt(h) for lev in levels])
    return extrap[-1], change, n_fine, grid, vecs


# -- Numerov shooting -----------------------------------------------------

def _numerov_mismatch(v_half, h, energy, parity, mass=1.0, hbar=1.0):
    """Parity mismatch at x = 0 after integrating inward from x = L.

    ``v_half`` holds v at x_j = j h, j = 0..M.
    """
    k2 = 2.0 * mass * (energy - v_half) / hbar**2
    f = 1.0 + h * h * k2 / 12.0
    m = len(v_half) - 1
    psi_next, psi = 0.0, 1e-30          # psi_M, psi_{M-1}
    for j in range(m - 1, 0, -1):
        psi_prev = ((12.0 - 10.0 * f[j]) * psi - f[j + 1] * psi_next) / f[j - 1]
        psi_next, psi = psi, psi_prev
        if abs(psi) > 1e200:
            psi_next *= 1e-200
            psi *= 1e-200
    # now psi = psi_0, psi_next = psi_1
    norm = math.hypot(psi, psi_next)
    if parity == "odd":
        return psi / norm
    # one more step to x = -h, using f_{-1} = f_1
    psi_minus = ((12.0 - 10.0 * f[0]) * psi - f[1] * psi_next) / f[1]
    return (psi_minus - psi_next) / norm


def _numerov_profile(v_half, h, energy):
    k2 = 2.0 * (energy - v_half)
    f = 1.0 + h * h * k2 / 12.0
    m = len(v_half) - 1
    psi = np.zeros(m + 1)
    psi[m - 1] = 1e-30
    for j in range(m - 1, 0, -1):
        psi[j - 1] = ((12.0 - 10.0 * f[j]) * psi[j] - f[j + 1] * psi[j + 1]) / f[j - 1]
        if abs(psi[j - 1]) > 1e200:
            psi *= 1e-200
    return psi


def numerov_levels(v: Callable, L: float, n: int, k: int = 1, step: Optional[float] = None,
                   e_min: Optional[float] = None):
    """Lowest ``k`` levels of an even potential with their parities.

    Scans upward in energy for sign changes of the even and odd mismatch
    functions separately, then polishes each with Brent's method.
    """
    m = n // 2
    x = np.linspace(0.0, L, m + 1)
    h = x[1] - x[0]
    v_half = np.asarray(v(x), dtype=float)
    floor = float(np.min(v_half)) if e_min is None else e_min
    step = step if step is not None else 0.02
    found = []
    funcs = {p: (lambda en, p=p: _numerov_mismatch(v_half, h, en, p)) for p in ("even", "odd")}
    prev = {p: funcs[p](floor) for p in funcs}
    energy = floor
    ceiling = float(v_half[-1])
    while energy < ceiling:
        nxt = energy + step
        for p, g in funcs.items():
            cur = g(nxt)
            if prev[p] == 0.0 or prev[p] * cur < 0:
                root = optimize.brentq(g, energy, nxt, xtol=1e-14, rtol=4 * np.finfo(float).eps)
                found.append((root, p))
            prev[p] = cur
        energy = nxt
        # every level below `energy` has been seen once k are in hand
        if len(found) >= k:
            break
    if len(found) < k:
        raise AccuracyError(f"found only {len(found)} levels below the box edge")
    found.sort()
    return [lev for lev, _ in found[:k]], [p for _, p in found[:k]]


def _numerov_solve(v, L, k, tol, n, vectors):
    coarse, _ = numerov_levels(v, L, n // 2, k)
    fine, parities = numerov_levels(v, L, n, k)
    # fourth-order scheme: error of the fine result ~ |fine - coarse| / 15
    change = float(np.max(np.abs(np.array(fine) - np.array(coarse)))) / 15.0
    if change > tol:
        raise AccuracyError(f"Numerov not converged to {tol:g} at n={n}", best=fine, error=change)
    grid = vecs = None
    if vectors:
        m = n // 2
        x = np.linspace(0.0, L, m + 1)
        v_half = np.asarray(v(x), dtype=float)
        grid = np.concatenate([-x[:0:-1], x])
        rows = []
        for lev, p in zip(fine, parities):
            half = _numerov_profile(v_half, x[1] - x[0], lev)
            left = half[:0:-1] if p == "even" else -half[:0:-1]
            full = np.concatenate([left, half])
            rows.append(full / math.sqrt(np.trapezoid(full**2, grid)))
        vecs = np.array(rows)
    return np.array(fine), tuple(parities), change, grid, vecs


# -- public API -----------------------------------------------------------

def spectrum(lambda_prime: float, k: int = 1, tol: float = 1e-8, method: str = "fd",
             n: int = 4096, vectors: bool = False) -> EigenResult:
    """Lowest ``k`` levels of the quartic double well, in units of hbar*omega.

    For ``method="fd"`` the finest grid has ``n`` interior nodes (starting
    from n/4 and doubling); for ``"numerov"`` ``n`` is the number of steps
    across [-L, L], checked against n/2.
    """
    if not lambda_prime > 0:
        raise DomainError("lambda' must be positive")
    if not 1 <= k <= MAX_LEVELS:
        raise DomainError(f"k must be between 1 and {MAX_LEVELS}")
    if tol < 1e-8:
        raise DomainError("tolerance below 1e-8 is not supported")
    v = quartic(lambda_prime)
    L = half_width(lambda_prime, k)
    if method == "fd":
        levels, change, nodes, grid, vecs = _fd_solve(v, L, k, tol, max(n // 4, 64), n, vectors)
        parities = tuple("even" if j % 2 == 0 else "odd" for j in range(k))
    elif method == "numerov":
        levels, parities, change, grid, vecs = _numerov_solve(v, L, k, tol, n, vectors)
        nodes = n
    else:
        raise DomainError(f"unknown method {method!r}")
    return EigenResult(lambda_prime, method, L, nodes, tuple(float(x) for x in levels),
                       parities, change, grid, vecs)


def ground_state(lambda_prime: float, tol: float = 1e-8, method: str = "fd", n: int = 4096,
                 vectors: bool = False) -> EigenResult:
    return spectrum(lambda_prime, 1, tol, method, n, vectors)


def cross_validate(lambda_prime: float, k: int = 1, tol: float = 1e-8, n: int = 4096):
    """Run both backends; returns (fd, numerov, max |difference|)."""
    a = spectrum(lambda_prime, k, tol, "fd", n)
    b = spectrum(lambda_prime, k, tol, "numerov", n)
    diff = max(abs(x - y) for x, y in zip(a.eigenvalues, b.eigenvalues))
    return a, b, diff
