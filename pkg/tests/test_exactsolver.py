import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DENSE_LEVELS
from millergood import ground_state, spectrum
from millergood.errors import DomainError
from millergood.exactsolver import (cross_validate, fd_levels, numerov_levels, sturm_count,
                                    tridiagonal_eigenvalues)

# tridiag(-1, 2, -1) of order 3 has eigenvalues 2 - sqrt(2), 2, 2 + sqrt(2)
D3, E3 = np.array([2.0, 2.0, 2.0]), np.array([-1.0, -1.0])
R2 = math.sqrt(2)


@pytest.mark.parametrize("sigma, count", [(0.0, 0), (0.5, 0), (0.6, 1), (1.9, 1), (2.1, 2),
                                          (3.4, 2), (3.5, 3), (10.0, 3)])
def test_sturm_count_hand_case(sigma, count):
    assert sturm_count(D3, E3, sigma) == count


def test_tridiagonal_hand_case():
    assert tridiagonal_eigenvalues(D3, E3, 3) == pytest.approx([2 - R2, 2, 2 + R2], abs=1e-12)


@given(st.lists(st.floats(-5, 5), min_size=4, max_size=12),
       st.floats(-0.9, 0.9), st.floats(-8, 8))
def test_sturm_count_matches_dense(diag, off, sigma):
    d = np.array(diag)
    e = np.full(len(d) - 1, off + 1e-3)
    dense = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
    if np.min(np.abs(dense - sigma)) > 1e-9:
        assert sturm_count(d, e, sigma) == int(np.sum(dense < sigma))


def test_harmonic_levels_both_backends():
    v = lambda x: 0.5 * x * x
    fd = fd_levels(v, 10.0, 8000, 5)
    nm, parities = numerov_levels(v, 10.0, 4000, 5)
    expected = np.arange(5) + 0.5
    assert np.max(np.abs(fd - expected)) < 1e-4
    assert np.max(np.abs(np.array(nm) - expected)) < 1e-8
    assert parities == ["even", "odd", "even", "odd", "even"]


@pytest.mark.parametrize("lam", sorted(DENSE_LEVELS))
def test_ground_against_dense_oracle(lam):
    assert ground_state(lam).ground == pytest.approx(DENSE_LEVELS[lam][0], abs=1e-6)


@pytest.mark.parametrize("lam, expected", [(0.02, -2.43), (0.1, -0.15)])
def test_published_exact_values(lam, expected):
    assert ground_state(lam).ground == pytest.approx(expected, abs=0.01)


def _bottom_estimate(lam):
    # U_min + omega_well/2 with omega_well = sqrt(2) omega
    return -1 / (16 * lam) + R2 / 2


def test_harmonic_approximation_about_the_bottom():
    assert _bottom_estimate(0.02) == pytest.approx(-2.418, abs=1e-3)
    gaps = [abs(ground_state(lam).ground - _bottom_estimate(lam)) for lam in (0.01, 0.015, 0.02)]
    assert gaps[0] < gaps[1] < gaps[2] < 0.025


@pytest.mark.xfail(strict=True, reason="anharmonic shift at lambda' = 0.02 is 0.0215")
def test_harmonic_approximation_within_002():
    assert abs(ground_state(0.02).ground - _bottom_estimate(0.02)) < 0.02


def test_tunnel_doublet():
    levels = spectrum(0.02, k=2).eigenvalues
    assert 0 < levels[1] - levels[0] < 0.1
    assert levels[1] == pytest.approx(DENSE_LEVELS[0.02][1], abs=1e-6)


@pytest.mark.parametrize("method", ["fd", "numerov"])
def test_levels_increase(method):
    res = spectrum(0.05, k=4, method=method, n=8192)
    assert np.all(np.diff(res.eigenvalues) > 0)
    assert res.parities == ("even", "odd", "even", "odd")


def test_single_level_consistency():
    assert spectrum(0.1, k=1).ground == ground_state(0.1).ground


@pytest.mark.parametrize("method", ["fd", "numerov"])
def test_ground_state_is_even(method):
    res = ground_state(0.035, method=method, vectors=True)
    psi = res.eigenvectors[0]
    assert np.allclose(psi, psi[::-1], atol=1e-6 * np.max(np.abs(psi)))
    assert np.all(psi * np.sign(psi[len(psi) // 2]) > -1e-8)


@pytest.mark.parametrize("lam", [0.02, 0.05, 0.1])
def test_backends_agree(lam):
    _, _, diff = cross_validate(lam, k=2)
    assert diff < 1e-6


def test_invalid_requests():
    with pytest.raises(DomainError):
        spectrum(-0.1)
    with pytest.raises(DomainError):
        spectrum(0.02, k=0)
    with pytest.raises(DomainError):
        spectrum(0.02, method="lanczos")
