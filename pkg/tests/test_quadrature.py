import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from millergood.errors import ClassicallyForbiddenError, DomainError, IntegrandError
from millergood.quadrature import IntegrandSpec, action_integral, integrate, quad


def test_half_disk():
    value = quad(lambda t: np.sqrt(1 - t * t), -1, 1, "sqrt-vanishing", 1e-12)
    assert abs(value - math.pi / 2) < 1e-10


def test_sqrt_edge():
    value = quad(lambda t: np.sqrt(1 - t), -1, 1, "sqrt-vanishing", 1e-12)
    assert abs(value - 4 * math.sqrt(2) / 3) < 1e-10


def test_polynomial_exact():
    assert quad(lambda x: x**3, 0, 1) == pytest.approx(0.25, abs=1e-15)


def test_inverse_sqrt_endpoint():
    value = quad(lambda t: 1 / np.sqrt(1 - t * t), -1, 1, "inverse-sqrt", 1e-12)
    assert value == pytest.approx(math.pi, abs=1e-10)


@settings(max_examples=30)
@given(st.floats(-2, 2), st.floats(0.01, 2), st.floats(0.01, 2))
def test_additivity(a, w1, w2):
    f = np.cos
    b, c = a + w1, a + w1 + w2
    assert quad(f, a, b) + quad(f, b, c) == pytest.approx(quad(f, a, c), abs=1e-12)


@settings(max_examples=30)
@given(st.floats(0.1, 5))
def test_odd_integrand_vanishes(a):
    assert abs(quad(lambda x: x**3 * np.exp(-x * x), -a, a)) < 1e-14


def test_reversed_limits_and_empty_interval():
    assert quad(np.exp, 1, 0) == pytest.approx(-(math.e - 1), rel=1e-13)
    assert quad(np.exp, 0.3, 0.3) == 0.0


def test_error_estimate_shrinks_with_tolerance():
    f = lambda t: np.sqrt(1 - t * t) * np.exp(t)
    errors = [integrate(IntegrandSpec(f, -1, 1, "sqrt-vanishing", tol)).error
              for tol in (1e-4, 5e-5, 2.5e-5, 1.25e-5, 1e-8, 1e-12)]
    assert all(b <= a for a, b in zip(errors, errors[1:]))


def test_spec_validation():
    with pytest.raises(DomainError):
        IntegrandSpec(np.sin, 1.0, 0.0)
    with pytest.raises(DomainError):
        IntegrandSpec(np.sin, 0.0, 1.0, tol=0.0)


def test_nonfinite_integrand():
    with pytest.raises(IntegrandError):
        quad(lambda x: np.full_like(x, np.nan), 0, 1)


@pytest.mark.parametrize("energy", [0.5, 3.5])
def test_harmonic_action(energy):
    x = math.sqrt(2 * energy)
    p = lambda t: np.sqrt(np.maximum(2 * (energy - t * t / 2), 0.0))
    assert action_integral(p, -x, x, 1e-12) == pytest.approx(math.pi * energy, abs=1e-10)


def test_action_degenerate_interval():
    assert action_integral(np.sqrt, 1.0, 1.0) == 0.0


@pytest.mark.filterwarnings("ignore:invalid value")
def test_action_forbidden_region():
    with pytest.raises(ClassicallyForbiddenError):
        action_integral(lambda t: np.sqrt(1 - 4 * t * t), -1, 1)
