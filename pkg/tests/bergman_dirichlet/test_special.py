import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import gammaln

from bergman_dirichlet.common import Divergent, DomainError, NormOverflow, NotConverged
from bergman_dirichlet.special import (
    HypergeometricSpec,
    euler_beta,
    hypergeometric_sum,
    hypergeometric_value,
    log_pochhammer,
    pochhammer,
    power_over_factorial_sq,
)


@pytest.mark.parametrize(
    "a, k, expected", [(3, 0, 1), (1, 5, 120), (2.5, 3, 39.375), (-2, 3, 0), (-0.5, 2, -0.25)]
)
def test_pochhammer_small_values(a, k, expected):
    assert pochhammer(a, k) == expected


@pytest.mark.parametrize("k", range(21))
def test_pochhammer_of_one_is_the_factorial(k):
    assert pochhammer(1, k) == math.factorial(k)


def test_pochhammer_recurrence(rng):
    for a in rng.uniform(-5, 5, 20):
        for k in range(50):
            assert pochhammer(a, k + 1) == pytest.approx(
                pochhammer(a, k) * (a + k), rel=1e-10, abs=1e-300
            )


def test_pochhammer_large_k_goes_through_log_gamma():
    expected = math.exp(gammaln(2.5 + 40) - gammaln(2.5))
    assert pochhammer(2.5, 40) == pytest.approx(expected, rel=1e-13)


def test_pochhammer_overflow():
    with pytest.raises(NormOverflow):
        pochhammer(1, 200)
    sign, log_abs = log_pochhammer(1, 200)
    assert sign == 1
    assert log_abs == pytest.approx(math.lgamma(201), rel=1e-14)


def test_log_pochhammer_signs():
    assert log_pochhammer(-2, 3) == (0, -math.inf)
    sign, log_abs = log_pochhammer(-0.5, 2)
    assert sign == -1
    assert log_abs == pytest.approx(math.log(0.25))
    assert log_pochhammer(7.0, 0) == (1, 0.0)


def test_pochhammer_rejects_negative_k():
    with pytest.raises(DomainError):
        pochhammer(1, -1)


def test_euler_beta_closed_values():
    assert euler_beta(1, 1) == pytest.approx(1, rel=1e-15)
    assert euler_beta(2, 3) == pytest.approx(1 / 12, rel=1e-14)


def test_euler_beta_against_integration():
    expected, _ = quad(lambda t: t**0.5 * (1 - t) ** 1.7, 0, 1, epsabs=1e-13)
    assert euler_beta(1.5, 2.7) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("x, y", [(0, 1), (1, 0), (-0.5, 2), (2, -3)])
def test_euler_beta_domain(x, y):
    with pytest.raises(DomainError):
        euler_beta(x, y)


def test_hypergeometric_at_zero():
    result = hypergeometric_sum(HypergeometricSpec([1, 1, 2], [1, 1], 0))
    assert result.value == 1
    assert result.converged
    assert result.terms_used == 1


def test_2f1_at_one_half():
    assert hypergeometric_value([1, 1], [2], 0.5) == pytest.approx(
        2 * math.log(2), rel=1e-13
    )


def test_2f2_at_one():
    expected = math.fsum(1 / ((k + 1) ** 2 * math.factorial(k)) for k in range(40))
    value = hypergeometric_value([1, 1], [2, 2], 1)
    assert value == pytest.approx(expected, rel=1e-13)
    assert value.real == pytest.approx(1.3179022, abs=1e-6)


def test_2f1_logarithm_identity(rng):
    moduli = 0.9 * np.sqrt(rng.uniform(0, 1, 47))
    angles = rng.uniform(0, 2 * math.pi, 47)
    points = list(moduli * np.exp(1j * angles)) + [0.9, -0.9, 0.9j]
    for x in points:
        x = complex(x)
        if x == 0:
            continue
        value = x * hypergeometric_value([1, 1], [2], x)
        expected = -cmath.log(1 - x)
        assert abs(value - expected) <= 1e-12 * abs(expected)


@pytest.mark.parametrize("a", [1, 2])
@pytest.mark.parametrize("c", [0.5, 2.5])
@pytest.mark.parametrize(
    "x", [0, 0.3, 0.9, 0.5j, -0.5, 0.6 + 0.6j, 0.45 - 0.45j, -0.3 + 0.4j]
)
def test_cancelling_parameters_give_a_binomial(a, c, x):
    value = hypergeometric_value([a, a, c], [a, a], x)
    expected = (1 - x) ** -c
    assert abs(value - expected) <= 1e-12 * abs(expected)


def test_matches_brute_force_summation():
    numerator, denominator, x = [1, 1, 2.5], [2, 3], 0.5
    terms = []
    for k in range(200):
        log_term = k * math.log(x) - gammaln(k + 1)
        for a in numerator:
            log_term += log_pochhammer(a, k)[1]
        for b in denominator:
            log_term -= log_pochhammer(b, k)[1]
        terms.append(math.exp(log_term))
    expected = math.fsum(terms)
    value = hypergeometric_value(numerator, denominator, x)
    assert value == pytest.approx(expected, rel=1e-13)


def test_convergence_report():
    tolerance = 1e-12
    result = hypergeometric_sum(HypergeometricSpec([1, 1], [2], 0.8), tolerance, 10_000)
    assert result.converged
    assert result.estimated_tail <= tolerance * abs(result.value) * (1 + 1e-12)
    assert 1 < result.terms_used <= 10_000


def test_entire_series_accepts_large_arguments():
    value = hypergeometric_value([1, 1], [1, 1], 30)
    assert value == pytest.approx(math.exp(30), rel=1e-13)


@pytest.mark.parametrize("x", [1, -1, 1.5, 0.8 + 0.8j])
def test_divergent_outside_the_unit_disk(x):
    with pytest.raises(Divergent):
        hypergeometric_sum(HypergeometricSpec([1, 1], [2], x))


def test_not_converged_within_max_terms():
    with pytest.raises(NotConverged):
        hypergeometric_sum(HypergeometricSpec([1, 1], [2], 0.9), max_terms=5)


@pytest.mark.parametrize(
    "numerator, denominator", [([1, 1], [0]), ([1, 1], [-2.0]), ([1, 1, 1], [2])]
)
def test_invalid_specs(numerator, denominator):
    with pytest.raises(DomainError):
        HypergeometricSpec(numerator, denominator, 0.5)


def test_terminating_series():
    # (-2)_k vanishes from k = 3 on
    value = hypergeometric_value([-2, 1], [1], 0.5)
    assert value == pytest.approx((1 - 0.5) ** 2)


def test_power_over_factorial_sq():
    assert power_over_factorial_sq(2, 3) == pytest.approx(8 / 36, rel=1e-14)
    assert power_over_factorial_sq(0, 3) == 0
    assert power_over_factorial_sq(0, 0) == 1
    assert power_over_factorial_sq(-1j, 2) == pytest.approx(-1 / 4, rel=1e-14)
    # 8100^80 alone overflows a double
    value = power_over_factorial_sq(8100, 80)
    assert value == pytest.approx(math.exp(80 * math.log(8100) - 2 * math.lgamma(81)))


def test_cancellation_is_reported():
    result = hypergeometric_sum(HypergeometricSpec([1, 1], [2, 2], -9))
    assert result.rounding_error < 1e-12 * abs(result.value)
    with pytest.raises(NotConverged):
        hypergeometric_sum(HypergeometricSpec([1, 1], [2, 2], -40))
