"""The weighted Bargmann-Dirichlet space of order m on the complex plane,
square-integrable against exp(-nu |z|^2)."""
from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.special import gammaln

from bergman_dirichlet.common import (
    DEGREE_CAP,
    CoefficientSeries,
    DomainError,
    PlaneSpaceParams,
    checked_exp,
    domain_covers,
    log_norm_sq,
    weighted_inner_product,
)
from bergman_dirichlet.special import (
    DEFAULT_MAX_TERMS,
    DEFAULT_TOLERANCE,
    HypergeometricSpec,
    hypergeometric_sum,
    power_over_factorial_sq,
)


def log_monomial_norms_sq_plane(params: PlaneSpaceParams, degree: int) -> np.ndarray:
    nu, m = params.nu, params.m
    n = np.arange(degree + 1, dtype=float)
    shifted = np.maximum(n - m, 0)
    head = gammaln(n + 1) - (n + 1) * math.log(nu)
    tail = 2 * gammaln(n + 1) - (shifted + 1) * math.log(nu) - gammaln(shifted + 1)
    return math.log(math.pi) + np.where(n < m, head, tail)


def log_monomial_norm_sq_plane(params: PlaneSpaceParams, n: int) -> float:
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    return float(log_monomial_norms_sq_plane(params, n)[n])


def monomial_norm_sq_plane(params: PlaneSpaceParams, n: int) -> float:
    """pi n! / nu^(n+1) below m, pi (n!)^2 / (nu^(n-m+1) (n-m)!) from m on."""
    return checked_exp(log_monomial_norm_sq_plane(params, n), f"||z^{n}||^2")


def inner_product_plane(
    params: PlaneSpaceParams, f: CoefficientSeries, g: CoefficientSeries
) -> complex:
    degree = max(len(f), len(g), 1) - 1
    return weighted_inner_product(log_monomial_norms_sq_plane(params, degree), f, g)


def norm_sq_plane(params: PlaneSpaceParams, f: CoefficientSeries) -> float:
    return inner_product_plane(params, f, f).real


def norm_terms_plane(params: PlaneSpaceParams, f: CoefficientSeries) -> np.ndarray:
    if len(f) == 0:
        return np.zeros(0)
    logs = log_monomial_norms_sq_plane(params, f.degree)
    with np.errstate(divide="ignore"):
        log_terms = 2 * np.log(np.abs(f.coefficients)) + logs
    return np.array([checked_exp(t, "norm term") for t in log_terms])


def contains_plane(params: PlaneSpaceParams, f: CoefficientSeries) -> bool:
    if not domain_covers(f.declared_domain, None):
        return False
    if len(f) == 0:
        return True
    logs = log_monomial_norms_sq_plane(params, f.degree)
    return log_norm_sq(logs, f) < np.inf


def kernel_plane(
    params: PlaneSpaceParams,
    z: complex,
    w: complex,
    tolerance: float = DEFAULT_TOLERANCE,
    max_terms: int = DEFAULT_MAX_TERMS,
    force_series: bool = False,
) -> complex:
    nu, m = params.nu, params.m
    zw = complex(z) * complex(w).conjugate()
    x = nu * zw
    if m == 0 and not force_series:
        return nu / math.pi * cmath.exp(x)

    head = 0j
    term = 1 + 0j
    for n in range(m):
        head += term
        term *= x / (n + 1)
    spec = HypergeometricSpec([1, 1], [m + 1, m + 1], x)
    series = hypergeometric_sum(spec, tolerance, max_terms)
    tail = power_over_factorial_sq(zw, m) * series.value
    return nu / math.pi * (head + tail)


def evaluation_bound_plane(
    params: PlaneSpaceParams,
    z: complex,
    tolerance: float = DEFAULT_TOLERANCE,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    return math.sqrt(kernel_plane(params, z, z, tolerance, max_terms).real)


def kernel_section_plane(
    params: PlaneSpaceParams, w: complex, degree: int
) -> CoefficientSeries:
    logs = log_monomial_norms_sq_plane(params, degree)
    w_bar = complex(w).conjugate()
    if w_bar == 0:
        coefficients = np.zeros(degree + 1, dtype=complex)
        coefficients[0] = math.exp(-logs[0])
    else:
        coefficients = np.exp(np.arange(degree + 1) * cmath.log(w_bar) - logs)
    return CoefficientSeries(coefficients)


def embedding_ratios_plane(
    params: PlaneSpaceParams, degree_cap: int = DEGREE_CAP
) -> np.ndarray:
    """||z^n||^2 of order m over ||z^n||^2 of order m+1, n = 0 ... degree_cap:
    1 below m, m! nu^m at m and 1 / (nu (n-m)) past it."""
    higher = PlaneSpaceParams(nu=params.nu, m=params.m + 1)
    return np.exp(
        log_monomial_norms_sq_plane(params, degree_cap)
        - log_monomial_norms_sq_plane(higher, degree_cap)
    )


def embedding_constant_plane(
    params: PlaneSpaceParams, degree_cap: int = DEGREE_CAP
) -> float:
    """C with ||f||^2 of order m <= C ||f||^2 of order m+1 up to `degree_cap`."""
    return float(embedding_ratios_plane(params, degree_cap).max())
