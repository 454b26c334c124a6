"""The weighted Bergman-Dirichlet space of order m on the disk of radius R.

Functions are finite Taylor coefficient lists. Norms and inner products come
from the coefficient characterization; the monomials z^n are an orthogonal
basis with

    ||z^n||^2 = pi R^(2n+2) n! G(a+1) / G(n+a+2)                     n < m
    ||z^n||^2 = pi R^(2(n-m)+2) (n!)^2 G(a+1) / ((n-m)! G(n-m+a+2))  n >= m
"""
from __future__ import annotations

import cmath
import math
import warnings

import numpy as np
from scipy.special import gammaln

from bergman_dirichlet.common import (
    BOUNDARY_EPSILON,
    DEGREE_CAP,
    CoefficientSeries,
    DiskSpaceParams,
    DomainError,
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


def log_monomial_norms_sq(params: DiskSpaceParams, degree: int) -> np.ndarray:
    """log ||z^n||^2 for n = 0 ... degree. Never overflows."""
    r, alpha, m = params.radius, params.alpha, params.m
    n = np.arange(degree + 1, dtype=float)
    shifted = np.maximum(n - m, 0)
    head = (
        (2 * n + 2) * math.log(r)
        + gammaln(n + 1)
        + gammaln(alpha + 1)
        - gammaln(n + alpha + 2)
    )
    tail = (
        (2 * shifted + 2) * math.log(r)
        + 2 * gammaln(n + 1)
        + gammaln(alpha + 1)
        - gammaln(shifted + 1)
        - gammaln(shifted + alpha + 2)
    )
    return math.log(math.pi) + np.where(n < m, head, tail)


def log_monomial_norm_sq(params: DiskSpaceParams, n: int) -> float:
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    return float(log_monomial_norms_sq(params, n)[n])


def monomial_norm_sq(params: DiskSpaceParams, n: int) -> float:
    return checked_exp(log_monomial_norm_sq(params, n), f"||z^{n}||^2")


def inner_product(
    params: DiskSpaceParams, f: CoefficientSeries, g: CoefficientSeries
) -> complex:
    degree = max(len(f), len(g), 1) - 1
    return weighted_inner_product(log_monomial_norms_sq(params, degree), f, g)


def norm_sq(params: DiskSpaceParams, f: CoefficientSeries) -> float:
    return inner_product(params, f, f).real


def norm_terms(params: DiskSpaceParams, f: CoefficientSeries) -> np.ndarray:
    """Per-degree contributions |a_n|^2 ||z^n||^2."""
    if len(f) == 0:
        return np.zeros(0)
    logs = log_monomial_norms_sq(params, f.degree)
    magnitudes = np.abs(f.coefficients)
    with np.errstate(divide="ignore"):
        log_terms = 2 * np.log(magnitudes) + logs
    return np.array([checked_exp(t, "norm term") for t in log_terms])


def contains(params: DiskSpaceParams, f: CoefficientSeries) -> bool:
    """Membership: the series converges on the disk and has a finite norm."""
    if not domain_covers(f.declared_domain, params.radius):
        return False
    if len(f) == 0:
        return True
    return log_norm_sq(log_monomial_norms_sq(params, f.degree), f) < np.inf


def _check_point(params: DiskSpaceParams, z: complex, name: str) -> None:
    if not abs(z) < params.radius:
        raise DomainError(
            f"{name} = {z} is outside the disk of radius {params.radius}"
        )


def kernel(
    params: DiskSpaceParams,
    z: complex,
    w: complex,
    tolerance: float = DEFAULT_TOLERANCE,
    max_terms: int = DEFAULT_MAX_TERMS,
    force_series: bool = False,
    boundary_epsilon: float = BOUNDARY_EPSILON,
) -> complex:
    """The reproducing kernel K(z, w).

    The closed forms for m = 0 (weighted Bergman) and for R = 1, alpha = 0,
    m = 1 (classical Dirichlet) are used unless `force_series` is set.
    """
    _check_point(params, z, "z")
    _check_point(params, w, "w")
    r_sq = params.radius**2
    alpha, m = params.alpha, params.m
    zw = complex(z) * complex(w).conjugate()
    x = zw / r_sq
    if abs(x) > 1 - boundary_epsilon:
        raise DomainError(
            f"|z conj(w)| = {abs(zw)} is too close to R^2 = {r_sq}, "
            f"the kernel is only evaluated for |z conj(w)| <= (1 - {boundary_epsilon}) R^2"
        )
    prefactor = (alpha + 1) / (math.pi * r_sq)

    if not force_series:
        if m == 0:
            return prefactor * (1 - x) ** -(alpha + 2)
        if m == 1 and alpha == 0 and params.radius == 1:
            return (1 - cmath.log(1 - x)) / math.pi

    head = 0j
    term = 1 + 0j
    for n in range(m):
        head += term
        term *= (alpha + 2 + n) * x / (n + 1)
    spec = HypergeometricSpec([1, 1, alpha + 2], [m + 1, m + 1], x)
    series = hypergeometric_sum(spec, tolerance, max_terms)
    tail = power_over_factorial_sq(zw, m) * series.value
    return prefactor * (head + tail)


def evaluation_bound(
    params: DiskSpaceParams,
    z: complex,
    tolerance: float = DEFAULT_TOLERANCE,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """C_z with |f(z)| <= C_z ||f||, i.e. sqrt(K(z, z))."""
    return math.sqrt(kernel(params, z, z, tolerance, max_terms).real)


def kernel_section(
    params: DiskSpaceParams, w: complex, degree: int
) -> CoefficientSeries:
    """Degree-`degree` truncation of K(., w): coefficients conj(w)^n / ||z^n||^2."""
    _check_point(params, w, "w")
    logs = log_monomial_norms_sq(params, degree)
    n = np.arange(degree + 1)
    w_bar = complex(w).conjugate()
    if w_bar == 0:
        coefficients = np.zeros(degree + 1, dtype=complex)
        coefficients[0] = math.exp(-logs[0])
    else:
        coefficients = np.exp(n * cmath.log(w_bar) - logs)
    return CoefficientSeries(coefficients, params.radius)


def embedding_constant(params: DiskSpaceParams) -> float:
    """min(1, R^(2m) G(a+2) / (m! G(m+a+2)), a / R^2), as printed for the
    embedding of order m+1 into order m. Not positive when a <= 0."""
    r, alpha, m = params.radius, params.alpha, params.m
    middle = math.exp(
        2 * m * math.log(r)
        + gammaln(alpha + 2)
        - gammaln(m + 1)
        - gammaln(m + alpha + 2)
    )
    constant = min(1.0, middle, alpha / r**2)
    if constant <= 0:
        warnings.warn(
            f"the embedding constant is {constant} for alpha = {alpha}, "
            f"the embedding bound is vacuous for alpha <= 0",
            UserWarning,
        )
    return constant


def embedding_ratios(
    params: DiskSpaceParams, degree_cap: int = DEGREE_CAP
) -> np.ndarray:
    """||z^n||^2 of order m+1 over ||z^n||^2 of order m, n = 0 ... degree_cap.

    Their minimum is the sharp embedding constant; past n = m it is
    (n-m)(n-m+a+1)/R^2.
    """
    higher = DiskSpaceParams(radius=params.radius, alpha=params.alpha, m=params.m + 1)
    return np.exp(
        log_monomial_norms_sq(higher, degree_cap)
        - log_monomial_norms_sq(params, degree_cap)
    )
