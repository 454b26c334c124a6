"""Scalar special functions: Pochhammer symbols, Euler Beta and generalized
hypergeometric series summed term by term."""
from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from bergman_dirichlet.common import Divergent, DomainError, NormOverflow, NotConverged

DEFAULT_TOLERANCE = 1e-14
DEFAULT_MAX_TERMS = 100_000

# below this k the product recurrence is used, above it log-gamma (for a > 0)
POCHHAMMER_PRODUCT_THRESHOLD = 30
# number of consecutive small terms needed before summation stops
SMALL_TERMS_TO_STOP = 3
ABSOLUTE_FLOOR = 1e-300
# largest accepted relative rounding error eps * sum|t_k| / |sum t_k|
CANCELLATION_LIMIT = 1e-8
MACHINE_EPSILON = float(np.finfo(float).eps)

LOG_DOUBLE_MAX = math.log(np.finfo(float).max)


def _is_nonpositive_integer(value: float) -> bool:
    return value <= 0 and float(value).is_integer()


def log_pochhammer(a: float, k: int) -> tuple[int, float]:
    """(sign, log|(a)_k|). The sign is 0 (and the log -inf) when the symbol
    vanishes."""
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    if k == 0:
        return 1, 0.0
    if a > 0:
        return 1, float(gammaln(a + k) - gammaln(a))
    if _is_nonpositive_integer(a) and k > -a:
        return 0, -math.inf
    sign = 1
    log_abs = 0.0
    for j in range(k):
        factor = a + j
        if factor < 0:
            sign = -sign
        log_abs += math.log(abs(factor))
    return sign, log_abs


def pochhammer(a: float, k: int) -> float:
    """The rising factorial (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1."""
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    if k <= POCHHAMMER_PRODUCT_THRESHOLD or a <= 0:
        result = 1.0
        for j in range(k):
            result *= a + j
        if math.isinf(result):
            raise NormOverflow(
                f"({a})_{k} exceeds the double precision range, use log_pochhammer"
            )
        return result
    sign, log_abs = log_pochhammer(a, k)
    if log_abs > LOG_DOUBLE_MAX:
        raise NormOverflow(
            f"({a})_{k} exceeds the double precision range, use log_pochhammer"
        )
    return sign * math.exp(log_abs)


def power_over_factorial_sq(x: complex, m: int) -> complex:
    """x^m / (m!)^2, formed in log scale so neither factor over- or underflows."""
    if m == 0:
        return 1 + 0j
    if x == 0:
        return 0j
    return cmath.exp(m * cmath.log(x) - 2 * gammaln(m + 1))


def euler_beta(x: float, y: float) -> float:
    """B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y) for x, y > 0."""
    if not (x > 0 and y > 0):
        raise DomainError(f"the Beta function needs x > 0 and y > 0, got ({x}, {y})")
    return math.exp(gammaln(x) + gammaln(y) - gammaln(x + y))


class HypergeometricSpec:
    """The series pFq(numerator_params; denominator_params; argument).

    Only the (p+1, p) and (p, p) shapes are accepted.
    """

    def __init__(
        self,
        numerator_params: Sequence[float],
        denominator_params: Sequence[float],
        argument: complex,
    ):
        self.numerator_params = [float(a) for a in numerator_params]
        self.denominator_params = [float(b) for b in denominator_params]
        self.argument = complex(argument)
        p, q = len(self.numerator_params), len(self.denominator_params)
        if p not in (q, q + 1):
            raise DomainError(
                f"only (p+1, p) and (p, p) series are supported, got ({p}, {q})"
            )
        for b in self.denominator_params:
            if _is_nonpositive_integer(b):
                raise DomainError(
                    f"denominator parameter {b} is zero or a negative integer"
                )

    @property
    def is_entire(self) -> bool:
        return len(self.numerator_params) == len(self.denominator_params)

    def term_ratio(self, k: int) -> complex:
        """t_{k+1} / t_k."""
        ratio = self.argument / (k + 1)
        for a in self.numerator_params:
            ratio *= a + k
        for b in self.denominator_params:
            ratio /= b + k
        return ratio

    def __repr__(self):
        p, q = len(self.numerator_params), len(self.denominator_params)
        return (
            f"{p}F{q}({self.numerator_params}; {self.denominator_params}; "
            f"{self.argument})"
        )


class SeriesSumResult:
    def __init__(
        self,
        value: complex,
        terms_used: int,
        estimated_tail: float,
        converged: bool,
        rounding_error: float = 0.0,
    ):
        """`rounding_error` estimates the absolute error from cancellation,
        machine epsilon times the sum of the term moduli."""
        self.value = value
        self.terms_used = terms_used
        self.estimated_tail = estimated_tail
        self.converged = converged
        self.rounding_error = rounding_error

    def __repr__(self):
        return (
            f"SeriesSumResult(value={self.value}, terms_used={self.terms_used}, "
            f"estimated_tail={self.estimated_tail:.3e}, "
            f"rounding_error={self.rounding_error:.3e}, converged={self.converged})"
        )


def _tail_bound(term: complex, ratio: complex) -> float:
    r = abs(ratio)
    if r >= 1:
        return math.inf
    return abs(term) * r / (1 - r)


def hypergeometric_sum(
    spec: HypergeometricSpec,
    tolerance: float = DEFAULT_TOLERANCE,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesSumResult:
    """Sum the series with the term recurrence
    t_{k+1} = t_k * prod(a_j + k) / prod(b_j + k) * x / (k + 1).

    Summation stops once `SMALL_TERMS_TO_STOP` consecutive terms are below
    `tolerance` times the partial sum and the geometric tail bound agrees.
    """
    if not tolerance > 0:
        raise DomainError(f"tolerance must be positive, got {tolerance}")
    if max_terms < 1:
        raise DomainError(f"max_terms must be positive, got {max_terms}")
    if not spec.is_entire and abs(spec.argument) >= 1:
        raise Divergent(
            f"{spec!r} needs |x| < 1 to converge, got |x| = {abs(spec.argument)}"
        )

    term = 1 + 0j
    real_parts = [1.0]
    imag_parts = [0.0]
    partial = term
    moduli_sum = 1.0
    small_in_a_row = 0
    for k in range(max_terms - 1):
        term = term * spec.term_ratio(k)
        if term == 0:
            # a numerator parameter reached a nonpositive integer, or x == 0
            return _checked_result(
                spec, real_parts, imag_parts, k + 1, 0.0, moduli_sum, tolerance
            )
        real_parts.append(term.real)
        imag_parts.append(term.imag)
        partial += term
        moduli_sum += abs(term)
        if not (math.isfinite(partial.real) and math.isfinite(partial.imag)):
            raise NotConverged(
                f"partial sums of {spec!r} left the double precision range "
                f"after {k + 2} terms"
            )
        threshold = tolerance * max(abs(partial), ABSOLUTE_FLOOR)
        if abs(term) <= threshold:
            small_in_a_row += 1
        else:
            small_in_a_row = 0
        if small_in_a_row >= SMALL_TERMS_TO_STOP:
            tail = _tail_bound(term, spec.term_ratio(k + 1))
            if tail <= threshold:
                return _checked_result(
                    spec, real_parts, imag_parts, k + 2, tail, moduli_sum, tolerance
                )
    raise NotConverged(
        f"{spec!r} did not reach a relative tolerance of {tolerance} "
        f"within {max_terms} terms"
    )


def _checked_result(
    spec: HypergeometricSpec,
    real_parts: list[float],
    imag_parts: list[float],
    terms_used: int,
    tail: float,
    moduli_sum: float,
    tolerance: float,
) -> SeriesSumResult:
    """fsum removes the error of the additions, not the rounding of the terms
    themselves: a sum much smaller than the terms it cancels is rejected."""
    value = complex(math.fsum(real_parts), math.fsum(imag_parts))
    rounding_error = MACHINE_EPSILON * moduli_sum
    if rounding_error > max(tolerance, CANCELLATION_LIMIT) * abs(value):
        raise NotConverged(
            f"{spec!r} sums terms up to {moduli_sum:.3e} to {abs(value):.3e}, "
            f"cancellation leaves a relative error around "
            f"{rounding_error / max(abs(value), ABSOLUTE_FLOOR):.1e}"
        )
    return SeriesSumResult(value, terms_used, tail, True, rounding_error)


def hypergeometric_value(
    numerator_params: Sequence[float],
    denominator_params: Sequence[float],
    argument: complex,
    tolerance: float = DEFAULT_TOLERANCE,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> complex:
    spec = HypergeometricSpec(numerator_params, denominator_params, argument)
    return hypergeometric_sum(spec, tolerance, max_terms).value
