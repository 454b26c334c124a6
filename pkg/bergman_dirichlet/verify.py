"""The invariant suite behind `bergman-dirichlet verify`.

Every check returns a measured error and the threshold it must stay under.
"""
from __future__ import annotations

import cmath
import math
from typing import Callable, Iterator

import numpy as np
from pydantic import BaseModel
from tqdm import tqdm

from bergman_dirichlet.asymptotics import (
    hypergeometric_limit_check,
    kernel_convergence_table,
)
from bergman_dirichlet.common import (
    CoefficientSeries,
    DiskSpaceParams,
    PlaneSpaceParams,
    evaluate,
    gram_matrix,
    min_eigenvalue,
)
from bergman_dirichlet.disk import (
    embedding_constant,
    evaluation_bound,
    inner_product,
    kernel,
    kernel_section,
    monomial_norm_sq,
    norm_sq,
)
from bergman_dirichlet.plane import (
    evaluation_bound_plane,
    inner_product_plane,
    kernel_plane,
    kernel_section_plane,
    monomial_norm_sq_plane,
    norm_sq_plane,
)
from bergman_dirichlet.quadrature import (
    disk_rule_for_degree,
    oracle_modified_inner_product,
    plane_rule_for_degree,
)
from bergman_dirichlet.special import DEFAULT_TOLERANCE

DEFAULT_SEED = 20140101
# |f(w)| below this fraction of sum |a_n| |w|^n is dominated by rounding
ROOT_FLOOR = 1e-4

ORTHOGONALITY_DISK_PARAMS = [
    DiskSpaceParams(radius=1, alpha=0, m=0),
    DiskSpaceParams(radius=1, alpha=0, m=1),
    DiskSpaceParams(radius=1, alpha=0, m=2),
    DiskSpaceParams(radius=2, alpha=1.5, m=1),
]
ORTHOGONALITY_PLANE_PARAMS = [
    PlaneSpaceParams(nu=nu, m=m) for nu in (1, 2) for m in (0, 1, 2)
]


class CheckResult(BaseModel):
    name: str
    error: float
    threshold: float
    passed: bool


def relative_error(value: complex, expected: complex, scale: float = 0.0) -> float:
    return abs(value - expected) / max(abs(expected), scale, 1e-300)


def random_polynomial(
    rng: np.random.Generator, degree: int, declared_domain="entire"
) -> CoefficientSeries:
    coefficients = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(
        degree + 1
    )
    return CoefficientSeries(coefficients, declared_domain)


def random_points(
    rng: np.random.Generator, count: int, max_modulus: float
) -> list[complex]:
    """Uniform in the closed disk of radius `max_modulus`."""
    moduli = max_modulus * np.sqrt(rng.uniform(0, 1, count))
    angles = rng.uniform(0, 2 * math.pi, count)
    return [complex(z) for z in moduli * np.exp(1j * angles)]


def bergman_grid(radius: float) -> list[complex]:
    """7 points out to 0.9 R, turning by pi/6 at each step."""
    return [
        0.9 * radius * k / 6 * complex(np.exp(1j * math.pi * k / 6)) for k in range(7)
    ]


def check_bergman_reduction(rng, tolerance) -> float:
    worst = 0.0
    for alpha in (0, 0.5, 2.5):
        for radius in (1, 2):
            params = DiskSpaceParams(radius=radius, alpha=alpha, m=0)
            grid = bergman_grid(radius)
            for z in grid:
                for w in grid:
                    series = kernel(params, z, w, tolerance, force_series=True)
                    closed = kernel(params, z, w, tolerance)
                    worst = max(worst, relative_error(series, closed))
    return worst


def check_dirichlet_reduction(rng, tolerance) -> float:
    params = DiskSpaceParams(radius=1, alpha=0, m=1)
    worst = 0.0
    for x in random_points(rng, 50, 0.9):
        # z conj(w) = x with both points inside the unit disk
        w = math.sqrt(abs(x))
        z = x / w if w else 0j
        series = kernel(params, z, w, tolerance, force_series=True)
        expected = (1 - cmath.log(1 - x)) / math.pi
        worst = max(worst, relative_error(series, expected))
    return worst


def check_fock_reduction(rng, tolerance) -> float:
    worst = 0.0
    for nu in (1, 2):
        params = PlaneSpaceParams(nu=nu, m=0)
        for x in random_points(rng, 30, 20.0) + [20, -20, 20j]:
            # nu z conj(w) = x
            w = math.sqrt(abs(x) / nu)
            z = x / (nu * w) if w else 0j
            value = kernel_plane(params, z, w, tolerance)
            worst = max(worst, relative_error(value, nu / math.pi * cmath.exp(x)))
        # the series path on the positive axis, where it has no cancellation
        for x in np.linspace(0, 20, 11):
            z = math.sqrt(x / nu)
            value = kernel_plane(params, z, z, tolerance, force_series=True)
            worst = max(worst, relative_error(value, nu / math.pi * math.exp(x)))
    return worst


def _orthogonality_error(n_max, norm, oracle) -> float:
    worst = 0.0
    for n in range(n_max + 1):
        e_n = CoefficientSeries([0] * n + [1])
        for k in range(n_max + 1):
            e_k = CoefficientSeries([0] * k + [1])
            value = oracle(e_n, e_k)
            if n == k:
                worst = max(worst, relative_error(value, norm(n)))
            else:
                worst = max(worst, abs(value) / math.sqrt(norm(n) * norm(k)))
    return worst


def check_orthogonality(rng, tolerance) -> float:
    worst = 0.0
    n_max = 12
    for params in ORTHOGONALITY_DISK_PARAMS:
        rule = disk_rule_for_degree(params, n_max)
        worst = max(
            worst,
            _orthogonality_error(
                n_max,
                lambda n: monomial_norm_sq(params, n),
                lambda f, g: oracle_modified_inner_product(rule, params.m, f, g),
            ),
        )
    for params in ORTHOGONALITY_PLANE_PARAMS:
        rule = plane_rule_for_degree(params, n_max)
        worst = max(
            worst,
            _orthogonality_error(
                n_max,
                lambda n: monomial_norm_sq_plane(params, n),
                lambda f, g: oracle_modified_inner_product(rule, params.m, f, g),
            ),
        )
    return worst


def _root_floor(f: CoefficientSeries, w: complex) -> float:
    moduli = np.abs(f.coefficients) * abs(w) ** np.arange(len(f))
    return ROOT_FLOOR * float(np.sum(moduli))


def check_reproducing_identity(rng, tolerance) -> float:
    """Relative to |f(w)|, floored at `ROOT_FLOOR` times sum |a_n| |w|^n near a
    root of f."""
    worst = 0.0
    degree = 10
    disk = DiskSpaceParams(radius=1.5, alpha=0.5, m=2)
    plane = PlaneSpaceParams(nu=1.5, m=2)
    for _ in range(20):
        f = random_polynomial(rng, int(rng.integers(0, degree + 1)))
        for w in random_points(rng, 10, 0.9 * disk.radius):
            section = kernel_section(disk, w, degree)
            scale = _root_floor(f, w)
            worst = max(
                worst,
                relative_error(inner_product(disk, f, section), evaluate(f, w), scale),
            )
        for w in random_points(rng, 10, 2 / math.sqrt(plane.nu)):
            section = kernel_section_plane(plane, w, degree)
            scale = _root_floor(f, w)
            worst = max(
                worst,
                relative_error(
                    inner_product_plane(plane, f, section), evaluate(f, w), scale
                ),
            )
    return worst


def check_oracle_agreement(rng, tolerance) -> float:
    worst = 0.0
    degree = 8
    for m in range(4):
        for params in (
            DiskSpaceParams(radius=1, alpha=0, m=m),
            DiskSpaceParams(radius=2, alpha=1.5, m=m),
        ):
            rule = disk_rule_for_degree(params, degree)
            for _ in range(5):
                f, g = random_polynomial(rng, degree), random_polynomial(rng, degree)
                expected = inner_product(params, f, g)
                scale = math.sqrt(norm_sq(params, f) * norm_sq(params, g))
                value = oracle_modified_inner_product(rule, m, f, g)
                worst = max(worst, relative_error(value, expected, scale))
        params = PlaneSpaceParams(nu=1.5, m=m)
        rule = plane_rule_for_degree(params, degree)
        for _ in range(5):
            f, g = random_polynomial(rng, degree), random_polynomial(rng, degree)
            expected = inner_product_plane(params, f, g)
            scale = math.sqrt(norm_sq_plane(params, f) * norm_sq_plane(params, g))
            value = oracle_modified_inner_product(rule, m, f, g)
            worst = max(worst, relative_error(value, expected, scale))
    return worst


def check_gram_psd(rng, tolerance) -> float:
    worst = 0.0
    for m in (0, 1, 2):
        disk = DiskSpaceParams(radius=1, alpha=0.5, m=m)
        plane = PlaneSpaceParams(nu=1, m=m)
        for params, points, kernel_function in (
            (disk, random_points(rng, 8, 0.9), kernel),
            (plane, random_points(rng, 8, 3.0), kernel_plane),
        ):
            matrix = gram_matrix(
                lambda z, w: kernel_function(params, z, w, tolerance), points
            )
            trace = float(np.trace(matrix).real)
            worst = max(worst, -min_eigenvalue(matrix) / trace)
    return worst


def check_kernel_convergence(rng, tolerance) -> float:
    """Worst error(40) / error(5); infinite if some error grows with R."""
    worst = 0.0
    radii = [5, 10, 20, 40]
    for m in (0, 1, 2):
        for z, w in ((1, 1), (1 + 1j, 0.5), (2, -1)):
            errors = [
                record.abs_error
                for record in kernel_convergence_table(1.0, m, z, w, radii, tolerance)
            ]
            if any(later > earlier for earlier, later in zip(errors, errors[1:])):
                return math.inf
            worst = max(worst, errors[-1] / errors[0])
    return worst


def check_constant_kernel_convergence(rng, tolerance) -> float:
    worst = 0.0
    for m in (0, 1, 2):
        for record in kernel_convergence_table(1.0, m, 1, 0, [5, 10, 20, 40], tolerance):
            expected = 1 / (math.pi * record.radius**2)
            worst = max(worst, abs(record.abs_error - expected))
    return worst


def check_hypergeometric_limit(rng, tolerance) -> float:
    """Worst spread max(rho * error) / min(rho * error) across the decades."""
    worst = 0.0
    for xi in (0.5, 1, 2):
        for m in (0, 1, 2):
            records = hypergeometric_limit_check(m, xi, [1e2, 1e3, 1e4], 2.0, tolerance)
            errors = [record.abs_error for record in records]
            if any(later >= earlier for earlier, later in zip(errors, errors[1:])):
                return math.inf
            scaled = [record.rho_times_error for record in records]
            worst = max(worst, max(scaled) / min(scaled))
    return worst


def check_embedding(rng, tolerance) -> float:
    """Worst relative violation of ||f||_m^2 <= ||f||_{m+1}^2 / C."""
    worst = 0.0
    for alpha in (1, 2, 4):
        for radius in (1, 2):
            for m in (0, 1):
                lower = DiskSpaceParams(radius=radius, alpha=alpha, m=m)
                higher = DiskSpaceParams(radius=radius, alpha=alpha, m=m + 1)
                constant = embedding_constant(lower)
                for _ in range(20):
                    f = random_polynomial(rng, int(rng.integers(0, 13)))
                    bound = norm_sq(higher, f) / constant
                    worst = max(worst, (norm_sq(lower, f) - bound) / bound)
    return max(worst, 0.0)


def check_evaluation_bound(rng, tolerance) -> float:
    """Worst |f(z)| / (C_z ||f||); at most 1 when the bound holds."""
    worst = 0.0
    disk = DiskSpaceParams(radius=1.5, alpha=0.5, m=1)
    plane = PlaneSpaceParams(nu=1, m=1)
    for _ in range(50):
        f = random_polynomial(rng, int(rng.integers(0, 11)))
        z = random_points(rng, 1, 0.9 * disk.radius)[0]
        bound = evaluation_bound(disk, z, tolerance) * math.sqrt(norm_sq(disk, f))
        worst = max(worst, abs(evaluate(f, z)) / bound)
        z = random_points(rng, 1, 3.0)[0]
        bound = evaluation_bound_plane(plane, z, tolerance) * math.sqrt(
            norm_sq_plane(plane, f)
        )
        worst = max(worst, abs(evaluate(f, z)) / bound)
    return worst


CHECKS: list[tuple[str, Callable, float]] = [
    ("bergman_reduction", check_bergman_reduction, 1e-12),
    ("dirichlet_reduction", check_dirichlet_reduction, 1e-10),
    ("fock_reduction", check_fock_reduction, 1e-12),
    ("orthogonality_and_norms", check_orthogonality, 1e-10),
    ("reproducing_identity", check_reproducing_identity, 1e-10),
    ("oracle_inner_product", check_oracle_agreement, 1e-8),
    ("gram_psd", check_gram_psd, 1e-10),
    ("kernel_convergence", check_kernel_convergence, 0.1),
    ("kernel_convergence_at_w_0", check_constant_kernel_convergence, 1e-14),
    ("hypergeometric_limit", check_hypergeometric_limit, 3.0),
    ("embedding_inequality", check_embedding, 1e-12),
    ("evaluation_bound", check_evaluation_bound, 1 + 1e-12),
]


def iter_invariant_suite(
    seed: int = DEFAULT_SEED,
    tolerance: float = DEFAULT_TOLERANCE,
    progress: bool = False,
) -> Iterator[CheckResult]:
    rng = np.random.default_rng(seed)
    for name, check, threshold in tqdm(CHECKS, disable=not progress, desc="checks"):
        error = float(check(rng, tolerance))
        yield CheckResult(
            name=name, error=error, threshold=threshold, passed=error < threshold
        )


def run_invariant_suite(
    seed: int = DEFAULT_SEED,
    tolerance: float = DEFAULT_TOLERANCE,
    progress: bool = False,
) -> list[CheckResult]:
    return list(iter_invariant_suite(seed, tolerance, progress))
