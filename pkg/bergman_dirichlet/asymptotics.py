"""Large-radius limit of the disk spaces with alpha = nu R^2.

The disk kernel of order m with alpha = nu R^2 converges to the plane kernel
of order m as R grows, uniformly on compact sets, and the disk weight
(1 - |z/R|^2)^(nu R^2) converges to exp(-nu |z|^2).
"""
from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from tqdm import tqdm

from bergman_dirichlet.common import DiskSpaceParams, Divergent, DomainError, PlaneSpaceParams
from bergman_dirichlet.disk import kernel
from bergman_dirichlet.plane import kernel_plane
from bergman_dirichlet.special import (
    DEFAULT_MAX_TERMS,
    DEFAULT_TOLERANCE,
    hypergeometric_value,
)


class ConvergenceRecord:
    def __init__(
        self,
        radius: float,
        z: complex,
        w: complex,
        disk_kernel_value: complex,
        plane_kernel_value: complex,
    ):
        self.radius = radius
        self.z = z
        self.w = w
        self.disk_kernel_value = disk_kernel_value
        self.plane_kernel_value = plane_kernel_value

    @property
    def abs_error(self) -> float:
        return abs(self.disk_kernel_value - self.plane_kernel_value)

    def __repr__(self):
        return (
            f"ConvergenceRecord(R={self.radius}, z={self.z}, w={self.w}, "
            f"abs_error={self.abs_error:.3e})"
        )


class LimitRecord(NamedTuple):
    rho: float
    abs_error: float

    @property
    def rho_times_error(self) -> float:
        return self.rho * self.abs_error


class DensityRecord(NamedTuple):
    radius: float
    abs_error: float


def _check_radii(radii: Iterable[float], points: Sequence[complex]) -> list[float]:
    radii = sorted(float(r) for r in radii)
    if not radii:
        raise DomainError("at least one radius is needed")
    for radius in radii:
        for point in points:
            if not abs(point) < radius:
                raise DomainError(
                    f"the radius {radius} is too small for the point {point}"
                )
    return radii


def kernel_convergence_table(
    nu: float,
    m: int,
    z: complex,
    w: complex,
    radii: Iterable[float],
    tolerance: float = DEFAULT_TOLERANCE,
    max_terms: int = DEFAULT_MAX_TERMS,
    progress: bool = False,
) -> list[ConvergenceRecord]:
    """Disk kernel with (R, alpha = nu R^2, m) against the plane kernel with
    (nu, m) at (z, w), one record per radius, ascending in R."""
    radii = _check_radii(radii, [z, w])
    plane_value = kernel_plane(PlaneSpaceParams(nu=nu, m=m), z, w, tolerance, max_terms)
    records = []
    for radius in tqdm(radii, disable=not progress, desc="radii"):
        params = DiskSpaceParams(radius=radius, alpha=nu * radius**2, m=m)
        disk_value = kernel(params, z, w, tolerance, max_terms)
        records.append(ConvergenceRecord(radius, z, w, disk_value, plane_value))
    return records


def grid_points(bound: float, grid_size: int) -> list[complex]:
    """`grid_size` points spiralling out to modulus `bound`."""
    return [
        bound * (k + 1) / grid_size * complex(np.exp(2j * math.pi * k / grid_size))
        for k in range(grid_size)
    ]


def uniform_error_table(
    nu: float,
    m: int,
    radii: Iterable[float],
    bound: float = 2.0,
    grid_size: int = 5,
    tolerance: float = DEFAULT_TOLERANCE,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> list[tuple[float, float]]:
    """(R, max |K_disk - K_plane|) over a grid_size x grid_size grid of (z, w)
    in the bidisk |z|, |w| <= bound."""
    points = grid_points(bound, grid_size)
    radii = _check_radii(radii, points)
    worst = dict.fromkeys(radii, 0.0)
    for z in points:
        for w in points:
            for record in kernel_convergence_table(
                nu, m, z, w, radii, tolerance, max_terms
            ):
                worst[record.radius] = max(worst[record.radius], record.abs_error)
    return [(radius, worst[radius]) for radius in radii]


def hypergeometric_limit_check(
    m: int,
    xi: complex,
    rhos: Iterable[float],
    c: float = 2.0,
    tolerance: float = DEFAULT_TOLERANCE,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> list[LimitRecord]:
    """|3F2(1, 1, c + rho; m+1, m+1; xi / rho) - 2F2(1, 1; m+1, m+1; xi)| per rho,
    ascending in rho."""
    rhos = sorted(float(rho) for rho in rhos)
    for rho in rhos:
        if not rho > 0:
            raise DomainError(f"rho must be positive, got {rho}")
        if abs(xi / rho) >= 1:
            raise Divergent(f"|xi / rho| = {abs(xi / rho)} is not below 1")
    limit = hypergeometric_value([1, 1], [m + 1, m + 1], xi, tolerance, max_terms)
    records = []
    for rho in rhos:
        value = hypergeometric_value(
            [1, 1, c + rho], [m + 1, m + 1], xi / rho, tolerance, max_terms
        )
        records.append(LimitRecord(rho, abs(value - limit)))
    return records


def measure_density_convergence(
    nu: float, z: complex, radii: Iterable[float]
) -> list[DensityRecord]:
    """|(1 - |z/R|^2)^(nu R^2) - exp(-nu |z|^2)| per radius, ascending in R."""
    radii = _check_radii(radii, [z])
    limit = math.exp(-nu * abs(z) ** 2)
    records = []
    for radius in radii:
        density = math.exp(nu * radius**2 * math.log1p(-((abs(z) / radius) ** 2)))
        records.append(DensityRecord(radius, abs(density - limit)))
    return records
