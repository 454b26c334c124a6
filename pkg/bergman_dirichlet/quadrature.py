"""Independent numerical integration against (1 - |z/R|^2)^alpha on the disk
and exp(-nu |z|^2) on the plane.

In polar coordinates with t = |z/R|^2 (disk) or t = nu |z|^2 (plane) both
integrals split into a radial integral against (1 - t)^alpha on (0, 1) or
exp(-t) on (0, inf), done with a Gauss rule, and an angular integral done
with the equispaced trapezoidal rule.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.linalg import eigh_tridiagonal

from bergman_dirichlet.common import (
    CoefficientSeries,
    DiskSpaceParams,
    DomainError,
    PlaneSpaceParams,
    derivative,
    evaluate,
    split,
)

DISK = "disk"
PLANE = "plane"


class QuadratureRule:
    def __init__(
        self,
        radial_nodes: np.ndarray,
        radial_weights: np.ndarray,
        angular_count: int,
        domain: str,
        scale: float,
    ):
        """`scale` is R for a disk rule and nu for a plane rule."""
        if angular_count < 1:
            raise DomainError(f"angular_count must be positive, got {angular_count}")
        if np.any(radial_weights <= 0):
            raise DomainError("quadrature weights must be positive")
        self.radial_nodes = radial_nodes
        self.radial_weights = radial_weights
        self.angular_count = angular_count
        self.domain = domain
        self.scale = scale

    def __repr__(self):
        return (
            f"QuadratureRule({self.domain}, scale={self.scale}, "
            f"radial_points={len(self.radial_nodes)}, angular_count={self.angular_count})"
        )

    def points_and_weights(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened complex nodes and the matching area weights."""
        angles = 2 * math.pi * np.arange(self.angular_count) / self.angular_count
        if self.domain == DISK:
            moduli = self.scale * np.sqrt(self.radial_nodes)
            # dlambda = (R^2 / 2) dt dtheta
            radial = self.radial_weights * math.pi * self.scale**2 / self.angular_count
        else:
            moduli = np.sqrt(self.radial_nodes / self.scale)
            # dlambda = dt dtheta / (2 nu)
            radial = self.radial_weights * math.pi / (self.scale * self.angular_count)
        points = np.outer(moduli, np.exp(1j * angles)).ravel()
        weights = np.repeat(radial, self.angular_count)
        return points, weights


def gauss_from_recurrence(
    diagonal: np.ndarray, off_diagonal: np.ndarray, total_mass: float
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights from the Jacobi matrix of the monic three-term
    recurrence: eigenvalues are the nodes, weights are total_mass times the
    squared first components of the normalized eigenvectors."""
    nodes, vectors = eigh_tridiagonal(diagonal, off_diagonal)
    weights = total_mass * vectors[0, :] ** 2
    order = np.argsort(nodes)
    return nodes[order], weights[order]


def shifted_jacobi_rule(points: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rule on (0, 1) for the weight (1 - t)^alpha, exact up to degree
    2 * points - 1."""
    if points < 1:
        raise DomainError(f"radial_points must be positive, got {points}")
    if not alpha > -1:
        raise DomainError(f"the weight (1 - t)^alpha needs alpha > -1, got {alpha}")
    # Jacobi recurrence on [-1, 1] for (1 - x)^a (1 + x)^b with b = 0
    a, b = alpha, 0.0
    k = np.arange(points, dtype=float)
    s = 2 * k + a + b
    diagonal = np.empty(points)
    diagonal[0] = (b - a) / (a + b + 2)
    diagonal[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2))
    k = np.arange(1, points, dtype=float)
    s = 2 * k + a + b
    off_sq = 4 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1))
    if points > 1:
        off_sq[0] = 4 * (a + 1) * (b + 1) / ((a + b + 3) * (a + b + 2) ** 2)
    # t = (x + 1) / 2
    return gauss_from_recurrence(
        (diagonal + 1) / 2, np.sqrt(off_sq) / 2, 1 / (alpha + 1)
    )


def laguerre_rule(points: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rule on (0, inf) for the weight exp(-t), exact up to degree
    2 * points - 1."""
    if points < 1:
        raise DomainError(f"radial_points must be positive, got {points}")
    k = np.arange(points, dtype=float)
    return gauss_from_recurrence(2 * k + 1, k[1:], 1.0)


def build_disk_rule(
    radius: float, alpha: float, radial_points: int, angular_count: int
) -> QuadratureRule:
    if not radius > 0:
        raise DomainError(f"the radius must be positive, got {radius}")
    nodes, weights = shifted_jacobi_rule(radial_points, alpha)
    return QuadratureRule(nodes, weights, angular_count, DISK, radius)


def build_plane_rule(
    nu: float, radial_points: int, angular_count: int
) -> QuadratureRule:
    if not nu > 0:
        raise DomainError(f"nu must be positive, got {nu}")
    nodes, weights = laguerre_rule(radial_points)
    return QuadratureRule(nodes, weights, angular_count, PLANE, nu)


def _sizes_for_degree(degree: int) -> tuple[int, int]:
    # |z^n|^2 is t^n: exact once 2 * points - 1 >= degree, points = degree + 1
    # leaves margin. Angular frequencies stay below degree + 1.
    return degree + 1, 4 * degree + 1


def disk_rule_for_degree(params: DiskSpaceParams, degree: int) -> QuadratureRule:
    """A disk rule integrating f conj(g) exactly for polynomials of degree <= `degree`."""
    radial_points, angular_count = _sizes_for_degree(degree)
    return build_disk_rule(params.radius, params.alpha, radial_points, angular_count)


def plane_rule_for_degree(params: PlaneSpaceParams, degree: int) -> QuadratureRule:
    radial_points, angular_count = _sizes_for_degree(degree)
    return build_plane_rule(params.nu, radial_points, angular_count)


def oracle_inner_product(
    rule: QuadratureRule, f: CoefficientSeries, g: CoefficientSeries
) -> complex:
    """The integral of f conj(g) against the rule's weight."""
    points, weights = rule.points_and_weights()
    values = evaluate(f, points) * np.conj(evaluate(g, points))
    return complex(np.sum(values * weights))


def oracle_modified_inner_product(
    rule: QuadratureRule, m: int, f: CoefficientSeries, g: CoefficientSeries
) -> complex:
    """<f_{1,m}, g_{1,m}> + <f_{2,m}^(m), g_{2,m}^(m)>, both by quadrature."""
    f_split, g_split = split(f, m), split(g, m)
    heads = oracle_inner_product(rule, f_split.head, g_split.head)
    tails = oracle_inner_product(
        rule, derivative(f_split.tail, m), derivative(g_split.tail, m)
    )
    return heads + tails
