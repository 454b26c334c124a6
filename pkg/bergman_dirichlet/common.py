from __future__ import annotations

from enum import Enum
from importlib.metadata import version
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial
from pydantic import BaseModel, Field
from scipy.special import logsumexp

PYDANTIC_V2 = version("pydantic").startswith("2.")

PROJECT_ROOT = Path(__file__).parents[1]

DEGREE_CAP = 512
BOUNDARY_EPSILON = 1e-6
ENTIRE = "entire"


class DomainError(ValueError):
    pass


class Divergent(ArithmeticError):
    pass


class NotConverged(ArithmeticError):
    pass


class NormOverflow(OverflowError):
    pass


class DiskSpaceParams(BaseModel):
    radius: float = Field(..., gt=0)
    alpha: float = Field(..., gt=-1)
    m: int = Field(..., ge=0)


class PlaneSpaceParams(BaseModel):
    nu: float = Field(..., gt=0)
    m: int = Field(..., ge=0)


SpaceParams = Union[DiskSpaceParams, PlaneSpaceParams]


def model_to_dict(model: BaseModel) -> dict:
    if PYDANTIC_V2:
        return model.model_dump()
    return model.dict()


class Command(Enum):
    KERNEL = "kernel"
    NORM = "norm"
    GRAM = "gram"
    CONVERGE = "converge"
    LIMIT_CHECK = "limit-check"
    VERIFY = "verify"


class Space(Enum):
    DISK = "disk"
    PLANE = "plane"


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    command: Command
    space: Optional[Space] = None
    params: Optional[Union[DiskSpaceParams, PlaneSpaceParams]] = None
    tolerance: float = Field(..., gt=0, lt=1)
    output_format: OutputFormat = OutputFormat.CSV
    output_path: Optional[str] = None

    def params_as_dict(self) -> dict:
        result = {"space": None if self.space is None else self.space.value}
        if self.params is not None:
            result.update(model_to_dict(self.params))
        result["tolerance"] = self.tolerance
        return result


def make_space_params(
    space: Space,
    radius: Optional[float] = None,
    alpha: Optional[float] = None,
    m: int = 0,
    nu: Optional[float] = None,
) -> SpaceParams:
    if space == Space.DISK:
        if radius is None or alpha is None:
            raise DomainError("the disk space needs --R and --alpha")
        return DiskSpaceParams(radius=radius, alpha=alpha, m=m)
    if nu is None:
        raise DomainError("the plane space needs --nu")
    return PlaneSpaceParams(nu=nu, m=m)


class CoefficientSeries:
    """Taylor coefficients a_0 ... a_N of a truncated analytic function.

    `declared_domain` is the radius of the disk the series is known to converge
    on, or `ENTIRE`.
    """

    def __init__(
        self,
        coefficients: Iterable[complex],
        declared_domain: Union[float, str] = ENTIRE,
        degree_cap: int = DEGREE_CAP,
    ):
        self.coefficients = np.asarray(list(coefficients), dtype=complex)
        if self.coefficients.ndim != 1:
            raise DomainError("coefficients must be a flat list of complex numbers")
        if len(self.coefficients) > degree_cap + 1:
            raise DomainError(
                f"degree {len(self.coefficients) - 1} is above the degree cap "
                f"({degree_cap})"
            )
        if declared_domain != ENTIRE and not float(declared_domain) > 0:
            raise DomainError(f"invalid declared domain {declared_domain!r}")
        self.declared_domain = declared_domain

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def __repr__(self):
        return f"CoefficientSeries({self.coefficients.tolist()}, {self.declared_domain})"

    def __eq__(self, other: CoefficientSeries):
        n = max(len(self), len(other))
        return (
            np.array_equal(padded(self, n), padded(other, n))
            and self.declared_domain == other.declared_domain
        )

    def __call__(self, z):
        return evaluate(self, z)


class SplitSeries:
    def __init__(self, head: CoefficientSeries, tail: CoefficientSeries):
        self.head = head
        self.tail = tail

    def __repr__(self):
        return f"SplitSeries(head={self.head!r}, tail={self.tail!r})"


def padded(f: CoefficientSeries, length: int) -> np.ndarray:
    result = np.zeros(length, dtype=complex)
    n = min(length, len(f))
    result[:n] = f.coefficients[:n]
    return result


def evaluate(f: CoefficientSeries, z):
    if len(f) == 0:
        return np.zeros_like(np.asarray(z, dtype=complex))
    return polynomial.polyval(z, f.coefficients)


def split(f: CoefficientSeries, m: int) -> SplitSeries:
    """f = f_{1,m} + f_{2,m}, degrees below m in the head, the rest in the tail.

    For m = 0 the head is the empty series.
    """
    if m < 0:
        raise DomainError(f"order m must be nonnegative, got {m}")
    head = CoefficientSeries(f.coefficients[:m], f.declared_domain)
    tail_coefficients = f.coefficients.copy()
    tail_coefficients[: min(m, len(f))] = 0
    if m >= len(f):
        tail_coefficients = tail_coefficients[:0]
    tail = CoefficientSeries(tail_coefficients, f.declared_domain)
    return SplitSeries(head, tail)


def derivative(f: CoefficientSeries, k: int) -> CoefficientSeries:
    if k < 0:
        raise DomainError(f"derivative order must be nonnegative, got {k}")
    if k == 0:
        return CoefficientSeries(f.coefficients, f.declared_domain)
    if k >= len(f):
        return CoefficientSeries([], f.declared_domain)
    n = np.arange(k, len(f))
    falling = np.ones(len(n))
    for j in range(k):
        falling *= n - j
    return CoefficientSeries(falling * f.coefficients[k:], f.declared_domain)


def weighted_inner_product(
    log_norms: np.ndarray, f: CoefficientSeries, g: CoefficientSeries
) -> complex:
    """sum a_n conj(b_n) exp(log_norms[n]) over the common degree range.

    Each term is formed as exp(log|a_n| + log|b_n| + log_norms[n]) so tiny
    coefficients against huge norms never pass through an overflow.
    """
    n = min(len(f), len(g), len(log_norms))
    a = f.coefficients[:n]
    b = np.conj(g.coefficients[:n])
    nonzero = (a != 0) & (b != 0)
    if not nonzero.any():
        return 0j
    a, b, logs = a[nonzero], b[nonzero], log_norms[:n][nonzero]
    log_magnitude = np.log(np.abs(a)) + np.log(np.abs(b)) + logs
    if log_magnitude.max() > np.log(np.finfo(float).max):
        raise NormOverflow(
            "inner product term exceeds the double precision range, "
            "use the log-scale norms instead"
        )
    phase = (a / np.abs(a)) * (b / np.abs(b))
    terms = np.exp(log_magnitude) * phase
    return complex(np.sum(terms))


def log_norm_sq(log_norms: np.ndarray, f: CoefficientSeries) -> float:
    """log of sum |a_n|^2 exp(log_norms[n]), -inf for the zero function."""
    n = min(len(f), len(log_norms))
    magnitudes = np.abs(f.coefficients[:n])
    nonzero = magnitudes != 0
    if not nonzero.any():
        return -np.inf
    return float(logsumexp(2 * np.log(magnitudes[nonzero]) + log_norms[:n][nonzero]))


def checked_exp(log_value: float, what: str) -> float:
    if log_value > np.log(np.finfo(float).max):
        raise NormOverflow(
            f"{what} is about exp({log_value:.1f}), beyond the double precision range"
        )
    return float(np.exp(log_value))


def gram_matrix(
    kernel: Callable[[complex, complex], complex], points: Sequence[complex]
) -> np.ndarray:
    """[kernel(z_i, z_j)] over the point set. Only the upper triangle is
    evaluated, the lower one is filled by Hermitian symmetry."""
    size = len(points)
    matrix = np.zeros((size, size), dtype=complex)
    for i in range(size):
        for j in range(i, size):
            matrix[i, j] = kernel(points[i], points[j])
            matrix[j, i] = np.conj(matrix[i, j])
    return matrix


def min_eigenvalue(matrix: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(matrix).min())


def parse_complex(text: str) -> complex:
    """Parse "re,im" (or a bare real "re")."""
    parts = text.strip().split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise DomainError(f"expected a complex number as 're,im', got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def parse_complex_list(text: str) -> list[complex]:
    return [parse_complex(item) for item in text.strip().split(";") if item.strip()]


def parse_float_list(text: str) -> list[float]:
    return [float(item) for item in text.strip().split(",") if item.strip()]


def read_complex_file(path: Union[str, Path]) -> list[complex]:
    """One complex number per line as "re im" ("re" alone is accepted),
    `#` starts a comment."""
    values = []
    for line in Path(path).read_text(encoding="utf8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) > 2:
            raise DomainError(f"expected 're im' in {path}, got {line!r}")
        real = float(fields[0])
        imag = float(fields[1]) if len(fields) == 2 else 0.0
        values.append(complex(real, imag))
    return values


def domain_covers(declared_domain: Union[float, str], radius: Optional[float]) -> bool:
    """Whether a series declared on `declared_domain` converges on the disk of
    radius `radius` (`None` meaning the whole plane)."""
    if declared_domain == ENTIRE:
        return True
    if radius is None:
        return False
    return float(declared_domain) >= radius
