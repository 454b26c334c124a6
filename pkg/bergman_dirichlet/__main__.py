import os
import sys
from contextlib import contextmanager
from typing import Optional

import numpy as np
import typer

import bergman_dirichlet
from bergman_dirichlet.common import (
    CoefficientSeries,
    Command,
    DiskSpaceParams,
    DomainError,
    OutputFormat,
    RunConfig,
    Space,
    SpaceParams,
    make_space_params,
    parse_complex,
    parse_complex_list,
    parse_float_list,
    read_complex_file,
)
from bergman_dirichlet.special import DEFAULT_MAX_TERMS, DEFAULT_TOLERANCE
from bergman_dirichlet.tables import Table, summary_lines, write_table
from bergman_dirichlet.verify import DEFAULT_SEED

BERGMAN_DIRICHLET_TOLERANCE = "BERGMAN_DIRICHLET_TOLERANCE"
BERGMAN_DIRICHLET_MAX_TERMS = "BERGMAN_DIRICHLET_MAX_TERMS"

EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2

app = typer.Typer()

SPACE_OPTION = typer.Option(
    "disk", "--space", "-s", help="The space to work in: 'disk' or 'plane'."
)
RADIUS_OPTION = typer.Option(
    None, "--R", "--radius", help="Radius R of the disk (disk space only)."
)
ALPHA_OPTION = typer.Option(
    None, "--alpha", help="Weight exponent alpha > -1 (disk space only)."
)
NU_OPTION = typer.Option(
    None, "--nu", help="Gaussian weight parameter nu > 0 (plane space only)."
)
M_OPTION = typer.Option(0, "--m", help="The Dirichlet order m >= 0.")
TOLERANCE_OPTION = typer.Option(
    None,
    "--tolerance",
    help=f"Relative tolerance of the series summation. Defaults to the environment "
    f"variable {BERGMAN_DIRICHLET_TOLERANCE}, then to {DEFAULT_TOLERANCE}.",
)
MAX_TERMS_OPTION = typer.Option(
    None,
    "--max-terms",
    help=f"Maximum number of series terms. Defaults to the environment "
    f"variable {BERGMAN_DIRICHLET_MAX_TERMS}, then to {DEFAULT_MAX_TERMS}.",
)
FORMAT_OPTION = typer.Option("csv", "--format", help="Output format: 'csv' or 'json'.")
FILE_OPTION = typer.Option(
    None,
    "--file",
    "-f",
    help="Where to write the table. If this is not provided, the table is written to stdout.",
)


@contextmanager
def exit_codes():
    """Turn library errors into a message on stderr and an exit code."""
    try:
        yield
    except ArithmeticError as e:
        print(f"Numerical failure: {e}", file=sys.stderr)
        raise typer.Exit(EXIT_NUMERICAL)
    except ValueError as e:
        print(f"Invalid input: {e}", file=sys.stderr)
        raise typer.Exit(EXIT_VALIDATION)


def resolve_tolerance(tolerance: Optional[float]) -> float:
    if tolerance is None:
        tolerance = float(os.environ.get(BERGMAN_DIRICHLET_TOLERANCE, DEFAULT_TOLERANCE))
    return tolerance


def resolve_max_terms(max_terms: Optional[int]) -> int:
    if max_terms is None:
        max_terms = int(os.environ.get(BERGMAN_DIRICHLET_MAX_TERMS, DEFAULT_MAX_TERMS))
    if max_terms < 1:
        raise DomainError(f"max_terms must be positive, got {max_terms}")
    return max_terms


def make_config(
    command: Command,
    tolerance: Optional[float],
    output_format: str,
    file: Optional[str],
    params: Optional[SpaceParams] = None,
) -> RunConfig:
    space = None
    if params is not None:
        space = Space.DISK if isinstance(params, DiskSpaceParams) else Space.PLANE
    return RunConfig(
        command=command,
        space=space,
        params=params,
        tolerance=resolve_tolerance(tolerance),
        output_format=OutputFormat(output_format),
        output_path=file,
    )


def emit(config: RunConfig, rows: list, summary: Optional[dict] = None) -> None:
    table = Table(
        command=config.command.value,
        params=config.params_as_dict(),
        rows=rows,
        summary=summary or {},
    )
    write_table(table, config.output_format, config.output_path)
    if config.output_format == OutputFormat.CSV:
        for line in summary_lines(table):
            print(line, file=sys.stderr)


def space_kernel(params: SpaceParams):
    if isinstance(params, DiskSpaceParams):
        return bergman_dirichlet.kernel
    return bergman_dirichlet.kernel_plane


def space_log_norms(params: SpaceParams, degree: int) -> np.ndarray:
    if isinstance(params, DiskSpaceParams):
        return bergman_dirichlet.log_monomial_norms_sq(params, degree)
    return bergman_dirichlet.log_monomial_norms_sq_plane(params, degree)


def space_norm_sq(params: SpaceParams, f: CoefficientSeries) -> float:
    if isinstance(params, DiskSpaceParams):
        return bergman_dirichlet.norm_sq(params, f)
    return bergman_dirichlet.norm_sq_plane(params, f)


def space_norm_terms(params: SpaceParams, f: CoefficientSeries) -> np.ndarray:
    if isinstance(params, DiskSpaceParams):
        return bergman_dirichlet.norm_terms(params, f)
    return bergman_dirichlet.norm_terms_plane(params, f)


def space_contains(params: SpaceParams, f: CoefficientSeries) -> bool:
    if isinstance(params, DiskSpaceParams):
        return bergman_dirichlet.contains(params, f)
    return bergman_dirichlet.contains_plane(params, f)


def read_complex_values(inline: Optional[str], path: Optional[str], what: str) -> list:
    if inline is not None and path is not None:
        raise DomainError(f"give the {what} either inline or as a file, not both")
    if path is not None:
        values = read_complex_file(path)
    elif inline is not None:
        values = parse_complex_list(inline)
    else:
        raise DomainError(f"no {what} given")
    if not values:
        raise DomainError(f"the list of {what} is empty")
    return values


@app.command()
def kernel(
    z: str = typer.Option(..., "--z", help="The point z, as 're,im'."),
    w: str = typer.Option(..., "--w", help="The point w, as 're,im'."),
    space: str = SPACE_OPTION,
    radius: Optional[float] = RADIUS_OPTION,
    alpha: Optional[float] = ALPHA_OPTION,
    m: int = M_OPTION,
    nu: Optional[float] = NU_OPTION,
    force_series: bool = typer.Option(
        False,
        "--force-series",
        help="Always sum the hypergeometric series, even when a closed form exists.",
    ),
    tolerance: Optional[float] = TOLERANCE_OPTION,
    max_terms: Optional[int] = MAX_TERMS_OPTION,
    output_format: str = FORMAT_OPTION,
    file: Optional[str] = FILE_OPTION,
):
    """Evaluate the reproducing kernel K(z, w).

    Use --space disk with --R, --alpha and --m, or --space plane with --nu and --m.
    """
    with exit_codes():
        params = make_space_params(Space(space), radius, alpha, m, nu)
        config = make_config(Command.KERNEL, tolerance, output_format, file, params)
        z_value, w_value = parse_complex(z), parse_complex(w)
        value = space_kernel(params)(
            params,
            z_value,
            w_value,
            config.tolerance,
            resolve_max_terms(max_terms),
            force_series=force_series,
        )
        row = {
            "z_re": z_value.real,
            "z_im": z_value.imag,
            "w_re": w_value.real,
            "w_im": w_value.imag,
            "kernel_re": value.real,
            "kernel_im": value.imag,
        }
        emit(config, [row])


@app.command()
def norm(
    coefficients: Optional[str] = typer.Option(
        None,
        "--coefficients",
        "-c",
        help="Taylor coefficients a_0, a_1, ... as 're,im;re,im;...'.",
    ),
    coefficients_file: Optional[str] = typer.Option(
        None,
        "--coefficients-file",
        help="A file with one coefficient per line as 're im', the line index being the "
        "degree. Lines starting with # are ignored.",
    ),
    space: str = SPACE_OPTION,
    radius: Optional[float] = RADIUS_OPTION,
    alpha: Optional[float] = ALPHA_OPTION,
    m: int = M_OPTION,
    nu: Optional[float] = NU_OPTION,
    output_format: str = FORMAT_OPTION,
    file: Optional[str] = FILE_OPTION,
):
    """Compute the squared norm of a polynomial and the contribution of each degree.

    The total (norm_sq) is printed on stderr in csv mode and stored in the
    "summary" object in json mode.
    """
    with exit_codes():
        params = make_space_params(Space(space), radius, alpha, m, nu)
        config = make_config(Command.NORM, None, output_format, file, params)
        f = CoefficientSeries(
            read_complex_values(coefficients, coefficients_file, "coefficients")
        )
        logs = space_log_norms(params, f.degree)
        contributions = space_norm_terms(params, f)
        rows = [
            {
                "n": n,
                "a_re": float(a.real),
                "a_im": float(a.imag),
                "log_monomial_norm_sq": float(logs[n]),
                "contribution": float(contributions[n]),
            }
            for n, a in enumerate(f.coefficients)
        ]
        summary = {
            "norm_sq": space_norm_sq(params, f),
            "member": bool(space_contains(params, f)),
        }
        emit(config, rows, summary)


@app.command()
def gram(
    points: Optional[str] = typer.Option(
        None, "--points", "-p", help="The points as 're,im;re,im;...'."
    ),
    points_file: Optional[str] = typer.Option(
        None,
        "--points-file",
        help="A file with one point per line as 're im'. Lines starting with # are ignored.",
    ),
    space: str = SPACE_OPTION,
    radius: Optional[float] = RADIUS_OPTION,
    alpha: Optional[float] = ALPHA_OPTION,
    m: int = M_OPTION,
    nu: Optional[float] = NU_OPTION,
    tolerance: Optional[float] = TOLERANCE_OPTION,
    max_terms: Optional[int] = MAX_TERMS_OPTION,
    output_format: str = FORMAT_OPTION,
    file: Optional[str] = FILE_OPTION,
):
    """Compute the Gram matrix [K(z_i, z_j)] of a point set and its smallest eigenvalue.

    One row is written per matrix entry (i, j).
    """
    with exit_codes():
        params = make_space_params(Space(space), radius, alpha, m, nu)
        config = make_config(Command.GRAM, tolerance, output_format, file, params)
        point_list = read_complex_values(points, points_file, "points")
        kernel_function = space_kernel(params)
        max_terms = resolve_max_terms(max_terms)
        matrix = bergman_dirichlet.gram_matrix(
            lambda z, w: kernel_function(params, z, w, config.tolerance, max_terms),
            point_list,
        )
        rows = [
            {"i": i, "j": j, "re": float(matrix[i, j].real), "im": float(matrix[i, j].imag)}
            for i in range(len(point_list))
            for j in range(len(point_list))
        ]
        summary = {
            "min_eigenvalue": bergman_dirichlet.min_eigenvalue(matrix),
            "trace": float(np.trace(matrix).real),
        }
        emit(config, rows, summary)


@app.command()
def converge(
    nu: float = typer.Option(..., "--nu", help="Gaussian weight parameter nu > 0."),
    radii: str = typer.Option(
        "5,10,20,40", "--radii", help="The radii R, as a commas delimited list."
    ),
    m: int = M_OPTION,
    z: str = typer.Option("1,0", "--z", help="The point z, as 're,im'."),
    w: str = typer.Option("1,0", "--w", help="The point w, as 're,im'."),
    uniform: bool = typer.Option(
        False,
        "--uniform",
        help="Instead of the single pair (z, w), report the largest error over a "
        "grid of pairs in the bidisk |z|, |w| <= --bound.",
    ),
    bound: float = typer.Option(2.0, "--bound", help="Modulus bound of the --uniform grid."),
    grid_size: int = typer.Option(
        5, "--grid-size", help="Number of points per axis of the --uniform grid."
    ),
    tolerance: Optional[float] = TOLERANCE_OPTION,
    max_terms: Optional[int] = MAX_TERMS_OPTION,
    output_format: str = FORMAT_OPTION,
    file: Optional[str] = FILE_OPTION,
):
    """Compare the disk kernel with alpha = nu R^2 to the plane kernel as R grows.

    The rows are sorted by R.
    """
    with exit_codes():
        params = bergman_dirichlet.PlaneSpaceParams(nu=nu, m=m)
        config = make_config(Command.CONVERGE, tolerance, output_format, file, params)
        radius_list = parse_float_list(radii)
        max_terms = resolve_max_terms(max_terms)
        if uniform:
            errors = bergman_dirichlet.uniform_error_table(
                nu, m, radius_list, bound, grid_size, config.tolerance, max_terms
            )
            rows = [{"R": radius, "max_abs_error": error} for radius, error in errors]
            emit(config, rows)
            return
        records = bergman_dirichlet.kernel_convergence_table(
            nu,
            m,
            parse_complex(z),
            parse_complex(w),
            radius_list,
            config.tolerance,
            max_terms,
            progress=True,
        )
        rows = [
            {
                "R": record.radius,
                "re(K_disk)": record.disk_kernel_value.real,
                "im(K_disk)": record.disk_kernel_value.imag,
                "re(K_plane)": record.plane_kernel_value.real,
                "im(K_plane)": record.plane_kernel_value.imag,
                "abs_error": record.abs_error,
            }
            for record in records
        ]
        emit(config, rows)


@app.command("limit-check")
def limit_check(
    xi: str = typer.Option("1,0", "--xi", help="The argument xi, as 're,im'."),
    rhos: str = typer.Option(
        "100,1000,10000", "--rhos", help="The values of rho, as a commas delimited list."
    ),
    m: int = M_OPTION,
    c: float = typer.Option(2.0, "--c", help="The shift c in the numerator parameter c + rho."),
    tolerance: Optional[float] = TOLERANCE_OPTION,
    max_terms: Optional[int] = MAX_TERMS_OPTION,
    output_format: str = FORMAT_OPTION,
    file: Optional[str] = FILE_OPTION,
):
    """Measure |3F2(1, 1, c + rho; m+1, m+1; xi / rho) - 2F2(1, 1; m+1, m+1; xi)| per rho."""
    with exit_codes():
        config = make_config(Command.LIMIT_CHECK, tolerance, output_format, file)
        records = bergman_dirichlet.hypergeometric_limit_check(
            m,
            parse_complex(xi),
            parse_float_list(rhos),
            c,
            config.tolerance,
            resolve_max_terms(max_terms),
        )
        rows = [
            {
                "rho": record.rho,
                "abs_error": record.abs_error,
                "rho_times_error": record.rho_times_error,
            }
            for record in records
        ]
        emit(config, rows)


@app.command()
def verify(
    seed: int = typer.Option(
        DEFAULT_SEED, "--seed", help="Seed of the random polynomials and points."
    ),
    tolerance: Optional[float] = TOLERANCE_OPTION,
    output_format: str = FORMAT_OPTION,
    file: Optional[str] = FILE_OPTION,
):
    """Run the invariant suite and report the measured error of every check.

    The exit code is 0 if every check passes, 2 otherwise.
    """
    with exit_codes():
        config = make_config(Command.VERIFY, tolerance, output_format, file)
        results = []
        for result in bergman_dirichlet.iter_invariant_suite(
            seed, config.tolerance, progress=True
        ):
            status = "PASS" if result.passed else "FAIL"
            print(
                f"{status} {result.name}: {result.error:.3e} (threshold {result.threshold:.1e})",
                file=sys.stderr,
            )
            results.append(result)
        rows = [
            {
                "check": result.name,
                "error": result.error,
                "threshold": result.threshold,
                "passed": result.passed,
            }
            for result in results
        ]
        failed = [result.name for result in results if not result.passed]
        emit(config, rows, {"failed": len(failed)})
    if failed:
        print(f"{len(failed)} check(s) failed: {', '.join(failed)}", file=sys.stderr)
        raise typer.Exit(EXIT_NUMERICAL)


def main():
    app()


if __name__ == "__main__":
    main()
