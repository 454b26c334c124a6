import numpy as np
import pytest

from bergman_dirichlet.common import CoefficientSeries
from bergman_dirichlet.verify import (
    CHECKS,
    DEFAULT_SEED,
    ROOT_FLOOR,
    CheckResult,
    _root_floor,
    check_reproducing_identity,
    iter_invariant_suite,
    relative_error,
    run_invariant_suite,
)


def test_check_names_are_unique():
    names = [name for name, _, _ in CHECKS]
    assert len(names) == len(set(names))


def test_relative_error():
    assert relative_error(1.5, 1.0) == 0.5
    assert relative_error(1e-20, 0, scale=1.0) == 1e-20
    assert relative_error(0, 0) == 0


@pytest.mark.parametrize("seed", [DEFAULT_SEED, 7])
def test_the_invariant_suite_passes(seed):
    results = run_invariant_suite(seed)
    assert [result.name for result in results] == [name for name, _, _ in CHECKS]
    failed = [result for result in results if not result.passed]
    assert failed == []
    for result in results:
        assert 0 <= result.error < result.threshold


def test_the_suite_is_lazy():
    first = next(iter_invariant_suite())
    assert isinstance(first, CheckResult)
    assert first.name == CHECKS[0][0]


def test_root_floor_is_a_small_fraction_of_the_moduli():
    f = CoefficientSeries([1, -2, 3j])
    # 1 + 2 * 2 + 3 * 4
    assert _root_floor(f, 2j) == pytest.approx(17 * ROOT_FLOOR, rel=1e-15)


@pytest.mark.parametrize("seed", [DEFAULT_SEED, 3])
def test_reproducing_identity_is_relative_to_the_value(seed):
    assert check_reproducing_identity(np.random.default_rng(seed), 1e-14) < 1e-10
