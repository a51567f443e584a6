import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from normpar import DEFAULT_TOL, Field, FieldMismatch, Tolerance, approx_eq, as_matrix, as_vector, is_nonneg_real, rank
from normpar.corpus import random_genperm

from .conftest import lattice_matrices

TIGHT = Tolerance.uniform(1e-9)


def test_approx_eq_examples():
    assert approx_eq(1.0, 1.0, TIGHT)
    assert approx_eq(1.0, 1.0 + 1e-12, TIGHT)
    assert not approx_eq(1.0, 1.01, TIGHT)


def test_approx_eq_uses_relative_scale():
    assert approx_eq(1e6, 1e6 + 1e-4, TIGHT)
    assert not approx_eq(1e6, 1e6 + 1e-2, TIGHT)
    # below one the absolute floor applies
    assert approx_eq(1e-12, 0.0, TIGHT)


def test_approx_eq_field_mismatch():
    with pytest.raises(FieldMismatch):
        approx_eq(1.0, 1.0 + 0j)


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False), st.complex_numbers(max_magnitude=1e6, allow_nan=False))
def test_approx_eq_reflexive_and_symmetric(a, b):
    assert approx_eq(a, a)
    assert approx_eq(a, b) == approx_eq(b, a)


def test_is_nonneg_real_examples():
    assert is_nonneg_real(2.0)
    assert not is_nonneg_real(-1.0)
    assert is_nonneg_real(0.0)
    assert is_nonneg_real(3 + 1e-12j)
    assert not is_nonneg_real(1j)


def test_rank_examples():
    assert rank(np.eye(3)) == 3
    assert rank(np.outer([3.0, 4.0], [1.0, 2.0])) == 1
    assert rank(np.zeros((3, 3))) == 0
    assert rank(np.array([[1, 1j], [1j, -1]])) == 1


def test_rank_threshold_is_relative():
    T = np.diag([1.0, 1e-12])
    assert rank(T, TIGHT) == 1
    assert rank(1e8 * T, TIGHT) == 1
    assert rank(np.diag([1.0, 1e-6]), TIGHT) == 2


@given(lattice_matrices(), st.integers(0, 2**32 - 1))
def test_rank_invariant_under_permutations(T, seed):
    rng = np.random.default_rng(seed)
    n = T.shape[0]
    P, Q = random_genperm(rng, n, Field.REAL), random_genperm(rng, n, Field.REAL)
    assert rank(P @ T @ Q) == rank(T)


@given(lattice_matrices())
def test_rank_matches_numpy_on_lattice(T):
    assert rank(T) == np.linalg.matrix_rank(T)


def test_tolerance_bounds():
    with pytest.raises(ValueError):
        Tolerance.uniform(0.0)
    with pytest.raises(ValueError):
        Tolerance.uniform(1e-3)
    assert DEFAULT_TOL.eps_eq == 1e-9


def test_field_tagging():
    assert as_vector([1, 2]).dtype == np.float64
    assert as_vector([1, 2], Field.COMPLEX).dtype == np.complex128
    with pytest.raises(FieldMismatch):
        as_vector([1j, 2], Field.REAL)
    with pytest.raises(ValueError):
        as_matrix([[1, 2, 3], [4, 5, 6]])
