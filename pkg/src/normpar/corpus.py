"""Seeded generators for the matrix families used in tests and campaigns."""
from __future__ import annotations

import numpy as np

from .classify import c_matrix
from .numeric import Field

FAMILIES = ("identity", "monomial", "genperm", "rankone", "c2", "dense", "rowmonomial", "injected")


def _mags(rng, size, lo=0.1, hi=10.0):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size=size))


def _phases(rng, size, field):
    if field is Field.REAL:
        return rng.choice([-1.0, 1.0], size=size)
    return np.exp(1j * rng.uniform(0, 2 * np.pi, size=size))


def random_genperm(rng, n, field):
    Q = np.zeros((n, n), dtype=field.dtype)
    Q[np.arange(n), rng.permutation(n)] = _phases(rng, n, field)
    return Q


def random_monomial(rng, n, field):
    return random_genperm(rng, n, field) * _mags(rng, (n, 1))


def random_row_monomial(rng, n, field, zero_rate=0.2):
    T = np.zeros((n, n), dtype=field.dtype)
    cols = rng.integers(0, n, size=n)
    vals = _mags(rng, n) * _phases(rng, n, field)
    keep = rng.random(n) >= zero_rate
    T[np.arange(n), cols] = np.where(keep, vals, 0)
    return T


def random_vector(rng, n, field):
    return (_mags(rng, n) * _phases(rng, n, field)).astype(field.dtype)


def random_beta(rng, field, lo=0.05, hi=0.95):
    r = rng.uniform(lo, hi)
    if field is Field.REAL:
        return float(r * rng.choice([-1.0, 1.0]))
    return complex(r * np.exp(1j * rng.uniform(0, 2 * np.pi)))


def random_c2(rng, field, beta=None):
    """``gamma * C(beta) * Q`` with a random 2x2 generalized permutation ``Q``."""
    if beta is None:
        beta = random_beta(rng, field)
    gamma = float(_mags(rng, 1)[0])
    Q = random_genperm(rng, 2, field)
    return (gamma * c_matrix(beta) @ Q).astype(field.dtype)


def generate(family: str, n: int, field: Field, seed: int = 0) -> np.ndarray:
    """Deterministic matrix from ``family`` for the given ``(n, field, seed)``.

    ``injected`` is a row-monomial matrix with one row given a second nonzero
    entry, the simplest l1 non-preserver.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng([seed & ((1 << 64) - 1), FAMILIES.index(family) if family in FAMILIES else 99])
    if family == "identity":
        return np.eye(n, dtype=field.dtype)
    if family == "monomial":
        return random_monomial(rng, n, field)
    if family == "genperm":
        return float(_mags(rng, 1)[0]) * random_genperm(rng, n, field)
    if family == "rankone":
        return np.outer(random_vector(rng, n, field), random_vector(rng, n, field))
    if family == "c2":
        if n != 2:
            raise ValueError("the c2 family needs n = 2")
        return random_c2(rng, field)
    if family == "dense":
        T = rng.standard_normal((n, n))
        if field is Field.COMPLEX:
            T = T + 1j * rng.standard_normal((n, n))
        return T.astype(field.dtype)
    if family == "rowmonomial":
        return random_row_monomial(rng, n, field)
    if family == "injected":
        if n < 2:
            raise ValueError("the injected family needs n >= 2")
        T = random_row_monomial(rng, n, field, zero_rate=0.0)
        i = int(rng.integers(0, n))
        j = int(np.flatnonzero(T[i])[0])
        k = int(rng.choice([c for c in range(n) if c != j]))
        T[i, k] = _mags(rng, 1)[0] * _phases(rng, 1, field)[0]
        return T
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


DOMINANT_KINDS = ("scalar", "hermitian2", "diag_perturbed", "offdiag_hermitian", "non_hermitian2",
                  "unequal_hermitian2", "random_row", "random_col")


def dominant_matrix(kind: str, n: int, field: Field, rng) -> np.ndarray:
    """A matrix with positive diagonal dominating every row or every column.

    ``scalar`` and (for n = 2) ``hermitian2`` satisfy the equal-diagonal
    Hermitian characterisation; the remaining kinds are near misses whose
    perturbation is log-uniform between 1e-3 and 0.5 of the diagonal.
    """
    a = float(_mags(rng, 1)[0])
    eps = float(np.exp(rng.uniform(np.log(1e-3), np.log(0.5))))

    def offdiag(size=None):
        return rng.uniform(0.05, 0.9, size=size) * _phases(rng, size, field)

    A = a * np.eye(n, dtype=field.dtype)
    if kind == "scalar":
        return A
    if kind == "hermitian2":
        if n != 2:
            raise ValueError("hermitian2 needs n = 2")
        b = a * offdiag()
        A[0, 1], A[1, 0] = b, np.conj(b)
        return A
    if kind == "diag_perturbed":
        A[np.diag_indices(n)] += a * eps * rng.uniform(-1, 1, size=n)
        A[0, 0] = a * (1 + eps)
        return A
    if kind == "offdiag_hermitian":
        # Hermitian, equal diagonal; a near miss only when n >= 3
        H = np.triu(a * eps * offdiag((n, n)), 1)
        return (A + H + np.conj(H.T)).astype(field.dtype)
    if kind == "non_hermitian2":
        b = a * offdiag(2)
        A[0, 1], A[1, 0] = b[0], np.conj(b[0]) + a * eps * _phases(rng, 1, field)[0]
        if abs(A[1, 0]) >= a:
            A[1, 0] *= 0.9 * a / abs(A[1, 0])
        return A
    if kind == "unequal_hermitian2":
        b = a * offdiag()
        A[0, 1], A[1, 0] = b, np.conj(b)
        A[1, 1] = a * (1 + eps)
        return A
    if kind in ("random_row", "random_col"):
        d = a * (1 + rng.random(n))
        M = offdiag((n, n)) * d[:, None]
        M[np.diag_indices(n)] = d
        return (M if kind == "random_row" else M.T).astype(field.dtype)
    raise ValueError(f"unknown dominant kind {kind!r}")
