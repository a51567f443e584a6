"""Recognisers for the matrix families appearing in the preserver characterisations.

All thresholds are relative to the largest entry modulus of the input, so
``T`` and ``c*T`` (c > 0) land in the same family.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .numeric import DEFAULT_TOL, Tolerance, entry_scale, rank


class Structure(enum.Enum):
    ZERO = "zero"
    ROW_MONOMIAL = "row_monomial"
    MONOMIAL = "monomial"
    GENERALIZED_PERMUTATION = "generalized_permutation"
    RANK_ONE = "rank_one"
    TWO_BY_TWO_C = "two_by_two_c"
    GENERAL = "general"


@dataclass(frozen=True, eq=False)
class StructureClass:
    """A recognised family together with its parameters.

    ``gamma``/``Q`` for generalized permutations, ``u``/``v`` for rank one
    (``T = v u^t``), ``gamma``/``beta``/``Q`` for ``T = gamma * C(beta) * Q``.
    """

    kind: Structure
    gamma: float | None = None
    beta: complex | float | None = None
    Q: np.ndarray | None = field(default=None, repr=False)
    u: np.ndarray | None = field(default=None, repr=False)
    v: np.ndarray | None = field(default=None, repr=False)

    def reconstruct(self, n: int) -> np.ndarray | None:
        if self.kind is Structure.GENERALIZED_PERMUTATION:
            return self.gamma * self.Q
        if self.kind is Structure.RANK_ONE:
            return np.outer(self.v, self.u)
        if self.kind is Structure.TWO_BY_TWO_C:
            return self.gamma * c_matrix(self.beta) @ self.Q
        if self.kind is Structure.ZERO:
            return np.zeros((n, n))
        return None


def c_matrix(beta) -> np.ndarray:
    """``[[1, beta], [conj(beta), 1]]``."""
    dtype = np.complex128 if np.iscomplexobj(beta) else np.float64
    return np.array([[1, beta], [np.conj(beta), 1]], dtype=dtype)


def _support(T, tol):
    return np.abs(T) > tol.eps_eq * entry_scale(T)


def _close(A, B, scale, tol):
    return bool(np.all(np.abs(A - B) <= tol.eps_eq * max(scale, np.finfo(float).tiny)))


def is_row_monomial(T, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Each row has at most one entry that is nonzero relative to the matrix scale."""
    return bool(np.all(_support(np.asarray(T), tol).sum(axis=1) <= 1))


def is_monomial(T, tol: Tolerance = DEFAULT_TOL) -> bool:
    S = _support(np.asarray(T), tol)
    return bool(np.all(S.sum(axis=1) == 1) and np.all(S.sum(axis=0) == 1))


def gen_perm_form(T, tol: Tolerance = DEFAULT_TOL):
    """Return ``(gamma, Q)`` with ``T = gamma * Q`` and ``Q`` a generalized permutation.

    The zero matrix gives ``(0.0, I)``. Returns None when no such form exists.
    """
    T = np.asarray(T)
    n = T.shape[0]
    scale = entry_scale(T)
    if scale == 0.0:
        return 0.0, np.eye(n, dtype=T.dtype)
    if not is_monomial(T, tol):
        return None
    S = _support(T, tol)
    moduli = np.abs(T[S])
    gamma = float(moduli.max())
    if np.any(moduli < gamma * (1 - tol.eps_eq)):
        return None
    Q = np.where(S, T / np.where(S, np.abs(T), 1.0), 0)
    if not _close(gamma * Q, T, scale, tol):
        return None
    return gamma, Q.astype(T.dtype)


def rank_one_factor(T, tol: Tolerance = DEFAULT_TOL):
    """Return ``(u, v)`` with ``T = v u^t`` when ``T`` has rank one, else None.

    ``v`` is the column of largest Euclidean norm and ``u`` the least-squares
    coefficients of every column against it; the factorisation is accepted
    only if it reproduces ``T`` entrywise.
    """
    T = np.asarray(T)
    if rank(T, tol) != 1:
        return None
    norms = np.linalg.norm(T, axis=0)
    v = T[:, int(np.argmax(norms))].copy()
    u = (np.conj(v) @ T) / np.vdot(v, v).real
    if not _close(np.outer(v, u), T, entry_scale(T), tol):
        return None
    return u.astype(T.dtype), v


_SHAPES = (np.eye(2), np.array([[0.0, 1.0], [1.0, 0.0]]))


def two_by_two_c_form(T, tol: Tolerance = DEFAULT_TOL):
    """Return ``(gamma, beta, Q)`` with ``T = gamma * C(beta) * Q`` and ``|beta| < 1``.

    Both shapes of ``Q`` (diagonal and antidiagonal) are tried. ``gamma`` is
    real positive and the nonzero entries of ``Q`` are unimodular.
    """
    T = np.asarray(T)
    if T.shape != (2, 2):
        raise ValueError("the C-form is only defined for 2x2 matrices")
    scale = entry_scale(T)
    if scale == 0.0:
        return None
    for perm in _SHAPES:
        # T = gamma * C * D * perm with D diagonal unimodular, so M = T perm^t = gamma * C * D
        M = T @ perm.T
        d0, d1 = abs(M[0, 0]), abs(M[1, 1])
        if min(d0, d1) <= tol.eps_eq * scale:
            continue
        gamma = float(max(d0, d1))
        if min(d0, d1) < gamma * (1 - tol.eps_eq):
            continue
        D = np.array([M[0, 0] / d0, M[1, 1] / d1])
        b12 = M[0, 1] / D[1] / gamma
        b21 = M[1, 0] / D[0] / gamma
        if abs(b12 - np.conj(b21)) > tol.eps_eq * max(1.0, abs(b12)):
            continue
        beta = b12
        if abs(beta) > 1 - tol.eps_eq:
            continue
        Q = (np.diag(D) @ perm).astype(T.dtype)
        if np.isrealobj(T):
            beta = float(np.real(beta))
        else:
            beta = complex(beta)
        if _close(gamma * c_matrix(beta) @ Q, T, scale, tol):
            return gamma, beta, Q
    return None
