"""Field-tagged arrays and the tolerance policy shared by every module.

Vectors and matrices are plain numpy arrays. The dtype carries the field:
``float64`` arrays live over the reals, ``complex128`` arrays over the complex
numbers. Real inputs are stored as float so their imaginary part is exactly
zero rather than merely small.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from numbers import Complex, Real

import numpy as np


class Field(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"

    @property
    def dtype(self):
        return np.float64 if self is Field.REAL else np.complex128


class FieldMismatch(ValueError):
    """Operands live over different fields, or a complex value was declared real."""


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerances for equality, peak membership and rank decisions."""

    eps_eq: float = 1e-9
    eps_peak: float = 1e-9
    eps_rank: float = 1e-9

    def __post_init__(self):
        for name in ("eps_eq", "eps_peak", "eps_rank"):
            value = getattr(self, name)
            if not 0.0 < value < 1e-3:
                raise ValueError(f"{name} must lie in (0, 1e-3), got {value!r}")

    @classmethod
    def uniform(cls, eps: float) -> "Tolerance":
        return cls(eps, eps, eps)


DEFAULT_TOL = Tolerance()


def field_of(a) -> Field:
    """Field of a scalar or array, read off its type."""
    if isinstance(a, np.ndarray):
        return Field.COMPLEX if np.iscomplexobj(a) else Field.REAL
    if isinstance(a, (complex, np.complexfloating)):
        return Field.COMPLEX
    if isinstance(a, (Real, np.number)):
        return Field.REAL
    if isinstance(a, Complex):
        return Field.COMPLEX
    raise TypeError(f"not a scalar: {a!r}")


def _coerce(data, field: Field | None, ndim: int, what: str) -> np.ndarray:
    arr = np.asarray(data)
    if arr.dtype == object or arr.dtype.kind not in "biufc":
        raise TypeError(f"{what} entries must be numeric")
    if field is None:
        field = Field.COMPLEX if np.iscomplexobj(arr) else Field.REAL
    if field is Field.REAL and np.iscomplexobj(arr):
        if np.any(arr.imag != 0):
            raise FieldMismatch(f"{what} declared real has nonzero imaginary parts")
        arr = arr.real
    arr = np.array(arr, dtype=field.dtype)
    if arr.ndim != ndim:
        raise DimensionMismatch(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} has non-finite entries")
    return arr


def as_vector(data, field: Field | None = None) -> np.ndarray:
    v = _coerce(data, field, 1, "vector")
    if v.size == 0:
        raise DimensionMismatch("vector must have positive dimension")
    return v


def as_matrix(data, field: Field | None = None) -> np.ndarray:
    m = _coerce(data, field, 2, "matrix")
    if m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionMismatch(f"matrix must be square and nonempty, got shape {m.shape}")
    return m


def check_pair(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise DimensionMismatch(f"shapes differ: {x.shape} vs {y.shape}")
    if field_of(x) is not field_of(y):
        raise FieldMismatch("vectors live over different fields")


def approx_eq(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    if field_of(a) is not field_of(b):
        raise FieldMismatch(f"cannot compare {a!r} and {b!r}")
    return abs(a - b) <= tol.eps_eq * max(1.0, abs(a), abs(b))


def is_nonneg_real(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when ``a`` lies on the closed ray [0, inf), up to tolerance."""
    slack = tol.eps_eq * max(1.0, abs(a))
    z = complex(a)
    return abs(z.imag) <= slack and z.real >= -slack


def entry_scale(T: np.ndarray) -> float:
    return float(np.max(np.abs(T))) if T.size else 0.0


def rank(T: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    """Numerical rank by Gaussian elimination with full pivoting.

    A pivot is accepted while its modulus exceeds ``eps_rank`` times the
    largest entry of the original matrix.
    """
    A = np.array(T, dtype=np.complex128 if np.iscomplexobj(T) else np.float64)
    threshold = tol.eps_rank * entry_scale(A)
    m, n = A.shape
    r = 0
    while r < min(m, n):
        sub = np.abs(A[r:, r:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= threshold:
            break
        i += r
        j += r
        A[[r, i]] = A[[i, r]]
        A[:, [r, j]] = A[:, [j, r]]
        factors = A[r + 1:, r] / A[r, r]
        A[r + 1:, r:] -= np.outer(factors, A[r, r:])
        r += 1
    return r


def unimodular(z) -> complex:
    """Phase of a nonzero scalar, ``z / |z|``."""
    return z / abs(z)
