"""Parallel and triangle-equality-attaining (TEA) pair predicates.

Two routes are provided. The coordinate criteria (``is_pair_l1``,
``is_pair_linf``, ``is_pair_lp_strict``) decide a pair from products and
peak sets; ``definitional_check`` evaluates ``||x + mu*y|| = ||x|| + ||y||``
over a finite set of candidate ``mu`` and serves as an independent oracle.

Every criterion has a batch form (``*_batch``) operating on stacked pairs of
shape ``(m, n)``; the single-pair functions are thin wrappers around it so the
two can never disagree.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .norms import NormKind, NormSpec, norm, peak_mask
from .numeric import DEFAULT_TOL, Field, Tolerance, check_pair, field_of


class PairKind(enum.Enum):
    PARALLEL = "parallel"
    TEA = "tea"


@dataclass(frozen=True)
class PairVerdict:
    """Outcome of a pair test.

    ``mu`` is a unimodular scalar with ``||x + mu*y|| = ||x|| + ||y||`` when
    the pair holds (always 1 for TEA). ``k`` is the shared peak coordinate
    (0-based) for the l-infinity criterion.
    """

    holds: bool
    mu: complex | float | None = None
    k: int | None = None


# ---------------------------------------------------------------- helpers

def _phase(z):
    a = np.abs(z)
    return np.where(a > 0, z / np.where(a > 0, a, 1.0), 0.0)


def _products(X, Y, tol):
    """Products conj(x_k) y_k and a mask of the ones that count as nonzero."""
    P = np.conj(X) * Y
    scale = np.abs(X).max(axis=-1, keepdims=True) * np.abs(Y).max(axis=-1, keepdims=True)
    nonzero = np.abs(P) > tol.eps_eq * scale
    return P, nonzero


def _on_positive_ray(P, tol):
    """Nonzero products whose phase is within eps_eq of 1."""
    return np.abs(_phase(P) - 1.0) <= tol.eps_eq


def _as_batch(X, Y):
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape:
        raise ValueError(f"shapes differ: {X.shape} vs {Y.shape}")
    return np.atleast_2d(X), np.atleast_2d(Y)


# ---------------------------------------------------------------- l1

def l1_batch(X, Y, kind: PairKind, tol: Tolerance = DEFAULT_TOL):
    X, Y = _as_batch(X, Y)
    P, nz = _products(X, Y, tol)
    if kind is PairKind.TEA:
        return np.all(~nz | _on_positive_ray(P, tol), axis=-1)
    ph = _phase(P)
    diff = np.abs(ph[:, :, None] - ph[:, None, :])
    both = nz[:, :, None] & nz[:, None, :]
    return np.all(~both | (diff <= tol.eps_eq), axis=(-2, -1))


def _reference_phase(x, y, tol):
    P, nz = _products(x[None], y[None], tol)
    P, nz = P[0], nz[0]
    if not nz.any():
        return None
    k = int(np.argmax(np.where(nz, np.abs(P), -1.0)))
    return P[k] / abs(P[k])


def _mu(phase, field):
    """Unimodular mu with mu * phase on the positive real ray."""
    if phase is None:
        return 1.0 if field is Field.REAL else 1.0 + 0j
    if field is Field.REAL:
        return 1.0 if phase.real >= 0 else -1.0
    return complex(np.conj(phase))


def is_pair_l1(x, y, kind: PairKind, tol: Tolerance = DEFAULT_TOL) -> PairVerdict:
    x, y = np.asarray(x), np.asarray(y)
    check_pair(x, y)
    holds = bool(l1_batch(x, y, kind, tol)[0])
    if not holds:
        return PairVerdict(False)
    field = field_of(x)
    if kind is PairKind.TEA:
        return PairVerdict(True, _mu(None, field))
    return PairVerdict(True, _mu(_reference_phase(x, y, tol), field))


# ---------------------------------------------------------------- l-infinity

def _linf_good(X, Y, kind, tol):
    """Mask of coordinates certifying the l-infinity criterion."""
    common = peak_mask(X, tol) & peak_mask(Y, tol)
    if kind is PairKind.TEA:
        common &= _on_positive_ray(np.conj(X) * Y, tol)
    return common


def linf_batch(X, Y, kind: PairKind, tol: Tolerance = DEFAULT_TOL):
    X, Y = _as_batch(X, Y)
    zero = (np.abs(X).max(axis=-1) == 0) | (np.abs(Y).max(axis=-1) == 0)
    return zero | _linf_good(X, Y, kind, tol).any(axis=-1)


def is_pair_linf(x, y, kind: PairKind, tol: Tolerance = DEFAULT_TOL) -> PairVerdict:
    x, y = np.asarray(x), np.asarray(y)
    check_pair(x, y)
    field = field_of(x)
    if not np.any(x) or not np.any(y):
        return PairVerdict(True, _mu(None, field))
    good = np.flatnonzero(_linf_good(x[None], y[None], kind, tol)[0])
    if good.size == 0:
        return PairVerdict(False)
    k = int(good[0])
    if kind is PairKind.TEA:
        return PairVerdict(True, _mu(None, field), k)
    return PairVerdict(True, _mu(np.conj(x[k]) * y[k] / abs(x[k] * y[k]), field), k)


# ---------------------------------------------------------------- strictly convex lp

def _dependence(X, Y, tol):
    """Linear dependence of each row pair: all 2x2 minors vanish relative to scale."""
    scale = np.abs(X).max(axis=-1) * np.abs(Y).max(axis=-1)
    minors = X[:, :, None] * Y[:, None, :] - X[:, None, :] * Y[:, :, None]
    return np.abs(minors).max(axis=(-2, -1)) <= tol.eps_eq * scale


def _ratio(X, Y):
    """The t with y = t x for dependent pairs (0 where x vanishes)."""
    xx = np.sum(np.abs(X) ** 2, axis=-1)
    xy = np.sum(np.conj(X) * Y, axis=-1)
    return np.where(xx > 0, xy / np.where(xx > 0, xx, 1.0), 0.0)


def lp_batch(X, Y, kind: PairKind, tol: Tolerance = DEFAULT_TOL):
    X, Y = _as_batch(X, Y)
    zero = (np.abs(X).max(axis=-1) == 0) | (np.abs(Y).max(axis=-1) == 0)
    dep = _dependence(X, Y, tol)
    if kind is PairKind.TEA:
        dep &= _on_positive_ray(_ratio(X, Y), tol)
    return zero | dep


def is_pair_lp_strict(x, y, kind: PairKind, tol: Tolerance = DEFAULT_TOL) -> PairVerdict:
    x, y = np.asarray(x), np.asarray(y)
    check_pair(x, y)
    field = field_of(x)
    if not bool(lp_batch(x, y, kind, tol)[0]):
        return PairVerdict(False)
    if kind is PairKind.TEA or not np.any(x) or not np.any(y):
        return PairVerdict(True, _mu(None, field))
    t = _ratio(x[None], y[None])[0]
    return PairVerdict(True, _mu(t / abs(t), field))


# ---------------------------------------------------------------- dispatch

def pair_batch(X, Y, spec: NormSpec, kind: PairKind, tol: Tolerance = DEFAULT_TOL):
    """Criterion verdicts for stacked pairs, as a boolean array."""
    if spec.kind is NormKind.L1:
        return l1_batch(X, Y, kind, tol)
    if spec.kind is NormKind.LINF:
        return linf_batch(X, Y, kind, tol)
    return lp_batch(X, Y, kind, tol)


def is_pair(x, y, spec: NormSpec, kind: PairKind, tol: Tolerance = DEFAULT_TOL) -> PairVerdict:
    if spec.kind is NormKind.L1:
        return is_pair_l1(x, y, kind, tol)
    if spec.kind is NormKind.LINF:
        return is_pair_linf(x, y, kind, tol)
    return is_pair_lp_strict(x, y, kind, tol)


# ---------------------------------------------------------------- definitional oracle

GRID_POINTS = 720


def _attains(x, y, mu, spec, tol):
    target = norm(x, spec) + norm(y, spec)
    return abs(norm(x + mu * y, spec) - target) <= tol.eps_eq * target


def _candidates(x, y, spec, tol):
    if field_of(x) is Field.REAL:
        return [1.0, -1.0]
    cands = [1.0 + 0j, -1.0 + 0j]
    if spec.kind is NormKind.L1:
        ref = _reference_phase(x, y, tol)
        if ref is not None:
            cands.append(complex(np.conj(ref)))
    elif spec.kind is NormKind.LINF:
        for xk, yk in zip(x, y):
            if xk != 0 and yk != 0:
                cands.append(complex(xk * np.conj(yk) / abs(xk * yk)))
    return cands


def _best_on_circle(x, y, spec):
    """Largest ||x + e^{i phi} y|| over phi: 720-point grid, then one bounded refinement."""
    phis = np.linspace(0.0, 2 * np.pi, GRID_POINTS, endpoint=False)
    vals = norm(x[None, :] + np.exp(1j * phis)[:, None] * y[None, :], spec)
    i = int(np.argmax(vals))
    h = 2 * np.pi / GRID_POINTS
    res = minimize_scalar(
        lambda phi: -norm(x + np.exp(1j * phi) * y, spec),
        bounds=(phis[i] - h, phis[i] + h),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return np.exp(1j * res.x) if -res.fun >= vals[i] else np.exp(1j * phis[i])


def definitional_check(x, y, kind: PairKind, spec: NormSpec, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Test the norm identity directly over a finite candidate set of mu."""
    x, y = np.asarray(x), np.asarray(y)
    check_pair(x, y)
    if kind is PairKind.TEA:
        return bool(_attains(x, y, 1.0, spec, tol))
    if any(_attains(x, y, mu, spec, tol) for mu in _candidates(x, y, spec, tol)):
        return True
    if spec.kind is NormKind.LP and field_of(x) is Field.COMPLEX:
        return bool(_attains(x, y, _best_on_circle(x, y, spec), spec, tol))
    return False


def definitional_batch(X, Y, kind: PairKind, spec: NormSpec, tol: Tolerance = DEFAULT_TOL):
    """Batch form of ``definitional_check``."""
    X, Y = _as_batch(X, Y)
    if kind is PairKind.TEA or (field_of(X) is Field.REAL):
        mus = [1.0] if kind is PairKind.TEA else [1.0, -1.0]
        target = norm(X, spec) + norm(Y, spec)
        out = np.zeros(X.shape[0], dtype=bool)
        for mu in mus:
            out |= np.abs(norm(X + mu * Y, spec) - target) <= tol.eps_eq * target
        return out
    return np.array([definitional_check(x, y, kind, spec, tol) for x, y in zip(X, Y)])
