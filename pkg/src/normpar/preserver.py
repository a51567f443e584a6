"""Decide whether a matrix preserves parallel or TEA pairs for an lp norm.

The verdict is purely structural. When a matrix is not a preserver a
concrete witness pair is built, following the explicit reductions for the l1
norm and a probe family plus seeded search for the l-infinity norm, and every
witness is checked by both the coordinate criterion and the norm definition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .classify import (
    Structure,
    StructureClass,
    gen_perm_form,
    is_row_monomial,
    rank_one_factor,
    two_by_two_c_form,
)
from .norms import NormKind, NormSpec
from .numeric import DEFAULT_TOL, Field, Tolerance, as_matrix, entry_scale, field_of, rank
from .oracle import BLOCK, SampleConfig, sample_batch, scan_pairs, validate_counterexample
from .pairs import PairKind

DEFAULT_BUDGET = 100_000


class WitnessNotFound(RuntimeError):
    """The witness search exhausted its budget without a validated pair."""


@dataclass(frozen=True, eq=False)
class PreserverVerdict:
    """``preserver`` with its structure, or a witness pair certifying failure.

    ``validated`` means the structure reproduces the matrix (preservers) or
    the witness passed both the criterion and the definitional check.
    """

    preserver: bool
    structure: StructureClass | None = None
    witness: tuple | None = None
    validation: dict | None = None
    validated: bool = False


def _field(T) -> Field:
    return field_of(np.asarray(T))


def structure_for(T, spec: NormSpec, kind: PairKind, tol: Tolerance = DEFAULT_TOL):
    """The preserver family ``T`` belongs to, or None if it is not a preserver."""
    T = np.asarray(T)
    n = T.shape[0]
    if spec.kind is NormKind.LP:
        return StructureClass(Structure.GENERAL)
    if entry_scale(T) == 0.0:
        return StructureClass(Structure.ZERO, gamma=0.0, Q=np.eye(n, dtype=T.dtype))

    if spec.kind is NormKind.L1:
        if is_row_monomial(T, tol):
            return StructureClass(Structure.ROW_MONOMIAL)
        if kind is PairKind.PARALLEL:
            f = rank_one_factor(T, tol)
            if f is not None:
                return StructureClass(Structure.RANK_ONE, u=f[0], v=f[1])
        return None

    real2 = _field(T) is Field.REAL and n == 2
    g = gen_perm_form(T, tol)
    if g is not None:
        return StructureClass(Structure.GENERALIZED_PERMUTATION, gamma=g[0], Q=g[1])
    if n == 2 and (kind is PairKind.PARALLEL or real2):
        c = two_by_two_c_form(T, tol)
        if c is not None:
            return StructureClass(Structure.TWO_BY_TWO_C, gamma=c[0], beta=c[1], Q=c[2])
    if kind is PairKind.PARALLEL or real2:
        f = rank_one_factor(T, tol)
        if f is not None:
            u, v = f
            if kind is PairKind.PARALLEL or abs(abs(u[0]) - abs(u[1])) <= tol.eps_eq * max(abs(u[0]), abs(u[1])):
                return StructureClass(Structure.RANK_ONE, u=u, v=v)
    return None


def decide(T, spec: NormSpec, kind: PairKind, tol: Tolerance = DEFAULT_TOL,
           field: Field | None = None, seed: int = 0, budget: int = DEFAULT_BUDGET) -> PreserverVerdict:
    """Classify ``T`` as a preserver, or return a validated witness pair.

    ``field`` declares the scalar field; a complex matrix declared real is
    rejected. Raises ``WitnessNotFound`` if no witness can be validated.
    """
    T = as_matrix(T, field)
    s = structure_for(T, spec, kind, tol)
    if s is not None:
        recon = s.reconstruct(T.shape[0])
        ok = recon is None or bool(np.all(np.abs(recon - T) <= tol.eps_eq * max(entry_scale(T), 1e-300)))
        return PreserverVerdict(True, s, validated=ok)
    x, y = build_witness(T, spec, kind, tol, seed=seed, budget=budget)
    v = validate_counterexample(T, x, y, spec, kind, tol)
    return PreserverVerdict(False, None, (x, y), v, v["criterion"] and v["definitional"])


# ---------------------------------------------------------------- witnesses

def _valid(T, x, y, spec, kind, tol):
    v = validate_counterexample(T, x, y, spec, kind, tol)
    return v["criterion"] and v["definitional"]


def _support(T, tol):
    return np.abs(T) > tol.eps_eq * entry_scale(T)


def _l1_tea_witness(T, tol):
    """A row with entries a, b in columns j, k: x = (2/a)e_j - (1/b)e_k, y = (1/a)e_j - (2/b)e_k."""
    S = _support(T, tol)
    i = int(np.flatnonzero(S.sum(axis=1) >= 2)[0])
    j, k = np.flatnonzero(S[i])[:2]
    a, b = T[i, j], T[i, k]
    x = np.zeros(T.shape[0], dtype=T.dtype)
    y = np.zeros_like(x)
    x[j], x[k] = 2 / a, -1 / b
    y[j], y[k] = 1 / a, -2 / b
    return x, y


def _l1_parallel_witness(T, tol):
    """Witness for a non-row-monomial matrix of rank at least two.

    Take the row r1 with most nonzeros (support S) and a row r2 that is not a
    multiple of it. Scaling column c in S by 1/T[r1, c] makes row r1 all ones
    on S; diagonal scalings leave the l1 criterion unchanged.
    """
    S = _support(T, tol)
    counts = S.sum(axis=1)
    r1 = int(np.argmax(counts))
    cols = np.flatnonzero(S[r1])
    scale = entry_scale(T)
    r2 = None
    for r in range(T.shape[0]):
        if r == r1:
            continue
        minors = np.outer(T[r1], T[r]) - np.outer(T[r], T[r1])
        if np.max(np.abs(minors)) > tol.eps_eq * scale * scale:
            r2 = r
            break
    if r2 is None:
        raise WitnessNotFound("every row is a multiple of the densest row")
    n = T.shape[0]
    dtype = np.complex128 if np.iscomplexobj(T) else np.float64
    w = T[r2, cols] / T[r1, cols]
    x = np.zeros(n, dtype=dtype)
    y = np.zeros(n, dtype=dtype)

    if np.max(np.abs(w - w[0])) > tol.eps_eq * np.max(np.abs(w)):
        # leading block [[1, 1], [1, a]] after scaling, with a != 1
        c1 = cols[int(np.argmax(np.abs(w)))]
        w1 = T[r2, c1] / T[r1, c1]
        c2 = next(c for c in cols if abs(T[r2, c] / T[r1, c] - w1) > tol.eps_eq * abs(w1))
        a = (T[r2, c2] / T[r1, c2]) / w1
        if abs(np.imag(a)) > tol.eps_eq * abs(a):
            m = 0.5
            xs, ys = (m, np.conj(a)), (1.0, m * np.conj(a))
        elif np.real(a) < 0:
            a = float(np.real(a))
            m = min(-a, -1 / a) / 2
            xs, ys = (m, a), (1.0, m * a)
        else:
            m = (1 + float(np.real(a))) / 2
            xs, ys = (m, -1.0), (1.0, -m)
        x[c1], x[c2] = xs[0] / T[r1, c1], xs[1] / T[r1, c2]
        y[c1], y[c2] = ys[0] / T[r1, c1], ys[1] / T[r1, c2]
        return x, y

    # row r2 vanishes on S: leading 2x3 block [[1, 1, 0], [0, 0, a]]
    outside = [c for c in np.flatnonzero(S[r2]) if c not in set(cols)]
    if np.max(np.abs(T[r2, cols])) > tol.eps_eq * scale or not outside:
        raise WitnessNotFound("row pattern outside the constructive cases")
    c1, c2 = cols[:2]
    j = outside[0]
    x[c1], x[c2], x[j] = 2 / T[r1, c1], -1 / T[r1, c2], 1.0
    y[c1], y[c2], y[j] = 1 / T[r1, c1], -2 / T[r1, c2], 1.0
    return x, y


def _linf_structured(T, kind, tol):
    """Explicit witnesses for the exceptional two-dimensional l-infinity cases."""
    n = T.shape[0]
    if kind is not PairKind.TEA or n != 2:
        return []
    out = []
    c = two_by_two_c_form(T, tol)
    if c is not None and _field(T) is Field.COMPLEX:
        Qinv = np.conj(c[2].T)
        e = Qinv @ np.array([1, 0], dtype=complex)
        for probe in ([1, 1], [1, 1j]):
            out.append((e, Qinv @ np.array(probe, dtype=complex)))
    f = rank_one_factor(T, tol)
    if f is not None and _field(T) is Field.REAL:
        u = f[0]
        ones = np.array([1.0, 1.0])
        if abs(u[0]) < abs(u[1]):
            out.append((ones, np.array([1.0, -1.0])))
        else:
            out.append((ones, np.array([-1.0, 1.0])))
    return out


def probe_vectors(n: int, field: Field):
    """Coordinate probes: e_j, e_j + w e_k, all-ones and its sign patterns."""
    ws = [1.0, -1.0, 0.5, -0.5]
    if field is Field.COMPLEX:
        ws += [1j, -1j, 0.5j, -0.5j]
    vecs = []
    eye = np.eye(n, dtype=field.dtype)
    vecs.extend(eye)
    for j, k in itertools.permutations(range(n), 2):
        for w in ws:
            vecs.append(eye[j] + w * eye[k])
    signs = [1.0, -1.0] if field is Field.REAL else [1.0, -1.0, 1j, -1j]
    width = min(n - 1, 7 if field is Field.REAL else 4)
    for pattern in itertools.product(signs, repeat=width):
        v = np.ones(n, dtype=field.dtype)
        v[1:1 + width] = pattern
        vecs.append(v)
    return np.array(vecs, dtype=field.dtype)


def probe_search(T, spec, kind, tol):
    V = probe_vectors(T.shape[0], _field(T))
    m = len(V)
    I, J = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    I, J = I.ravel(), J.ravel()
    chunk = 1 << 16
    for s in range(0, I.size, chunk):
        X, Y = V[I[s:s + chunk]], V[J[s:s + chunk]]
        i = scan_pairs(T, X, Y, spec, kind, tol)
        if i is not None:
            return X[i].copy(), Y[i].copy()
    return None


def random_search(T, spec, kind, tol, seed, budget):
    cfg = SampleConfig(seed=seed, count=budget, dim=T.shape[0], field=_field(T), spec=spec, kind=kind)
    for start in range(0, budget, BLOCK):
        X, Y = sample_batch(cfg, start, min(start + BLOCK, budget))
        i = scan_pairs(T, X, Y, spec, kind, tol)
        if i is not None:
            return X[i].copy(), Y[i].copy()
    return None


def build_witness(T, spec: NormSpec, kind: PairKind, tol: Tolerance = DEFAULT_TOL,
                  seed: int = 0, budget: int = DEFAULT_BUDGET):
    """Construct a validated pair ``(x, y)`` whose image under ``T`` is not a pair."""
    T = np.asarray(T)
    candidates = []
    if spec.kind is NormKind.L1:
        try:
            if kind is PairKind.TEA:
                candidates.append(_l1_tea_witness(T, tol))
            else:
                candidates.append(_l1_parallel_witness(T, tol))
        except (IndexError, WitnessNotFound):
            pass
    elif spec.kind is NormKind.LINF:
        candidates.extend(_linf_structured(T, kind, tol))
    for x, y in candidates:
        if _valid(T, x, y, spec, kind, tol):
            return x, y
    if spec.kind is NormKind.LP:
        raise WitnessNotFound("every linear map preserves pairs for a strictly convex norm")
    found = probe_search(T, spec, kind, tol)
    if found is None:
        found = random_search(T, spec, kind, tol, seed, budget)
    if found is None:
        raise WitnessNotFound(f"no validated witness within {budget} sampled pairs")
    return found


# ---------------------------------------------------------------- cross-check

def linf_characterisations_agree(T, tol: Tolerance = DEFAULT_TOL) -> bool:
    """For n >= 3 and T != 0 the three l-infinity characterisations must agree.

    TEA preserver, parallel preserver of rank > 1, and ``gamma * Q`` with
    ``gamma > 0``.
    """
    T = np.asarray(T)
    n = T.shape[0]
    if n < 3:
        raise ValueError("the cross-check needs n >= 3")
    if entry_scale(T) == 0.0:
        raise ValueError("the cross-check needs a nonzero matrix")
    linf = NormSpec.linf()
    tea = structure_for(T, linf, PairKind.TEA, tol) is not None
    par = structure_for(T, linf, PairKind.PARALLEL, tol) is not None and rank(T, tol) > 1
    g = gen_perm_form(T, tol)
    gq = g is not None and g[0] > 0
    return tea == par == gq


def verdict_holds(T, spec, kind, tol=DEFAULT_TOL) -> bool:
    """Structural verdict only, without building a witness."""
    return structure_for(T, spec, kind, tol) is not None

