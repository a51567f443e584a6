"""Constructive pair samplers and empirical refutation of preserver claims.

Sampling is block-seeded: pair ``i`` is row ``i % BLOCK`` of a block generated
from ``(seed, i // BLOCK)``. A pair is therefore the same whether it is drawn
alone, in a batch, or in a shard of a larger campaign.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .norms import NormKind, NormSpec, peak_mask
from .numeric import DEFAULT_TOL, Field, FieldMismatch, Tolerance, entry_scale, field_of
from .pairs import PairKind, _dependence, definitional_check, is_pair, pair_batch

BLOCK = 1024
_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    count: int = 10_000
    dim: int = 3
    field: Field = Field.REAL
    spec: NormSpec = NormSpec.l1()
    kind: PairKind = PairKind.TEA
    magnitude_range: tuple[float, float] = (0.1, 10.0)

    def __post_init__(self):
        lo, hi = self.magnitude_range
        if self.count < 1:
            raise ValueError("count must be positive")
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if not 0 < lo <= hi:
            raise ValueError("magnitude range must satisfy 0 < lo <= hi")


# ---------------------------------------------------------------- sampling

def _rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng([seed & _SEED_MASK, block])


def _magnitudes(rng, shape, lo, hi):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size=shape))


def _phases(rng, shape, field):
    if field is Field.REAL:
        return rng.choice([-1.0, 1.0], size=shape)
    return np.exp(1j * rng.uniform(0.0, 2 * np.pi, size=shape))


def _block(cfg: SampleConfig, b: int):
    """Generate block ``b`` of ``BLOCK`` pairs satisfying ``(cfg.spec, cfg.kind)``."""
    rng = _rng(cfg.seed, b)
    shape = (BLOCK, cfg.dim)
    lo, hi = cfg.magnitude_range
    ax = _magnitudes(rng, shape, lo, hi)
    ay = _magnitudes(rng, shape, lo, hi)
    px = _phases(rng, shape, cfg.field)
    py = _phases(rng, shape, cfg.field)
    lam = _phases(rng, (BLOCK, 1), cfg.field)
    drop_x = rng.random(shape) < 0.2
    drop_y = rng.random(shape) < 0.2
    k = rng.integers(0, cfg.dim, size=BLOCK)
    t = _magnitudes(rng, (BLOCK, 1), lo, hi)
    zero_y = rng.random(BLOCK) < 1 / 64
    rows = np.arange(BLOCK)

    kind = cfg.kind
    if cfg.spec.kind is NormKind.L1:
        X = np.where(drop_x, 0, ax) * px
        Y = np.where(drop_y, 0, ay) * px
        if kind is PairKind.PARALLEL:
            Y = Y * lam
    elif cfg.spec.kind is NormKind.LINF:
        X = np.where(drop_x, 0, ax) * px
        Y = np.where(drop_y, 0, ay) * py
        # force a shared peak at coordinate k (ties elsewhere are allowed)
        X[rows, k] = ax.max(axis=1) * px[rows, k]
        if kind is PairKind.TEA:
            Y[rows, k] = ay.max(axis=1) * px[rows, k]
        else:
            Y[rows, k] = ay.max(axis=1) * py[rows, k]
    else:
        X = ax * px
        Y = t * X if kind is PairKind.TEA else t * lam * X
    Y = np.where(zero_y[:, None], 0, Y)
    dtype = cfg.field.dtype
    return X.astype(dtype), Y.astype(dtype)


def sample_batch(cfg: SampleConfig, start: int = 0, stop: int | None = None):
    """Pairs with indices in ``[start, stop)`` as two ``(m, dim)`` arrays."""
    stop = cfg.count if stop is None else stop
    if not 0 <= start <= stop:
        raise ValueError("bad index range")
    xs, ys = [], []
    blocks = range(start // BLOCK, (stop - 1) // BLOCK + 1) if stop > start else ()
    for b in blocks:
        X, Y = _block(cfg, b)
        lo = max(start - b * BLOCK, 0)
        hi = min(stop - b * BLOCK, BLOCK)
        xs.append(X[lo:hi])
        ys.append(Y[lo:hi])
    if not xs:
        empty = np.zeros((0, cfg.dim), dtype=cfg.field.dtype)
        return empty, empty.copy()
    return np.concatenate(xs), np.concatenate(ys)


def sample_pair(cfg: SampleConfig, index: int):
    if not 0 <= index < cfg.count:
        raise IndexError(f"index {index} outside [0, {cfg.count})")
    X, Y = _block(cfg, index // BLOCK)
    return X[index % BLOCK].copy(), Y[index % BLOCK].copy()


# ---------------------------------------------------------------- refutation

@dataclass(frozen=True, eq=False)
class Counterexample:
    index: int
    x: np.ndarray
    y: np.ndarray
    tx: np.ndarray
    ty: np.ndarray


def apply(T, X, tol: Tolerance = DEFAULT_TOL):
    """Images ``T x`` of the rows of ``X`` (or of a single vector).

    A coordinate that cancels to within ``eps_eq`` of its absolute sum
    ``sum_j |T_ij x_j|`` is set to exactly zero; otherwise rounding noise in a
    mathematically zero image would be read by the scale-free pair criteria.
    """
    T = np.asarray(T)
    X = np.asarray(X)
    Y = X @ T.T
    bound = np.abs(X) @ np.abs(T).T
    return np.where(np.abs(Y) <= tol.eps_eq * bound, 0, Y)


def validate_counterexample(T, x, y, spec, kind, tol=DEFAULT_TOL) -> dict:
    """Check that ``(x, y)`` is a pair and ``(Tx, Ty)`` is not, by both routes."""
    tx, ty = apply(T, x, tol), apply(T, y, tol)
    return {
        "criterion": is_pair(x, y, spec, kind, tol).holds and not is_pair(tx, ty, spec, kind, tol).holds,
        "definitional": definitional_check(x, y, kind, spec, tol)
        and not definitional_check(tx, ty, kind, spec, tol),
    }


def _operator(T, field: Field):
    T = np.asarray(T)
    if field_of(T) is Field.COMPLEX and field is Field.REAL:
        raise FieldMismatch("a complex matrix does not act on a real space")
    return T.astype(field.dtype)


def scan_pairs(T, X, Y, spec, kind, tol=DEFAULT_TOL):
    """Index (into X, Y) of the first doubly validated counterexample, or None."""
    TX = apply(T, X, tol)
    TY = apply(T, Y, tol)
    bad = pair_batch(X, Y, spec, kind, tol) & ~pair_batch(TX, TY, spec, kind, tol)
    for i in np.flatnonzero(bad):
        v = validate_counterexample(T, X[i], Y[i], spec, kind, tol)
        if v["criterion"] and v["definitional"]:
            return int(i)
    return None


def empirical_check(T, cfg: SampleConfig, tol: Tolerance = DEFAULT_TOL,
                    start: int = 0, stop: int | None = None) -> Counterexample | None:
    """Search sampled pairs ``[start, stop)`` for a pair whose image is not a pair.

    Returns the lowest-index doubly validated counterexample, or None.
    """
    T = _operator(T, cfg.field)
    if T.shape != (cfg.dim, cfg.dim):
        raise ValueError(f"matrix shape {T.shape} does not match dim {cfg.dim}")
    stop = cfg.count if stop is None else min(stop, cfg.count)
    pos = start
    while pos < stop:
        nxt = min((pos // BLOCK + 1) * BLOCK, stop)
        X, Y = sample_batch(cfg, pos, nxt)
        i = scan_pairs(T, X, Y, cfg.spec, cfg.kind, tol)
        if i is not None:
            x, y = X[i], Y[i]
            return Counterexample(pos + i, x, y, apply(T, x, tol), apply(T, y, tol))
        pos = nxt
    return None


def merge_shards(results) -> Counterexample | None:
    """Combine shard results: the counterexample of lowest index wins."""
    found = [r for r in results if r is not None]
    return min(found, key=lambda c: c.index) if found else None


# ---------------------------------------------------------------- two-dimensional subspaces

_SPAN_REAL = [1.0, -1.0, 0.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0, 1 / 3, -1 / 3,
              10.0, -10.0, 0.1, -0.1, 1.5, -1.5, 0.75, -0.75, 100.0, -100.0]
_SPAN_COMPLEX = [1.0, -1.0, 0.0, 1j, -1j, 2.0, -2.0, 0.5, -0.5, 2j, -2j, 0.5j, -0.5j,
                 1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j, 10.0, -10.0, 0.1, -0.1, 10j, -10j,
                 0.1j, -0.1j, 3.0, -3.0, 1 / 3, -1 / 3, 100.0, -100.0]


def span_grid(field: Field):
    """Deterministic (s, t) coefficient pairs, at most 10**3 of them."""
    vals = _SPAN_REAL if field is Field.REAL else _SPAN_COMPLEX
    return [(s, t) for s, t in itertools.product(vals, vals) if s != t]


def _first_nonparallel(X, Y, spec, tol):
    ok = ~pair_batch(X, Y, spec, PairKind.PARALLEL, tol)
    for i in np.flatnonzero(ok):
        if not definitional_check(X[i], Y[i], PairKind.PARALLEL, spec, tol):
            return X[i].copy(), Y[i].copy()
    return None


def find_nonparallel_in_span(u, v, spec: NormSpec = NormSpec.linf(), tol: Tolerance = DEFAULT_TOL):
    """A non-parallel pair from span{u, v}, or None when u and v are dependent.

    If u, v are themselves parallel they share a peak k; rescaling both to
    unit vectors equal to 1 at k gives u', v' with ``||u' + v'|| = 2``, and
    then ``u' + v'`` and ``u' - v'`` are not parallel unless u' = v'. The
    coefficient grid ``span_grid`` is a fallback for tolerance edge cases.
    """
    if spec.kind is not NormKind.LINF:
        raise ValueError("the span search is defined for the l-infinity norm")
    u, v = np.asarray(u), np.asarray(v)
    if u.shape != v.shape:
        raise ValueError("u and v must have the same dimension")
    field = Field.COMPLEX if (field_of(u) is Field.COMPLEX or field_of(v) is Field.COMPLEX) else Field.REAL
    u, v = u.astype(field.dtype), v.astype(field.dtype)
    if not np.any(u) or not np.any(v) or _dependence(u[None], v[None], tol)[0]:
        return None
    common = np.flatnonzero(peak_mask(u, tol) & peak_mask(v, tol))
    X, Y = [u], [v]
    if common.size:
        k = common[0]
        un = u * (np.conj(u[k]) / (abs(u[k]) * np.abs(u).max()))
        vn = v * (np.conj(v[k]) / (abs(v[k]) * np.abs(v).max()))
        X.append(un + vn)
        Y.append(un - vn)
    found = _first_nonparallel(np.array(X), np.array(Y), spec, tol)
    if found is not None:
        return found
    grid = span_grid(field)
    S = np.array([s for s, _ in grid], dtype=field.dtype)[:, None]
    Tc = np.array([t for _, t in grid], dtype=field.dtype)[:, None]
    return _first_nonparallel(u + S * v, u + Tc * v, spec, tol)


# ---------------------------------------------------------------- diagonal dominance conditions

class HypothesisViolated(ValueError):
    pass


def check_dominance(A, tol: Tolerance = DEFAULT_TOL) -> None:
    """Require positive diagonal that strictly dominates each row or each column."""
    A = np.asarray(A)
    n = A.shape[0]
    scale = entry_scale(A)
    d = np.diag(A)
    if np.any(np.abs(np.imag(d)) > tol.eps_eq * scale) or np.any(np.real(d) <= 0):
        raise HypothesisViolated("diagonal entries must be positive reals")
    off = np.abs(A)[~np.eye(n, dtype=bool)].reshape(n, n - 1)
    off_t = np.abs(A.T)[~np.eye(n, dtype=bool)].reshape(n, n - 1)
    margin = tol.eps_eq * scale
    d = np.real(d)
    rows_ok = n == 1 or bool(np.all(d - off.max(axis=1) > margin))
    cols_ok = n == 1 or bool(np.all(d - off_t.max(axis=1) > margin))
    if not (rows_ok or cols_ok):
        raise HypothesisViolated("diagonal must strictly dominate every row or every column")


def _phase_set(field: Field):
    if field is Field.REAL:
        return [1.0, -1.0]
    return [1.0, -1.0, 1j, -1j, np.exp(1j * np.pi / 3), np.exp(-2j * np.pi / 3)]


def structured_probes(A, field: Field, max_subset: int = 4):
    """Tie probes: every coordinate subset K carries unimodular entries, zeros elsewhere.

    Includes all-ones, single sign flips, (1, -1, ..., -1) and the pairwise
    (1, +-1, 0, ...) vectors. Each probe is also emitted rotated by the phases
    that make one column of ``A`` nonnegative, so the probes are independent of
    a diagonal unitary change of coordinates.
    """
    n = A.shape[0]
    phases = _phase_set(field)
    base = []
    for size in range(1, n + 1):
        if size > max_subset and size != n:
            continue
        for K in itertools.combinations(range(n), size):
            for pattern in itertools.product(phases, repeat=size - 1):
                x = np.zeros(n, dtype=np.complex128)
                x[K[0]] = 1.0
                x[list(K[1:])] = pattern
                base.append(x)
    base = np.array(base)
    rotations = [np.ones(n, dtype=np.complex128)]
    if field is Field.COMPLEX:
        for r in range(n):
            col = A[:, r]
            rot = np.where(np.abs(col) > 0, np.conj(col) / np.where(np.abs(col) > 0, np.abs(col), 1), 1.0)
            rotations.append(rot)
    probes = np.vstack([base * rot[None, :] for rot in rotations])
    return probes.real.copy() if field is Field.REAL else probes


def _strict_peak_samples(cfg: SampleConfig, n: int, field: Field):
    rng = np.random.default_rng([cfg.seed & _SEED_MASK, 24])
    X = rng.uniform(0.0, 1.0, size=(cfg.count, n)) * _phases(rng, (cfg.count, n), field)
    r = rng.integers(0, n, size=cfg.count)
    X[np.arange(cfg.count), r] = _phases(rng, cfg.count, field)
    return X.astype(field.dtype)


def peaks_preserved(A, cfg: SampleConfig | None = None, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Empirical test that ``y = A^t x`` peaks wherever ``x`` does.

    For ``x`` with peak set K (continuity extends the strict single-peak
    statement to ties), every index of K must belong to the peak set of y.
    Structured probes are always run; ``cfg.count`` random strict-peak
    vectors are added on top. Returns False at the first violation.
    """
    A = np.asarray(A)
    check_dominance(A, tol)
    n = A.shape[0]
    field = Field.COMPLEX if field_of(A) is Field.COMPLEX else Field.REAL
    if cfg is not None and cfg.field is Field.COMPLEX:
        field = Field.COMPLEX
    X = structured_probes(A, field)
    if cfg is not None:
        X = np.vstack([X, _strict_peak_samples(cfg, n, field)])
    Y = X @ A  # rows are (A^t x)^t
    px = peak_mask(X, tol)
    py = peak_mask(Y, tol)
    return bool(np.all(~px | py))


def has_peak_preserving_form(A, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Either a 2x2 Hermitian with equal dominant diagonal, or a scalar matrix."""
    A = np.asarray(A)
    check_dominance(A, tol)
    n = A.shape[0]
    scale = entry_scale(A)
    eps = tol.eps_eq * scale
    if np.all(np.abs(A - A[0, 0] * np.eye(n)) <= eps):
        return True
    if n == 2:
        hermitian = np.all(np.abs(A - np.conj(A.T)) <= eps)
        equal_diag = abs(A[0, 0] - A[1, 1]) <= eps
        return bool(hermitian and equal_diag and np.real(A[0, 0]) - abs(A[0, 1]) > eps)
    return False
