"""The l1, l-infinity and lp (1 < p < inf) norms, and peak sets."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .numeric import DEFAULT_TOL, Tolerance


class NormKind(enum.Enum):
    L1 = "l1"
    LINF = "linf"
    LP = "lp"


@dataclass(frozen=True)
class NormSpec:
    kind: NormKind
    p: float | None = None

    def __post_init__(self):
        if self.kind is NormKind.LP:
            if self.p is None or not (1.0 < self.p < math.inf):
                raise ValueError(f"lp norm needs 1 < p < inf, got p={self.p!r}")
        elif self.p is not None:
            raise ValueError(f"{self.kind.value} takes no exponent")

    @classmethod
    def l1(cls):
        return cls(NormKind.L1)

    @classmethod
    def linf(cls):
        return cls(NormKind.LINF)

    @classmethod
    def lp(cls, p: float):
        return cls(NormKind.LP, float(p))

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        """Parse ``l1``, ``linf`` or ``lp:<p>``.

        The endpoints must be spelled ``l1``/``linf``; ``lp:1`` and ``lp:inf``
        are rejected.
        """
        t = text.strip().lower()
        if t == "l1":
            return cls.l1()
        if t in ("linf", "l-inf", "linfty"):
            return cls.linf()
        if t.startswith("lp:"):
            try:
                p = float(t[3:])
            except ValueError:
                raise ValueError(f"bad exponent in {text!r}") from None
            return cls.lp(p)
        raise ValueError(f"unknown norm {text!r}; expected l1, linf or lp:<p>")

    def __str__(self):
        if self.kind is NormKind.LP:
            return f"lp:{self.p:g}"
        return self.kind.value


@dataclass(frozen=True)
class PeakSet:
    indices: frozenset
    value: float


class ZeroVector(ValueError):
    pass


def norm(x, spec: NormSpec, axis: int = -1):
    """Norm of ``x`` along ``axis``; works on single vectors and stacked batches."""
    a = np.abs(x)
    if spec.kind is NormKind.L1:
        return a.sum(axis=axis)
    if spec.kind is NormKind.LINF:
        return a.max(axis=axis)
    # scale by the max modulus first so large p does not overflow
    top = a.max(axis=axis, keepdims=True)
    safe = np.where(top > 0, top, 1.0)
    s = ((a / safe) ** spec.p).sum(axis=axis) ** (1.0 / spec.p)
    return s * np.squeeze(safe, axis=axis) * (np.squeeze(top, axis=axis) > 0)


def peak_mask(x, tol: Tolerance = DEFAULT_TOL, axis: int = -1):
    """Boolean mask of the coordinates where the max modulus is attained."""
    a = np.abs(x)
    top = a.max(axis=axis, keepdims=True)
    return (a >= top * (1.0 - tol.eps_peak)) & (top > 0)


def peak_set(x, tol: Tolerance = DEFAULT_TOL) -> PeakSet:
    x = np.asarray(x)
    a = np.abs(x)
    top = float(a.max())
    if top == 0.0:
        raise ZeroVector("peak set of the zero vector is undefined")
    idx = np.flatnonzero(peak_mask(x, tol))
    return PeakSet(frozenset(int(i) for i in idx), top)
