"""Compare the peak-preservation test against the closed-form characterisation
for diagonally dominant matrices, broken down by generator kind."""
import argparse
import collections
from dataclasses import dataclass

import numpy as np

from normpar import Field, SampleConfig, peaks_preserved, has_peak_preserving_form
from normpar.corpus import DOMINANT_KINDS, dominant_matrix


@dataclass(frozen=True)
class SweepConfig:
    per_n: int = 1000
    dims: tuple = (2, 3, 4)
    samples: int = 200
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--per-n", type=int, default=1000)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--samples", type=int, default=200, help="random strict-peak vectors per matrix")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SweepConfig(args.per_n, tuple(args.dims), args.samples, args.seed)

    rng = np.random.default_rng(cfg.seed)
    table = collections.Counter()
    for n in cfg.dims:
        kinds = [k for k in DOMINANT_KINDS if n == 2 or not k.endswith("2")]
        for i in range(cfg.per_n):
            kind, field = kinds[i % len(kinds)], list(Field)[(i // len(kinds)) % 2]
            A = dominant_matrix(kind, n, field, rng)
            sc = SampleConfig(seed=i, count=cfg.samples, dim=n, field=field)
            a, b = peaks_preserved(A, sc), has_peak_preserving_form(A)
            table[(n, kind, a, b)] += 1
    print(f"{'n':>2} {'kind':20s} {'a':>5} {'b':>5} {'count':>6}")
    for (n, kind, a, b), k in sorted(table.items()):
        print(f"{n:>2} {kind:20s} {a!s:>5} {b!s:>5} {k:>6}{'  <-- mismatch' if a != b else ''}")
    mism = sum(k for (_, _, a, b), k in table.items() if a != b)
    print("mismatches:", mism)
    return 1 if mism else 0


if __name__ == "__main__":
    raise SystemExit(main())
