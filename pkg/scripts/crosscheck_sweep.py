"""Sweep the l-infinity cross-check (TEA preserver, rank > 1 parallel preserver,
positive multiple of a generalized permutation) over the corpus."""
import argparse
import collections
from dataclasses import dataclass

import numpy as np

from normpar import Field, linf_characterisations_agree
from normpar.corpus import FAMILIES, generate


@dataclass(frozen=True)
class SweepConfig:
    per_n: int = 1000
    dims: tuple = (3, 4, 5)


def sweep(cfg: SweepConfig):
    families = [f for f in FAMILIES if f != "c2"]
    failures = collections.Counter()
    seen = collections.Counter()
    for n in cfg.dims:
        for seed in range(cfg.per_n):
            family = families[seed % len(families)]
            field = list(Field)[(seed // len(families)) % 2]
            T = generate(family, n, field, seed)
            if not np.any(T):
                continue
            seen[family] += 1
            if not linf_characterisations_agree(T):
                failures[(family, n, field.value)] += 1
    return seen, failures


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--per-n", type=int, default=1000)
    ap.add_argument("--dims", type=int, nargs="+", default=[3, 4, 5])
    args = ap.parse_args()
    seen, failures = sweep(SweepConfig(args.per_n, tuple(args.dims)))
    for family, k in sorted(seen.items()):
        print(f"{family:12s} {k:6d}")
    for key, k in failures.items():
        print("FAIL", key, k)
    print("disagreements:", sum(failures.values()))
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
