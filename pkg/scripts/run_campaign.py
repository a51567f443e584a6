"""Decide every corpus matrix and fuzz the preservers.

Each line of output is one (family, n, field, norm, mode) cell: how many
matrices were preservers, how many of those survived the fuzz, and how many
non-preserver witnesses validated.

    python3 scripts/run_campaign.py --seeds 20 --count 2000 --workers 4
"""
import argparse
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from normpar import Field, NormSpec, PairKind, SampleConfig, decide, empirical_check
from normpar.corpus import FAMILIES, generate


@dataclass(frozen=True)
class CampaignConfig:
    seeds: int = 20
    count: int = 2000
    dims: tuple = (2, 3, 4)
    norms: tuple = ("l1", "linf")
    workers: int = 1


def run_cell(cell):
    family, n, field, norm, mode, seeds, count = cell
    spec, kind = NormSpec.parse(norm), PairKind(mode)
    preservers = survived = witnesses = validated = 0
    for seed in range(seeds):
        T = generate(family, n, field, seed)
        verdict = decide(T, spec, kind, seed=seed)
        if verdict.preserver:
            preservers += 1
            cfg = SampleConfig(seed=seed, count=count, dim=n, field=field, spec=spec, kind=kind)
            survived += empirical_check(T, cfg) is None
        else:
            witnesses += 1
            validated += verdict.validated
    return {"family": family, "n": n, "field": field.value, "norm": norm, "mode": mode,
            "preservers": preservers, "survived_fuzz": survived, "witnesses": witnesses, "validated": validated}


def cells(cfg: CampaignConfig):
    for family, n, field, norm, mode in itertools.product(FAMILIES, cfg.dims, Field, cfg.norms, ("tea", "parallel")):
        if family == "c2" and n != 2:
            continue
        yield family, n, field, norm, mode, cfg.seeds, cfg.count


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    cfg = CampaignConfig(seeds=args.seeds, count=args.count, dims=tuple(args.dims), workers=args.workers)
    print(json.dumps({"config": asdict(cfg)}))
    bad = 0
    with ProcessPoolExecutor(cfg.workers) as pool:
        for row in pool.map(run_cell, cells(cfg)):
            bad += row["preservers"] - row["survived_fuzz"] + row["witnesses"] - row["validated"]
            print(json.dumps(row))
    print(json.dumps({"inconsistent": bad}))
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
