"""Command-line front end.

Exit codes: 0 when the verdict holds (preserver / pair / no counterexample),
1 when it fails, 2 on input or validation errors. Output is JSON on stdout
with keys in a fixed order, so identical inputs give byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .corpus import FAMILIES, generate
from .norms import NormSpec
from .numeric import DimensionMismatch, Field, FieldMismatch, Tolerance, as_matrix, as_vector
from .oracle import SampleConfig, empirical_check
from .pairs import PairKind, definitional_check, is_pair
from .preserver import DEFAULT_BUDGET, WitnessNotFound, probe_search, random_search, decide

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- documents

def _entry(e, field):
    if field is Field.REAL:
        if isinstance(e, bool) or not isinstance(e, (int, float)):
            raise InputError(f"real entries must be numbers, got {e!r}")
        return float(e)
    if isinstance(e, (int, float)) and not isinstance(e, bool):
        return complex(e)
    if isinstance(e, list) and len(e) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in e):
        return complex(e[0], e[1])
    raise InputError(f"complex entries must be [re, im] pairs, got {e!r}")


def _field(doc) -> Field:
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    try:
        return Field(doc.get("field"))
    except ValueError:
        raise InputError('"field" must be "real" or "complex"') from None


def parse_matrix(doc) -> np.ndarray:
    field = _field(doc)
    rows = doc.get("rows")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError('"rows" must be a nonempty array of arrays')
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("matrix must be square")
    return as_matrix([[_entry(e, field) for e in r] for r in rows], field)


def parse_vector(doc) -> np.ndarray:
    field = _field(doc)
    entries = doc.get("entries")
    if not isinstance(entries, list) or not entries:
        raise InputError('"entries" must be a nonempty array')
    return as_vector([_entry(e, field) for e in entries], field)


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}") from None


def scalar_doc(z):
    z = complex(z)
    return [z.real, z.imag]


def vector_doc(v, field: Field):
    if field is Field.REAL:
        return [float(np.real(e)) for e in v]
    return [scalar_doc(e) for e in v]


def matrix_doc(T, field: Field) -> dict:
    return {"field": field.value, "rows": [vector_doc(r, field) for r in T]}


def _tol_doc(tol: Tolerance):
    return {"eps_eq": tol.eps_eq, "eps_peak": tol.eps_peak, "eps_rank": tol.eps_rank}


def class_doc(s, field: Field):
    if s is None:
        return None
    out = {"name": s.kind.value}
    if s.gamma is not None:
        out["gamma"] = float(s.gamma)
    if s.beta is not None:
        out["beta"] = scalar_doc(s.beta)
    if s.Q is not None:
        out["Q"] = matrix_doc(s.Q, field)["rows"]
    if s.u is not None:
        out["u"] = vector_doc(s.u, field)
        out["v"] = vector_doc(s.v, field)
    return out


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


# ---------------------------------------------------------------- commands

def _common(args):
    spec = NormSpec.parse(args.norm)
    kind = PairKind(args.mode)
    tol = Tolerance.uniform(args.tol)
    return spec, kind, tol


def _witness_doc(x, y, spec, kind, tol, validation, field):
    mu = is_pair(x, y, spec, kind, tol).mu
    return {
        "x": vector_doc(x, field),
        "y": vector_doc(y, field),
        "mu": scalar_doc(mu) if mu is not None else None,
        "validation": {"criterion": bool(validation["criterion"]), "definitional": bool(validation["definitional"])},
    }


def cmd_check(args, force_search=False) -> int:
    spec, kind, tol = _common(args)
    doc = _load(args.matrix)
    T = parse_matrix(doc)
    field = _field(doc)
    verdict = decide(T, spec, kind, tol, field=field, seed=args.seed, budget=args.budget)
    out = {
        "verdict": "preserver" if verdict.preserver else "not_preserver",
        "class": class_doc(verdict.structure, field),
        "witness": None,
    }
    if not verdict.preserver:
        x, y = verdict.witness
        out["witness"] = _witness_doc(x, y, spec, kind, tol, verdict.validation, field)
    elif force_search:
        found = probe_search(T, spec, kind, tol) or random_search(T, spec, kind, tol, args.seed, args.budget)
        out["search"] = {
            "budget": args.budget,
            "seed": args.seed,
            "counterexample": None if found is None else {
                "x": vector_doc(found[0], field), "y": vector_doc(found[1], field)},
        }
    out.update({
        "norm": str(spec),
        "mode": kind.value,
        "n": int(T.shape[0]),
        "field": field.value,
        "tolerances": _tol_doc(tol),
    })
    _emit(out)
    return EXIT_OK if verdict.preserver else EXIT_FAIL


def cmd_pair(args) -> int:
    spec, kind, tol = _common(args)
    x = parse_vector(_load(args.x))
    y = parse_vector(_load(args.y))
    field = Field.COMPLEX if np.iscomplexobj(x) else Field.REAL
    v = is_pair(x, y, spec, kind, tol)
    out = {
        "holds": v.holds,
        "mu": scalar_doc(v.mu) if v.mu is not None else None,
        "k": None if v.k is None else v.k + 1,
        "definitional": definitional_check(x, y, kind, spec, tol),
        "norm": str(spec),
        "mode": kind.value,
        "n": int(x.shape[0]),
        "field": field.value,
        "tolerances": _tol_doc(tol),
    }
    _emit(out)
    return EXIT_OK if v.holds else EXIT_FAIL


def cmd_fuzz(args) -> int:
    spec, kind, tol = _common(args)
    doc = _load(args.matrix)
    T = parse_matrix(doc)
    field = _field(doc)
    if args.count < 1:
        raise InputError("--count must be positive")
    cfg = SampleConfig(seed=args.seed, count=args.count, dim=T.shape[0], field=field, spec=spec, kind=kind)
    ce = empirical_check(T, cfg, tol)
    out = {
        "checked": args.count if ce is None else ce.index + 1,
        "counterexample": None if ce is None else {
            "index": ce.index,
            "x": vector_doc(ce.x, field),
            "y": vector_doc(ce.y, field),
            "tx": vector_doc(ce.tx, field),
            "ty": vector_doc(ce.ty, field),
        },
        "norm": str(spec),
        "mode": kind.value,
        "n": int(T.shape[0]),
        "field": field.value,
        "seed": args.seed,
        "tolerances": _tol_doc(tol),
    }
    _emit(out)
    return EXIT_OK if ce is None else EXIT_FAIL


def cmd_gen(args) -> int:
    field = Field(args.field)
    T = generate(args.family, args.n, field, seed=args.seed)
    _emit(matrix_doc(T, field))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _default_seed() -> int:
    raw = os.environ.get("NORMPAR_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"NORMPAR_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="normpar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def norm_opts(p, seeded=True):
        p.add_argument("--norm", required=True, help="l1, linf or lp:<p> with 1 < p < inf")
        p.add_argument("--mode", required=True, choices=[k.value for k in PairKind])
        p.add_argument("--tol", type=float, default=1e-9, help="relative tolerance (default 1e-9)")
        if seeded:
            p.add_argument("--seed", type=int, default=None, help="defaults to $NORMPAR_SEED or 0")

    for name, help_ in (("check", "decide whether a matrix preserves pairs"),
                        ("witness", "check, and always run the witness search")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("matrix")
        norm_opts(p)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="random witness search budget")

    p = sub.add_parser("pair", help="test whether two vectors form a pair")
    p.add_argument("x")
    p.add_argument("y")
    norm_opts(p, seeded=False)

    p = sub.add_parser("fuzz", help="sample pairs and look for a counterexample")
    p.add_argument("matrix")
    norm_opts(p)
    p.add_argument("--count", type=int, default=10_000)

    p = sub.add_parser("gen", help="emit a seeded matrix document")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="real", choices=[f.value for f in Field])
    p.add_argument("--seed", type=int, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        if args.command == "check":
            return cmd_check(args)
        if args.command == "witness":
            return cmd_check(args, force_search=True)
        if args.command == "pair":
            return cmd_pair(args)
        if args.command == "fuzz":
            return cmd_fuzz(args)
        return cmd_gen(args)
    except (InputError, FieldMismatch, DimensionMismatch, ValueError, TypeError) as exc:
        _emit({"error": str(exc)})
        print(f"normpar: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except WitnessNotFound as exc:
        _emit({"error": f"witness search exhausted: {exc}"})
        print(f"normpar: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
