"""Command-line front end: every engine behind one reproducible binary.

Output is machine-readable JSON by default (CSV flattens the same
records for table diffs).  Exact fields print as p/q strings so golden
files stay lossless; every stochastic record embeds the seed, sample
count, and worker cap that produced it.  Exit codes: 0 success, 2 usage
error, 3 cost-gate refusal, 4 internal assertion failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import entropy, irreps, moments, sampling, su2, tableaux
from .moments import UnsupportedIntegralError
from .tensors import CostGateError

SEED_ENV = "HAARINT_SEED"

EXIT_USAGE = 2
EXIT_COST = 3
EXIT_ASSERT = 4


def _frac(x: Fraction) -> str:
    return str(x)


def _flatten(value, prefix, out):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(v, f"{prefix}.{k}" if prefix else str(k), out)
    elif isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            _flatten(v, f"{prefix}.{i}", out)
    else:
        out[prefix] = value


def _emit(records: list, fmt: str):
    if fmt == "json":
        payload = records[0] if len(records) == 1 else records
        print(json.dumps(payload, indent=2))
        return
    rows = []
    columns: list[str] = []
    for rec in records:
        flat: dict = {}
        _flatten(rec, "", flat)
        for key in flat:
            if key not in columns:
                columns.append(key)
        rows.append(flat)
    writer = csv.writer(sys.stdout)
    writer.writerow(columns)
    for flat in rows:
        writer.writerow([flat.get(c, "") for c in columns])


def _resolve_seed(args, needed: bool):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV} must be an integer, got {env!r}")
    if needed:
        raise ValueError(
            f"stochastic output needs --seed (or {SEED_ENV} in the "
            f"environment) for reproducibility")
    return None


def _common(record: dict, args, seed=None) -> dict:
    record["seed"] = seed
    record["threads"] = args.threads
    return record


def _parse_shape(text: str):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"bad shape string {text!r}; expected like 2,1")


def _parse_factors(text: str):
    """Inline monomial factors: 'i,j,+;i,j,-' with '+' plain, '-' bar."""
    out = []
    for part in text.split(";"):
        bits = [b.strip() for b in part.split(",")]
        if len(bits) not in (2, 3):
            raise ValueError(f"bad factor {part!r}; expected i,j or i,j,+/-")
        conj = False
        if len(bits) == 3:
            if bits[2] not in ("+", "-"):
                raise ValueError(f"conjugation mark must be + or -, got {bits[2]!r}")
            conj = bits[2] == "-"
        out.append(moments.Factor(int(bits[0]), int(bits[1]), conj))
    return out


# ---------------------------------------------------------------------------
# subcommands

def cmd_tableaux(args) -> list:
    shape = _parse_shape(args.shape)
    if args.group == "GL":
        listing = tableaux.enumerate_gl_tableaux(shape, args.N)
    elif args.group == "O":
        listing = tableaux.enumerate_o_tableaux(shape, args.N)
    elif args.group == "Sp":
        listing = tableaux.enumerate_sp_tableaux(shape, args.N)
    else:
        raise ValueError(f"unknown tableau group {args.group!r}")
    record = _common({
        "command": "tableaux", "group": args.group, "N": args.N,
        "shape": list(shape), "count": len(listing),
        "tableaux": [t.rows for t in listing],
    }, args)
    return [record]


def _load_spec_file(path: str):
    with open(path) as fh:
        return json.load(fh)


def _integral_record(args, spec, n, kind):
    record = {"command": "integral", "kind": kind,
              "group": spec.group, "N": n, "mode": args.mode}
    want = {"exact", "leading", "mc"} if args.mode == "all" else {args.mode}
    seed = _resolve_seed(args, needed="mc" in want)
    if kind == "irrep":
        record["factors"] = spec.to_dict()["factors"]
        if {"exact", "leading"} & want:
            record["dropped_basis_vectors"] = sum(
                b.dropped for b in irreps._bases_for(spec))
        if "exact" in want:
            record["exact"] = _frac(irreps.integrate_irrep_exact(spec))
        if "leading" in want:
            record["leading"] = _frac(irreps.asymptotic_irrep(spec))
        if "mc" in want:
            est = irreps.integrate_irrep_mc(spec, samples=args.samples,
                                            seed=seed)
            record["mc"] = est.to_json_dict()
    else:
        record["factors"] = spec.to_dict(n)["factors"]
        if "exact" in want:
            record["exact"] = _frac(moments.exact_integral(spec, n))
        if "leading" in want:
            record["leading"] = _frac(moments.asymptotic_leading(spec, n))
        if "mc" in want:
            def draw(stream):
                u = sampling.sample_group(spec.group, n, stream)
                return moments.evaluate_monomial(spec, u.matrix)
            est = sampling.mc_expectation(draw, samples=args.samples,
                                          seed=seed)
            record["mc"] = est.to_json_dict()
    record["samples"] = args.samples if "mc" in want else None
    return [_common(record, args, seed)]


def cmd_integral(args) -> list:
    if args.spec:
        data = _load_spec_file(args.spec)
        if any("lambda" in f for f in data.get("factors", [])):
            spec = irreps.RepMatrixElementSpec.from_dict(data)
            return _integral_record(args, spec, spec.n, "irrep")
        spec, n = moments.MonomialSpec.from_dict(data)
        return _integral_record(args, spec, n, "monomial")
    if args.group is None or args.N is None or args.factors is None:
        raise ValueError("inline mode needs --group, --N, and --factors")
    spec = moments.MonomialSpec(args.group, _parse_factors(args.factors))
    spec.validate(args.N)
    return _integral_record(args, spec, args.N, "monomial")


def cmd_su2(args) -> list:
    if args.spec:
        spec = su2.Su2MonomialSpec.from_dict(_load_spec_file(args.spec))
    elif args.factors:
        factors = []
        for part in args.factors.split(";"):
            bits = [b.strip() for b in part.split(",")]
            if len(bits) not in (3, 4):
                raise ValueError(
                    f"bad factor {part!r}; expected twice_j,twice_mp,twice_m[,+/-]")
            conj = len(bits) == 4 and bits[3] == "-"
            factors.append(su2.Su2Factor(int(bits[0]), int(bits[1]),
                                         int(bits[2]), conj))
        spec = su2.Su2MonomialSpec(factors)
    else:
        raise ValueError("need --spec or --factors")
    closed = su2.su2_integral_closed(spec)
    quad = su2.su2_integral_quadrature(spec, nodes=args.nodes)
    record = _common({
        "command": "su2", "factors": spec.to_dict()["factors"],
        "nodes": args.nodes, "closed": closed, "quadrature": quad,
        "difference": abs(closed - quad),
    }, args)
    return [record]


def _int_list(text: str):
    return [int(p) for p in text.split(",")]


def cmd_entropy(args) -> list:
    seed = _resolve_seed(args, needed=True)
    records = []
    pairs = [(m, n) for m in _int_list(args.m) for n in _int_list(args.n)
             if m <= n]
    if not pairs:
        raise ValueError("no (m, n) pairs with m <= n in the requested grid")
    for i, (m, n) in enumerate(pairs):
        est = entropy.mc_average_entropy(m, n, samples=args.samples,
                                         seed=seed + i)
        records.append(_common({
            "command": "entropy", "m": m, "n": n,
            "exact": _frac(entropy.page_entropy_fraction(m, n)),
            "exact_float": entropy.page_entropy_exact(m, n),
            "approx": entropy.page_entropy_approx(m, n),
            "mc": est.to_json_dict(), "samples": args.samples,
        }, args, seed))
    return records


def cmd_sample(args) -> list:
    seed = _resolve_seed(args, needed=True)
    matrices = []
    for i in range(args.count):
        s = sampling.sample_group(args.group, args.N,
                                  sampling.RngStream(seed, i))
        det = complex(np.linalg.det(s.matrix))
        matrices.append({
            "index": i,
            "det_re": det.real, "det_im": det.imag,
            "matrix_re": s.matrix.real.tolist(),
            "matrix_im": s.matrix.imag.tolist(),
        })
    record = _common({
        "command": "sample", "group": args.group, "N": args.N,
        "count": args.count, "matrices": matrices,
    }, args, seed)
    return [record]


# ---------------------------------------------------------------------------
# wiring

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--samples", type=int, default=10000)
    common.add_argument("--threads", type=int, default=1,
                        help="worker cap; never changes results")

    parser = argparse.ArgumentParser(
        prog="haarint",
        description="Exact and asymptotic Haar integrals over the "
                    "classical compact groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tableaux", parents=[common],
                       help="enumerate admissible fillings of a shape")
    p.add_argument("--shape", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--group", choices=("GL", "O", "Sp"), default="GL")
    p.set_defaults(func=cmd_tableaux)

    p = sub.add_parser("integral", parents=[common],
                       help="monomial or matrix-element Haar integral")
    p.add_argument("--spec", help="JSON spec file (lambda keys pick the "
                                  "representation path)")
    p.add_argument("--group", choices=("U", "SU", "O", "SO", "Sp"))
    p.add_argument("--N", type=int)
    p.add_argument("--factors", help="inline 'i,j,+;i,j,-' (+ plain, - bar)")
    p.add_argument("--mode", choices=("exact", "leading", "mc", "all"),
                   default="exact")
    p.set_defaults(func=cmd_integral)

    p = sub.add_parser("su2", parents=[common],
                       help="closed-form spin average vs quadrature")
    p.add_argument("--spec")
    p.add_argument("--factors",
                   help="inline 'twice_j,twice_mp,twice_m,+/-;...'")
    p.add_argument("--nodes", type=int, default=32)
    p.set_defaults(func=cmd_su2)

    p = sub.add_parser("entropy", parents=[common],
                       help="average marginal entropy: exact, approx, MC")
    p.add_argument("--m", required=True, help="comma list of left dimensions")
    p.add_argument("--n", required=True, help="comma list of right dimensions")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("sample", parents=[common],
                       help="draw Haar-distributed matrices")
    p.add_argument("--group", choices=("U", "SU", "O", "SO", "Sp"),
                   required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        records = args.func(args)
    except CostGateError as e:
        print(f"cost gate: {e}", file=sys.stderr)
        return EXIT_COST
    except UnsupportedIntegralError as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, TypeError, OSError,
            json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as e:
        print(f"internal assertion: {e}", file=sys.stderr)
        return EXIT_ASSERT
    _emit(records, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
