"""Command-line front end.

Subcommands: invariant, identities, dehn, homology, rings, frame, report.
Outputs are deterministic JSON for a fixed configuration; `identities run`
exits nonzero when any requested check fails.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .cellcomplex import CellComplex
from .cone import Cone
from .element import Element, from_cone, from_polytope
from .jsonio import dump_value, load_geometry
from .metric import AbstractEuclideanComplex
from .named import (
    alpha,
    delta_l,
    e2_coords,
    l_probes,
    parse_expr,
    realize,
    verify_tables,
)
from .polytope import Polytope
from .ringvalue import Poly
from .solid import McOptions
from .star import build, eval_convex, eval_element, frame_invariant_direct, frame_star_coefficient
from .suites import SUITES, RunConfig, run_suite

REPORT_SCHEMA_VERSION = 1


def _emit(payload, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _element_from_file(path: str) -> Element:
    obj = load_geometry(path)
    if isinstance(obj, Element):
        return obj
    if isinstance(obj, Polytope):
        return from_polytope(obj)
    if isinstance(obj, Cone):
        return from_cone(obj)
    if isinstance(obj, CellComplex):
        from .element import indicator

        return indicator(obj)
    raise SystemExit("input file does not describe an element, polytope, or cone")


def cmd_invariant(args) -> int:
    xi = _element_from_file(args.input)
    dim = args.dim if args.dim is not None else xi.complex.ambient
    inv = build(args.name)
    mc = McOptions(args.mc_samples, args.seed)
    value = eval_element(inv, xi, dim, mc)
    payload = {
        "schema": REPORT_SCHEMA_VERSION,
        "invariant": args.name,
        "input": args.input,
        "dim": dim,
        "tol": args.tol,
        "value": dump_value(value),
    }
    if args.name == "intrinsic" and isinstance(value, Poly):
        payload["coefficients"] = {
            f"chi{_mono_degree(m)}": dump_value(c) for m, c in value.terms
        }
    _emit(payload, args)
    return 0


def _mono_degree(mono) -> int:
    return sum(e for _, e in mono)


def _parse_dims(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    return (int(lo), int(hi or lo))


def cmd_identities(args) -> int:
    cfg = RunConfig(
        seed=args.seed,
        mc_samples=args.mc_samples,
        tol=args.tol,
        max_denominator=args.max_denominator,
        dims=_parse_dims(args.dims),
        cases=args.cases,
    )
    rows = run_suite(args.suite, cfg)
    all_pass = all(r["pass"] for r in rows)
    payload = {
        "schema": REPORT_SCHEMA_VERSION,
        "config": {
            "suite": args.suite,
            "seed": cfg.seed,
            "mc_samples": cfg.mc_samples,
            "tol": cfg.tol,
            "max_denominator": cfg.max_denominator,
            "dims": list(cfg.dims),
            "cases": cfg.cases,
        },
        "cases": rows,
        "all_pass": all_pass,
    }
    _emit(payload, args)
    return 0 if all_pass else 1


def cmd_dehn(args) -> int:
    from .ringvalue import add, neg, normalize_tensor, tensor_irrational_part, tensor_rational_part
    from .suites import edge_tensor

    pa = load_geometry(args.a)
    pb = load_geometry(args.b)
    if not isinstance(pa, Polytope) or not isinstance(pb, Polytope):
        raise SystemExit("dehn expects two polytope files")
    mc = McOptions(args.mc_samples, args.seed)
    ta, tb = edge_tensor(pa, mc), edge_tensor(pb, mc)
    diff = normalize_tensor(add(ta, neg(tb)), args.max_denominator, args.tol)
    residue = tensor_irrational_part(diff)
    obstructed = bool(residue.terms)
    va, vb = pa.volume_value(), pb.volume_value()
    payload = {
        "schema": REPORT_SCHEMA_VERSION,
        "a": {"file": args.a, "volume": va[1], "edge_tensor": dump_value(ta)},
        "b": {"file": args.b, "volume": vb[1], "edge_tensor": dump_value(tb)},
        "difference": dump_value(diff),
        "rational_bucket": str(tensor_rational_part(diff)),
        "irrational_residue": dump_value(residue),
        "policy": {"max_denominator": args.max_denominator, "tol": args.tol},
        "verdict": "obstructed" if obstructed else "compatible",
        "note": (
            "the irrational residue scales linearly under dilatation, so a"
            " nonzero residue rules out scissors congruence at every volume"
        ),
    }
    _emit(payload, args)
    return 0


def cmd_homology(args) -> int:
    from .homology import ChainBasis, homology_table, is_killed_by_two

    k = load_geometry(args.input)
    if isinstance(k, Element):
        k = k.complex
    if not isinstance(k, CellComplex):
        from .cellcomplex import complex_from_cell

        k = complex_from_cell(k)
    table = homology_table(k, args.max_n)
    chain = ChainBasis(k)
    killed = all(is_killed_by_two(chain, n) for n in range(args.max_n + 1))
    payload = {
        "schema": REPORT_SCHEMA_VERSION,
        "input": args.input,
        "table": table,
        "killed_by_two": killed,
    }
    _emit(payload, args)
    return 0


def cmd_rings(args) -> int:
    if args.rings_cmd == "verify-tables":
        rows = verify_tables()
        payload = {
            "schema": REPORT_SCHEMA_VERSION,
            "cases": rows,
            "all_pass": all(r["pass"] for r in rows),
        }
        _emit(payload, args)
        return 0 if payload["all_pass"] else 1
    if args.rings_cmd == "e2":
        obj = load_geometry(args.input)
        xi = from_polytope(obj) if isinstance(obj, Polytope) else obj
        chi, chi1, v2 = e2_coords(xi)
        _emit(
            {
                "schema": REPORT_SCHEMA_VERSION,
                "chi": dump_value(chi),
                "chi1": dump_value(chi1),
                "V2": dump_value(v2),
            },
            args,
        )
        return 0
    if args.rings_cmd == "alpha":
        obj = load_geometry(args.input)
        if not isinstance(obj, Polytope):
            raise SystemExit("alpha expects a polytope file")
        val = alpha(obj, args.i, sydler=args.sydler)
        _emit({"schema": REPORT_SCHEMA_VERSION, "i": args.i, "alpha": dump_value(val)}, args)
        return 0
    if args.rings_cmd == "delta":
        expr = parse_expr(args.expr)
        n = args.n if args.n is not None else expr.degree()
        out = delta_l(expr, n)
        probes = l_probes(out, n - 1)
        _emit(
            {
                "schema": REPORT_SCHEMA_VERSION,
                "expr": args.expr,
                "stage": n,
                "probes": {k: dump_value(v) if not isinstance(v, int) else v for k, v in probes.items()},
            },
            args,
        )
        return 0
    raise SystemExit(f"unknown rings subcommand {args.rings_cmd!r}")


def _parse_frame(text: str):
    frame = []
    for row in text.split(";"):
        frame.append(tuple(Fraction(x) for x in row.split(",")))
    return frame


def cmd_frame(args) -> int:
    p = load_geometry(args.input)
    if not isinstance(p, Polytope):
        raise SystemExit("frame expects a polytope file")
    frame = _parse_frame(args.frame)
    direct = frame_invariant_direct(frame, p)
    via_star = frame_star_coefficient(frame, p, McOptions(args.mc_samples, args.seed))
    from .ringvalue import eq_within

    _emit(
        {
            "schema": REPORT_SCHEMA_VERSION,
            "frame": [[str(x) for x in u] for u in frame],
            "direct": dump_value(direct),
            "transported": dump_value(via_star),
            "agree": eq_within(direct, via_star, args.tol),
        },
        args,
    )
    return 0


def cmd_report(args) -> int:
    rows = []
    for path in args.inputs:
        with open(path) as fh:
            data = json.load(fh)
        for case in data.get("cases", []):
            rows.append(
                {
                    "suite": case.get("suite", ""),
                    "case": case.get("case", ""),
                    "law": case.get("law", ""),
                    "tol": case.get("tol", ""),
                    "pass": case.get("pass", ""),
                }
            )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=["suite", "case", "law", "tol", "pass"])
            writer.writeheader()
            writer.writerows(rows)
    payload = {
        "schema": REPORT_SCHEMA_VERSION,
        "total": len(rows),
        "passed": sum(1 for r in rows if r["pass"]),
        "all_pass": all(r["pass"] for r in rows) if rows else True,
    }
    _emit(payload, args)
    return 0 if payload["all_pass"] else 1


def _add_common(p) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mc-samples", type=int, default=10**6, dest="mc_samples")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-denominator", type=int, default=10**4, dest="max_denominator")
    p.add_argument("--output", help="write the JSON report here instead of stdout")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="valgebra",
        description="Exact valuation algebra for polytopes, cones and their invariants.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("invariant", help="evaluate a named invariant on a geometry file")
    psub = p.add_subparsers(dest="inv_cmd", required=True)
    pe = psub.add_parser("eval")
    pe.add_argument("--name", required=True)
    pe.add_argument("--input", required=True)
    pe.add_argument("--dim", type=int, default=None)
    _add_common(pe)
    pe.set_defaults(func=cmd_invariant)

    p = sub.add_parser("identities", help="run an identity suite")
    psub = p.add_subparsers(dest="id_cmd", required=True)
    pr = psub.add_parser("run")
    pr.add_argument("--suite", required=True, help=f"one of {sorted(SUITES)} or 'all'")
    pr.add_argument("--dims", default="0..3")
    pr.add_argument("--cases", type=int, default=None)
    _add_common(pr)
    pr.set_defaults(func=cmd_identities)

    p = sub.add_parser("dehn", help="compare the edge tensors of two polytopes")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_dehn)

    p = sub.add_parser("homology", help="boundary-operator homology of a complex")
    p.add_argument("--input", required=True)
    p.add_argument("--max-n", type=int, default=6, dest="max_n")
    _add_common(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("rings", help="graded-ring tables and coordinates")
    psub = p.add_subparsers(dest="rings_cmd", required=True)
    pv = psub.add_parser("verify-tables")
    _add_common(pv)
    pv.set_defaults(func=cmd_rings, rings_cmd="verify-tables")
    pe2 = psub.add_parser("e2")
    pe2.add_argument("--input", required=True)
    _add_common(pe2)
    pe2.set_defaults(func=cmd_rings, rings_cmd="e2")
    pa = psub.add_parser("alpha")
    pa.add_argument("--i", type=int, required=True)
    pa.add_argument("--input", required=True)
    pa.add_argument("--sydler", action="store_true")
    _add_common(pa)
    pa.set_defaults(func=cmd_rings, rings_cmd="alpha")
    pd = psub.add_parser("delta")
    pd.add_argument("--expr", required=True)
    pd.add_argument("--n", type=int, default=None)
    _add_common(pd)
    pd.set_defaults(func=cmd_rings, rings_cmd="delta")

    p = sub.add_parser("frame", help="frame invariant, direct and transported")
    p.add_argument("--input", required=True)
    p.add_argument("--frame", required=True, help="semicolon-separated rows, e.g. '1,0;0,1'")
    _add_common(p)
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("report", help="aggregate suite reports into a CSV summary")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--csv", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_report)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
