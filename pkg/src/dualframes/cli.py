"""Command-line front end.

Every command prints a JSON document on stdout (or to ``--json PATH``).
Exit codes: 0 success, 2 input/parse errors, 3 mathematical preconditions,
4 failed verifications.
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import erasure, frame, graph, optimality
from .errors import DualFramesError
from .erasure import MeasureParams, round_sig


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _FileError(f"cannot read {path}: {exc.strerror}") from None


class _FileError(DualFramesError):
    exit_code = 2


def _emit(doc, dest):
    text = json.dumps(doc, indent=2) + "\n"
    if dest:
        Path(dest).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _params(args):
    return MeasureParams(args.p, allow_p1=args.allow_p1)


def _load_pair(args):
    f = frame.load_frame(_read(args.frame))
    if args.canonical:
        return frame.canonical_dual(f, args.tol_dual)
    g = frame.load_frame(_read(args.dual))
    return frame.verify_dual(f, g, args.tol_dual)


def cmd_build(args):
    g = graph.parse_edge_list(_read(args.graph))
    f = frame.frame_from_graph(g)
    spec = graph.spectrum(g)
    tight = frame.is_tight(f)
    header = f"L_Gamma({f.count},{f.dim}) frame from {Path(args.graph).name}; row i = f_i"
    Path(args.output).write_text(frame.format_frame_csv(f, header), encoding="utf-8")
    residual = float(np.linalg.norm(frame.gramian(f) - spec.laplacian))
    _emit({
        "N": f.count,
        "n": f.dim,
        "laplacian_spectrum": [round_sig(v) for v in spec.eigen.values],
        "components": spec.components,
        "algebraic_connectivity": round_sig(spec.algebraic_connectivity),
        "frame_bounds": [round_sig(f.lower), round_sig(f.upper)],
        "tight": tight is not None,
        "A": round_sig(tight),
        "gramian_residual": round_sig(residual),
        "frame_csv": str(args.output),
    }, args.json)
    return 0


def cmd_analyze(args):
    pair = _load_pair(args)
    report = optimality.classify(pair, _params(args), args.tol_class, args.tol_uniform)
    _emit(report.to_dict(), args.json)
    return 0


def cmd_check(args):
    pair = _load_pair(args)
    verdict = optimality.uniformity(pair, args.tol_uniform)
    report = optimality.classify(pair, _params(args), args.tol_class, args.tol_uniform)
    doc = {
        "N": pair.count,
        "n": pair.dim,
        "one_uniform": verdict.one_uniform,
        "two_uniform": verdict.two_uniform,
        "diagonal_value": round_sig(verdict.diagonal_value),
        "offdiag_product": round_sig(verdict.offdiag_product),
        "flags": report.to_dict()["flags"],
    }
    _emit(doc, args.json)
    return 0


def cmd_search(args):
    f = frame.load_frame(_read(args.frame))
    result = optimality.search_optimal_dual(
        f, _params(args), radius=args.radius, steps=args.steps, samples=args.samples,
        seed=args.seed, grid_max_dim=args.grid_max_dim, strict_radius=args.strict_radius,
        keep_trace=bool(args.trace))
    if args.trace:
        dim = result.trace.shape[1] - 1
        lines = [",".join([f"h_{i + 1}" for i in range(dim)] + ["value"])]
        lines += [",".join(repr(float(x)) for x in row) for row in result.trace]
        Path(args.trace).write_text("\n".join(lines) + "\n", encoding="utf-8")
    doc = result.to_dict()
    doc["p"] = round_sig(args.p)
    _emit(doc, args.json)
    return 0


def cmd_bounds(args):
    b = erasure.bounds(args.N, args.n)
    _emit({"N": args.N, "n": args.n, "delta1": round_sig(b.delta1),
           "delta2_lower": round_sig(b.delta2_lower)}, args.json)
    return 0


def cmd_graph_dump(args):
    sys.stdout.write(graph.format_edge_list(graph.parse_edge_list(_read(args.graph))))
    return 0


def _add_measure_opts(p):
    p.add_argument("-p", type=float, default=2.0, help="measure exponent, must exceed 1 (default 2)")
    p.add_argument("--allow-p1", action="store_true",
                   help="permit p = 1 (outside the optimality theory; exploratory)")


def _add_pair_opts(p):
    p.add_argument("frame", help="frame CSV (row i = f_i)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dual", help="dual frame CSV")
    src.add_argument("--canonical", action="store_true", help="use the canonical dual S^-1 F")
    p.add_argument("--tol-dual", type=float, default=frame.DUAL_TOL,
                   help=f"dual verification tolerance (default {frame.DUAL_TOL:g})")
    p.add_argument("--tol-class", type=float, default=optimality.CLASS_TOL,
                   help=f"measure-equals-bound tolerance (default {optimality.CLASS_TOL:g})")
    p.add_argument("--tol-uniform", type=float, default=optimality.UNIFORM_TOL,
                   help=f"uniformity tolerance (default {optimality.UNIFORM_TOL:g})")
    _add_measure_opts(p)


def build_parser():
    ap = argparse.ArgumentParser(prog="dualframes", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an L_Gamma(N,n) frame from an edge list")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("-o", "--output", required=True, help="frame CSV to write")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", help="erasure measures, bounds and flags for a dual pair")
    _add_pair_opts(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="uniformity verdict and optimality flags")
    _add_pair_opts(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="scan E_1^p over the duals of a corank-1 frame")
    p.add_argument("frame", help="frame CSV with N = n + 1")
    _add_measure_opts(p)
    p.add_argument("--radius", type=float, default=1.0, help="grid half-width and ball radius (default 1)")
    p.add_argument("--steps", type=int, default=11, help="grid points per axis, odd (default 11)")
    p.add_argument("--samples", type=int, default=1000, help="random points in the ball (default 1000)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--grid-max-dim", type=int, default=4,
                   help="largest dimension that gets a full grid (default 4)")
    p.add_argument("--strict-radius", type=float, default=1e-6,
                   help="|h| beyond which values must exceed the h = 0 value (default 1e-6)")
    p.add_argument("--trace", help="write every evaluated (h, value) to this CSV")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="optimal one-erasure value and two-erasure lower bound")
    p.add_argument("N", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("graph-dump", help="print an edge list in canonical form")
    p.add_argument("graph")
    p.set_defaults(func=cmd_graph_dump)

    p = sub.add_parser("graph", help="graph utilities ('graph dump FILE')")
    p.add_argument("action", choices=["dump"])
    p.add_argument("graph")
    p.set_defaults(func=cmd_graph_dump)

    for name, action in sub.choices.items():
        if name not in ("graph-dump", "graph"):
            action.add_argument("--json", help="write the JSON result here instead of stdout")
        else:
            action.set_defaults(json=None)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DualFramesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
