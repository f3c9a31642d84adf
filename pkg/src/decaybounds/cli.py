"""Command-line front end.

Subcommands: ``bound`` (single-matrix bound vs oracle CSV), ``kron``
(Kronecker-sum column CSV), ``oracle`` (exact column CSV), ``figure``
(bundled presets), ``compare`` (CSV plus dominance summary, optional
self-check) and ``surface`` (full-matrix dump of a grid-operator
function).

Exit codes: 0 success, 1 usage error, 2 numerical failure (a quadrature
did not converge), 3 dominance violation detected in self-check mode.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import figures, oracle
from .figures import FIGURE_IDS, FigureSpec
from .matrices import KroneckerSum, MatrixFormatError, parse_matrix_spec


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_matrix_flags(p):
    p.add_argument("--matrix", required=True,
                   help="generator (tridiag, pentadiag, tridiag:a,b,c, "
                        "pentadiag:a,b,c,d,e) or a Matrix Market file path")
    p.add_argument("--n", type=int, default=200,
                   help="matrix order for generators (default 200)")


def _add_common_flags(p):
    p.add_argument("--quad-tol", type=float, default=1e-8,
                   help="quadrature tolerance (default 1e-8)")
    p.add_argument("--quad-max-panels", type=int, default=10000,
                   help="maximum adaptive panels per integral")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")


def build_parser():
    parser = _Parser(prog="decay",
                     description="Entrywise decay bounds for Hermitian matrix "
                                 "functions, with exact-oracle comparison")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("bound", "compare"):
        p = sub.add_parser(name, help="bound vs oracle for one column")
        _add_matrix_flags(p)
        p.add_argument("--function", default=None,
                       help="inv | exp | phi1 | inv_sqrt | inv_pow:s | "
                            "log1p_inv | expsqrt:t | log1p_over_z")
        p.add_argument("--class", dest="klass", required=True,
                       choices=("laplace", "cauchy", "exp", "resolvent"))
        p.add_argument("--tau", type=float, default=1.0)
        p.add_argument("--zeta", type=float, default=0.0)
        p.add_argument("--column", type=int, required=True)
        p.add_argument("--distance", choices=("band", "graph"), default="band")
        p.add_argument("--pattern-drop-tol", type=float, default=0.0,
                       help="drop pattern edges with |value| <= tol (default 0: "
                            "exact nonzero pattern)")
        _add_common_flags(p)
        if name == "compare":
            p.add_argument("--self-check", action="store_true",
                           help="exit 3 if any dominance violation is found")

    p = sub.add_parser("kron", help="Kronecker-sum column bound vs oracle")
    p.add_argument("--factors", required=True,
                   help="comma-separated factor generators/files, e.g. "
                        "tridiag,tridiag")
    p.add_argument("--n", type=int, default=20, help="factor order (default 20)")
    p.add_argument("--function", default=None)
    p.add_argument("--class", dest="klass", required=True,
                   choices=("laplace", "cauchy", "exp"))
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--column", required=True,
                   help="linear index t, or components k1,k2[,k3]")
    _add_common_flags(p)

    p = sub.add_parser("oracle", help="exact column of f(M)")
    _add_matrix_flags(p)
    p.add_argument("--function", required=True)
    p.add_argument("--class", dest="klass", default="laplace",
                   choices=("laplace", "cauchy", "exp", "resolvent"))
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--zeta", type=float, default=0.0)
    p.add_argument("--column", type=int, required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("figure", help="run a bundled figure preset")
    p.add_argument("figure_id", help=f"one of: {', '.join(FIGURE_IDS)}")
    p.add_argument("--matrix-kind", choices=("tridiag", "pentadiag"),
                   default="tridiag")
    p.add_argument("--quad-tol", type=float, default=1e-10)
    p.add_argument("--out", default=None,
                   help="output CSV path (default <figure-id>-<kind>.csv)")

    p = sub.add_parser("surface", help="full-matrix dump of f(grid operator)")
    p.add_argument("--function", choices=("exp", "inv_sqrt"), default="exp")
    p.add_argument("--tau", type=float, default=5.0)
    p.add_argument("--grid-n", type=int, default=10)
    p.add_argument("--out", required=True)

    return parser


def _echo_csv(rows, header, out):
    if out is not None:
        return
    w = csv.writer(sys.stdout)
    w.writerow(header)
    for row in rows:
        w.writerow(["" if c is None else (c if isinstance(c, str) else f"{c:.17g}")
                    for c in row])


def _load_matrix(args):
    try:
        return parse_matrix_spec(args.matrix, args.n)
    except (MatrixFormatError, ValueError, FileNotFoundError) as exc:
        raise UsageError(str(exc)) from exc


def _cmd_bound(args, self_check=False):
    M = _load_matrix(args)
    if not (1 <= args.column <= M.n):
        raise UsageError(f"--column {args.column} outside 1..{M.n}")
    try:
        summary, rows = figures.run_compare(
            M, args.column, args.function, args.klass, tau=args.tau,
            zeta=args.zeta, distance_mode=args.distance,
            drop_tol=args.pattern_drop_tol, quad_tol=args.quad_tol,
            max_panels=args.quad_max_panels, out_path=args.out)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _echo_csv(rows, ("k", "distance", "bound", "oracle", "ratio"), args.out)
    if self_check or args.command == "compare":
        s = summary
        fmt = lambda v: "n/a" if v is None else f"{v:.6g}"
        print(f"# ratio min/median/max {fmt(s['ratio_min'])}/"
              f"{fmt(s['ratio_median'])}/{fmt(s['ratio_max'])} "
              f"violations {s['violations']} resolved {s['resolved']}",
              file=sys.stderr)
    if not summary["converged"]:
        return 2
    if self_check and summary["violations"] > 0:
        return 3
    return 0


def _cmd_kron(args):
    specs = args.factors.split(",")
    try:
        factors = tuple(parse_matrix_spec(s, args.n) for s in specs)
        A = KroneckerSum(factors=factors)
        if "," in args.column:
            comps = tuple(int(c) for c in args.column.split(","))
            t = A.linearize(comps)
        else:
            t = int(args.column)
            if not (1 <= t <= A.total_order):
                raise IndexError(f"--column {t} outside 1..{A.total_order}")
    except (MatrixFormatError, ValueError, TypeError, IndexError,
            FileNotFoundError) as exc:
        raise UsageError(str(exc)) from exc
    try:
        summary, rows = figures.run_kron_compare(
            A, t, args.function, args.klass, tau=args.tau,
            quad_tol=args.quad_tol, max_panels=args.quad_max_panels,
            out_path=args.out)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    nfac = len(A.factors)
    header = (["k"] + [f"k{i+1}" for i in range(nfac)]
              + [f"d{i+1}" for i in range(nfac)] + ["bound", "oracle"])
    _echo_csv(rows, header, args.out)
    return 0 if summary["converged"] else 2


def _cmd_oracle(args):
    M = _load_matrix(args)
    if not (1 <= args.column <= M.n):
        raise UsageError(f"--column {args.column} outside 1..{M.n}")
    try:
        f, kind, _ = figures.resolve_function(args.function, args.klass, args.tau)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if kind == "resolvent" and args.zeta != 0.0:
        col = np.abs(oracle.resolvent_column(M, 1j * args.zeta, args.column))
    else:
        col = oracle.function_column(M, f, args.column)
    rows = [(k, float(np.real(col[k - 1])) if np.isrealobj(col) else abs(col[k - 1]))
            for k in range(1, M.n + 1)]
    if args.out is not None:
        figures._write_csv(args.out, ("k", "value"), rows)
    _echo_csv(rows, ("k", "value"), args.out)
    return 0


def _cmd_figure(args):
    try:
        spec = FigureSpec(figure_id=args.figure_id, matrix_kind=args.matrix_kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = args.out or f"{spec.figure_id}-{spec.matrix_kind}.csv"
    summary = figures.run_figure(spec, out, quad_tol=args.quad_tol)
    print(f"# wrote {out}: rows {summary['rows']} violations "
          f"{summary['violations']} (resolved {summary['resolved']})",
          file=sys.stderr)
    return 0 if summary["converged"] else 2


def _cmd_surface(args):
    figures.run_surface(args.function, args.tau, args.grid_n, args.out)
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "bound":
            return _cmd_bound(args)
        if args.command == "compare":
            return _cmd_bound(args, self_check=args.self_check)
        if args.command == "kron":
            return _cmd_kron(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "figure":
            return _cmd_figure(args)
        if args.command == "surface":
            return _cmd_surface(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"decay: error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"decay: numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
