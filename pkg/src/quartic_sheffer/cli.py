"""Command-line interface: ``quartic-sheffer <command> [options]``.

The generating function is exp(c x z + a z^2 + b z^4) with c fixed to 1;
for general c evaluate P_n(c x). Rationals are written as integers, "p/q",
or finite decimals and are kept exact.

Exit codes: 0 success, 2 validation or locus failure, 3 numerical
nonconvergence, 4 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional

import mpmath

from . import acceptance, gen_tree, riordan, saddle, zero_locus
from .poly_core import Params, build_explicit, build_recurrence

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_INPUT = 4

PRECISION_ENV = "QUARTIC_SHEFFER_PRECISION"


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def parse_complex(text: str) -> complex:
    """'re' or 're,im'."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


def fmt_rational(x: Fraction) -> str:
    return str(Fraction(x))


def fmt_mp(x, digits: int = 17) -> str:
    return mpmath.nstr(x, digits) if x != 0 else "0"


def emit(command: str, columns: list[str], rows: list[dict], args, params: dict, summary: Optional[dict] = None):
    if args.format == "json":
        doc = {"command": command, "params": params, "columns": columns, "rows": rows}
        if summary is not None:
            doc["summary"] = summary
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(row.get(c)) for c in columns])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    return v


def _params(args) -> Params:
    return Params(args.a, args.b)


def _param_dict(args, *names) -> dict:
    out = {}
    for name in names:
        v = getattr(args, name)
        if isinstance(v, Fraction):
            v = fmt_rational(v)
        elif isinstance(v, complex):
            v = [v.real, v.imag]
        elif isinstance(v, list):
            v = [[x.real, x.imag] if isinstance(x, complex) else x for x in v]
        out[name] = v
    return out


# commands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    p = _params(args)
    n = args.n
    routes = {
        "explicit": lambda: [build_explicit(k, p) for k in range(n + 1)],
        "recurrence": lambda: build_recurrence(n, p),
        "riordan": lambda: _riordan_polys(n, p),
    }
    polys = routes[args.method]()
    summary = None
    status = EXIT_OK
    if args.check:
        others = {name: fn() for name, fn in routes.items() if name != args.method}
        mismatch = None
        for name, other in others.items():
            for k in range(n + 1):
                if other[k] != polys[k]:
                    j = next(j for j in range(k + 1) if other[k][j] != polys[k][j])
                    mismatch = {"route": name, "n": k, "k": j}
                    break
            if mismatch:
                break
        summary = {"check": "fail" if mismatch else "pass", "first_mismatch": mismatch}
        if mismatch:
            print(f"route mismatch: {args.method} vs {mismatch['route']} at n={mismatch['n']}, k={mismatch['k']}", file=sys.stderr)
            status = EXIT_VALIDATION
    rows = [{"n": k, "coefficients": [fmt_rational(polys[k][j]) for j in range(k + 1)]} for k in range(n + 1)]
    emit("gen", ["n", "coefficients"], rows, args, _param_dict(args, "a", "b", "n", "method"), summary)
    return status


def _riordan_polys(n, p):
    from .poly_core import ExactPoly

    A = riordan.build_riordan(n + 1, p)
    return [ExactPoly([A[k, j] for j in range(k + 1)]) for k in range(n + 1)]


ROOT_COLUMNS = ["n", "re", "im", "class", "residual"]


def cmd_roots(args) -> int:
    p = _params(args)
    if args.certify:
        n_max = args.n_max if args.n_max is not None else args.n
        rep = zero_locus.certify_theorem(n_max, p, args.precision, args.tol, args.workers)
        rows = []
        for r in rep.results:
            if r.rootset is not None:
                rows.extend(r.rootset.rows())
        failures = [{"n": r.n, "error": r.error} for r in rep.failures]
        summary = {
            "verdict": rep.verdict,
            "hypothesis_met": rep.hypothesis_met,
            "off_axis": len(rep.off_axis),
            "failures": failures,
        }
        emit("roots", ROOT_COLUMNS, rows, args, _param_dict(args, "a", "b", "precision", "tol") | {"n_max": n_max}, summary)
        print(f"verdict: {rep.verdict} ({len(rep.off_axis)} off-axis roots)", file=sys.stderr)
        if rep.failures:
            return EXIT_NUMERICAL
        if rep.off_axis and rep.hypothesis_met:
            return EXIT_VALIDATION
        return EXIT_OK
    if args.n is None or args.n < 1:
        raise InputError("roots needs --n >= 1 (or --certify with --n-max)")
    poly = build_explicit(args.n, p)
    try:
        rs = zero_locus.find_roots(poly, args.precision, args.tol)
    except zero_locus.RootFindingError as exc:
        print(f"root finding failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    emit("roots", ROOT_COLUMNS, rs.rows(), args, _param_dict(args, "a", "b", "n", "precision", "tol"), {"counts": rs.counts()})
    return EXIT_OK


def _normalized_a(args) -> float:
    if args.b is None or args.b == -1:
        return float(args.a)
    a_eff, _ = saddle.normalize_b(args.a, args.b)
    return a_eff


SADDLE_COLUMNS = [
    "m", "s_re", "s_im", "zeta_re", "zeta_im", "residual", "quadrant_ok",
    "closed_form_discrepancy", "in_J", "endpoint_separated", "away_from_origin",
]


def cmd_saddle(args) -> int:
    a = _normalized_a(args)
    rows = []
    for m in args.m:
        for s in args.s:
            q = saddle.ScaledQuery(m, s, a)
            sol = saddle.solve_saddle(q)
            rows.append(
                {
                    "m": m, "s_re": s.real, "s_im": s.imag,
                    "zeta_re": sol.zeta.real, "zeta_im": sol.zeta.imag,
                    "residual": sol.residual, "quadrant_ok": sol.quadrant_ok,
                    "closed_form_discrepancy": saddle.validate_closed_form(q, sol),
                    **q.regime(),
                }
            )
    emit("saddle", SADDLE_COLUMNS, rows, args, _param_dict(args, "a", "b", "m", "s") | {"a_normalized": a})
    return EXIT_OK


ASYM_COLUMNS = [
    "m", "s_re", "s_im", "zeta_re", "zeta_im", "residual", "log_magnitude", "phase",
    "exact_component", "exact_value", "relative_error", "envelope_error",
    "in_J", "endpoint_separated", "away_from_origin",
]


def cmd_asym(args) -> int:
    a = _normalized_a(args)
    rows = []
    for m in args.m:
        for s in args.s:
            q = saddle.ScaledQuery(m, s, a)
            mt = saddle.main_term(q)
            row = {
                "m": m, "s_re": s.real, "s_im": s.imag,
                "zeta_re": mt.zeta.real, "zeta_im": mt.zeta.imag,
                "residual": saddle.saddle_residual(mt.zeta, q),
                "log_magnitude": mt.log_magnitude, "phase": mt.phase,
                "exact_component": None, "exact_value": None,
                "relative_error": None, "envelope_error": None,
                **mt.regime,
            }
            if args.exact and q.axis is not None:
                kind, value = saddle.h_projection(m, s, a, args.precision)
                row["exact_component"] = kind
                row["exact_value"] = fmt_mp(value)
                row["relative_error"] = saddle.pointwise_error(m, s, a, args.precision)
                if args.envelope:
                    row["envelope_error"] = saddle.main_term_error(m, s, a, precision=args.precision)
            rows.append(row)
    emit("asym", ASYM_COLUMNS, rows, args, _param_dict(args, "a", "b", "m", "s") | {"a_normalized": a})
    return EXIT_OK


ORACLE_COLUMNS = [
    "m", "s_re", "s_im", "oracle_re", "oracle_im", "exact_re", "exact_im",
    "relative_error", "doubling_change", "nodes", "radius",
]


def cmd_oracle(args) -> int:
    b = Fraction(-1) if args.b is None else args.b
    if b >= 0:
        raise InputError("the contour oracle needs b < 0")
    a_eff, lam = saddle.normalize_b(args.a, b)
    p = Params(args.a, b)
    rows = []
    for m in args.m:
        poly = build_explicit(m, p)
        for s in args.s:
            try:
                val, prev, nodes, r = saddle.contour_oracle_detail(m, s / lam, a_eff, args.radius, args.nodes, args.precision)
            except saddle.QuadratureError as exc:
                print(f"oracle failed for m={m}, s={s}: {exc}", file=sys.stderr)
                return EXIT_NUMERICAL
            re, im = Fraction(s.real), Fraction(s.imag)
            exact = saddle.evaluate_adaptive(
                poly, lambda: mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator), args.precision
            )
            with mpmath.workprec(args.precision):
                oracle = val * mpmath.mpf(lam) ** m
                rel = abs(oracle - exact) / abs(exact) if exact != 0 else abs(oracle - exact)
                dbl = abs(val - prev) / abs(val) if val != 0 else abs(val - prev)
                rows.append(
                    {
                        "m": m, "s_re": s.real, "s_im": s.imag,
                        "oracle_re": fmt_mp(mpmath.re(oracle)), "oracle_im": fmt_mp(mpmath.im(oracle)),
                        "exact_re": fmt_mp(mpmath.re(exact)), "exact_im": fmt_mp(mpmath.im(exact)),
                        "relative_error": float(rel), "doubling_change": float(dbl),
                        "nodes": nodes, "radius": r * lam,
                    }
                )
    emit("oracle", ORACLE_COLUMNS, rows, args, _param_dict(args, "a", "b", "m", "s", "nodes", "precision"))
    return EXIT_OK


def cmd_tree(args) -> int:
    p = _params(args)
    if args.explicit:
        try:
            levels = gen_tree.enumerate_explicit(args.n, p)
        except gen_tree.NodeBudgetExceeded as exc:
            raise InputError(str(exc)) from exc
    else:
        levels = gen_tree.counts_to_level(args.n, p)
    rows = []
    for lvl in levels:
        for k in range(lvl.level + 1):
            row = {"n": lvl.level, "k": k, "signed_count": fmt_rational(lvl.get(k))}
            if lvl.unmarked is not None:
                row["unmarked"] = lvl.unmarked.get(k, 0)
                row["marked"] = lvl.marked.get(k, 0)
            rows.append(row)
    columns = ["n", "k", "signed_count"] + (["unmarked", "marked"] if args.explicit else [])
    summary = None
    status = EXIT_OK
    if args.verify:
        rep = gen_tree.verify_interpretation(args.n, p)
        summary = {"verified": rep.ok, "hypothesis_met": rep.hypothesis_met, "first_mismatch": rep.first_mismatch, "notes": rep.notes}
        if not rep.ok:
            n, k = rep.first_mismatch
            print(f"tree counts differ from coefficients at n={n}, k={k}", file=sys.stderr)
            status = EXIT_VALIDATION
    emit("tree", columns, rows, args, _param_dict(args, "a", "b", "n"), summary)
    return status


def cmd_verify(args) -> int:
    scale = acceptance.Scale.quick(args.max_n) if args.quick else acceptance.Scale()
    if args.max_n is not None and not args.quick:
        scale.route_n = scale.tree_n = scale.locus_n = args.max_n
        scale.oracle_m = min(scale.oracle_m, args.max_n)
    locus = None
    if args.a is not None or args.b is not None:
        locus = (Fraction(args.a or 0), Fraction(-1 if args.b is None else args.b))
    results = acceptance.run_all(scale, args.workers, locus)
    for r in results:
        print(r.line(), file=sys.stderr)
    rows = [{"criterion": r.number, "name": r.name, "status": r.status, "detail": r.detail} for r in results]
    emit("verify", ["criterion", "name", "status", "detail"], rows, args, {"quick": args.quick, "max_n": args.max_n})
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


# parser -----------------------------------------------------------------


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return zero_locus.DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        return zero_locus.DEFAULT_PRECISION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", help="write to this path instead of stdout")
    common.add_argument("--precision", type=int, default=_default_precision(), help=f"working bits (env {PRECISION_ENV}; default 256)")
    common.add_argument("--tol", type=float, default=zero_locus.DEFAULT_TOL, help="relative classification tolerance")
    common.add_argument("--workers", type=int, default=1, help="process pool size for sweeps")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--a", type=parse_rational, default=Fraction(1))
    params.add_argument("--b", type=parse_rational, default=Fraction(-1))

    parser = _Parser(
        prog="quartic-sheffer",
        description=(
            "Polynomials P_n with sum P_n(x) z^n/n! = exp(x z + a z^2 + b z^4). "
            "The linear coefficient c of exp(c x z + ...) is normalized to 1; "
            "for general c use P_n(c x)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common, params], help="coefficients of P_0..P_n")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--method", choices=["explicit", "recurrence", "riordan"], default="recurrence")
    g.add_argument("--check", action="store_true", help="compare all three routes")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("roots", parents=[common, params], help="zeros of P_n, classified by axis")
    r.add_argument("--n", type=int)
    r.add_argument("--certify", action="store_true", help="sweep 1..n_max; exit 2 on an off-axis root when b < 0")
    r.add_argument("--n-max", type=int)
    r.set_defaults(func=cmd_roots)

    sparams = argparse.ArgumentParser(add_help=False)
    sparams.add_argument("--a", type=parse_rational, default=Fraction(0))
    sparams.add_argument("--b", type=parse_rational, default=None, help="b < 0; rescaled onto b = -1 (default -1)")
    sparams.add_argument("--m", type=int, nargs="+", required=True)
    sparams.add_argument("--s", type=parse_complex, nargs="+", required=True, help="scaled argument(s) 're[,im]'")

    s = sub.add_parser("saddle", parents=[common, sparams], help="fourth-quadrant critical point zeta(s)")
    s.set_defaults(func=cmd_saddle)

    a = sub.add_parser("asym", parents=[common, sparams], help="main term of h_m(s) in log space")
    a.add_argument("--exact", action="store_true", help="compare with exact H_m")
    a.add_argument("--envelope", action="store_true", help="also report the error over one phase period")
    a.set_defaults(func=cmd_asym)

    o = sub.add_parser("oracle", parents=[common, sparams], help="trapezoidal contour integral vs exact P_m(s)")
    o.add_argument("--radius", type=float)
    o.add_argument("--nodes", type=int, default=512)
    o.set_defaults(func=cmd_oracle)

    t = sub.add_parser("tree", parents=[common, params], help="signed label counts of the marked generating tree")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--verify", action="store_true", help="compare with the coefficients of P_n")
    t.add_argument("--explicit", action="store_true", help="enumerate marked and unmarked nodes separately")
    t.set_defaults(func=cmd_tree)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance battery")
    v.add_argument("--quick", action="store_true")
    v.add_argument("--max-n", type=int)
    v.add_argument("--a", type=parse_rational)
    v.add_argument("--b", type=parse_rational)
    v.set_defaults(func=cmd_verify)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite '--a -7/3' as '--a=-7/3' so argparse does not read the value as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--a", "--b"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        if getattr(args, "n", None) is not None and args.n < 0:
            raise InputError("n must be nonnegative")
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (zero_locus.RootFindingError, saddle.QuadratureError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (saddle.SaddleError, saddle.DegenerateSaddleError) as exc:
        print(f"saddle failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
