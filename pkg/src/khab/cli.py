"""Command-line front end.

Subcommands cover every verification pipeline: ``transition`` (numerator
polynomial, sign boundaries, pointwise values), ``constants`` (correction
constant and decomposition), ``counterexample`` / ``report`` (full
verification of the deformation family), ``identity`` (the bridge between
premise and conclusion weights), ``convert`` (direct/inverse conversion of
piecewise polynomials as JSON), and ``plotdata`` (CSV curves).

Exit codes: 0 success, 1 verification failure, 2 usage error.  Numeric text
output prints 10 significant digits; JSON floats round-trip bit-exactly.
The default tolerance is 1e-9, overridable by the KHAB_TOL environment
variable and per-run by ``--tol``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .constants import compute_constants
from .conversion import PiecewisePolynomial, direct_convert, inverse_convert
from .counterexample import (
    T0,
    CounterexampleSpec,
    build_g,
    build_h,
    build_q,
    verify,
)
from .poly import Polynomial
from .quad import QuadratureError
from .transition import Params, build_transition, sign_partition, transition_eval

_R3 = Polynomial((-2.0, 16.0, -34.0, 21.0))

_PLOT_DEFAULTS = {
    "R3": (0.0, 1.0),
    "h": (0.0, T0),
    "g": (0.0, 2.0),
    "q": (0.0, 2.0),
    "transition": (0.05, 5.0),
}


def _fmt(x: float) -> str:
    return format(x, ".10g")


def _default_tol() -> float:
    try:
        tol = float(os.environ.get("KHAB_TOL", "1e-9"))
    except ValueError:
        return 1e-9
    return tol if tol > 0 else 1e-9


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--tol",
        type=float,
        default=None,
        help="absolute quadrature tolerance (default 1e-9, env KHAB_TOL)",
    )
    p.add_argument(
        "--format",
        choices=("text", "json", "csv"),
        default="text",
        help="output format",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khab",
        description="numerical verification for the integral-inequality "
        "transition machinery, correction constants and the n=2, alpha=2 "
        "counterexample",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transition", help="numerator polynomial, sign "
                       "boundaries and pointwise transition values")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--t", type=float, action="append", default=None,
                   help="evaluation point (repeatable)")
    _add_common(p)

    p = sub.add_parser("constants", help="correction constant C(n, alpha) "
                       "and its decomposition")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--alpha", type=float, default=2.0)
    _add_common(p)

    p = sub.add_parser("counterexample", help="verify the deformation "
                       "family at n=2, alpha=2")
    p.add_argument("--epsilon", type=float, default=1.0)
    _add_common(p)

    p = sub.add_parser("report", help="machine-readable verification "
                       "report (counterexample with JSON default)")
    p.add_argument("--epsilon", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(format="json")

    p = sub.add_parser("identity", help="bridge identity residuals: "
                       "transition integral against ln(1 + y^(-2a))")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--y", type=float, action="append", default=None,
                   help="premise point (repeatable)")
    _add_common(p)

    p = sub.add_parser("convert", help="direct/inverse conversion of a "
                       "piecewise polynomial (JSON {breakpoints, pieces})")
    p.add_argument("--n", type=int, default=2)
    direction = p.add_mutually_exclusive_group(required=True)
    direction.add_argument("--inverse", action="store_true",
                           help="profile g -> test function q")
    direction.add_argument("--direct", action="store_true",
                           help="test function q -> profile values g(t)")
    p.add_argument("--input", required=True, help="input JSON file")
    p.add_argument("--t", type=float, action="append", default=None,
                   help="evaluation points for --direct (repeatable)")
    _add_common(p)

    p = sub.add_parser("plotdata", help="CSV curve samples (x,value)")
    p.add_argument("--kind", choices=("R3", "transition", "g", "q", "h"),
                   required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--from", dest="lo", type=float, default=None)
    p.add_argument("--to", dest="hi", type=float, default=None)
    p.add_argument("--points", type=int, default=101)
    _add_common(p)

    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if getattr(args, "n", 1) < 1:
        parser.error("--n must be >= 1")
    if getattr(args, "alpha", 1.0) <= 0:
        parser.error("--alpha must be > 0")
    eps = getattr(args, "epsilon", 0.0)
    if not 0.0 <= eps <= 1.0:
        parser.error("--epsilon must lie in [0, 1]")
    if args.tol is None:
        args.tol = _default_tol()
    if args.tol <= 0:
        parser.error("--tol must be > 0")
    if args.command == "identity" and args.y:
        if any(y <= 0 for y in args.y):
            parser.error("--y must be > 0")
    if args.command == "transition" and args.t:
        if any(t <= 0 for t in args.t):
            parser.error("--t must be > 0")
    if args.command == "convert" and args.direct and not args.t:
        parser.error("--direct requires at least one --t")
    if args.command == "plotdata":
        if args.points < 0:
            parser.error("--points must be >= 0")
        lo = args.lo if args.lo is not None else _PLOT_DEFAULTS[args.kind][0]
        hi = args.hi if args.hi is not None else _PLOT_DEFAULTS[args.kind][1]
        if hi < lo:
            parser.error("--to must be >= --from")
        if args.kind == "transition" and lo <= 0:
            parser.error("--from must be > 0 for kind=transition")
        args.lo, args.hi = lo, hi


def _emit_json(data: dict) -> None:
    print(json.dumps(data, indent=2))


def _cmd_transition(args) -> int:
    tf = build_transition(args.n - 1, args.alpha)
    part = sign_partition(tf, min(args.tol, 1e-12))
    ts = args.t or []
    values = [(t, transition_eval(tf, t)) for t in ts]
    if args.format == "json":
        _emit_json({
            "order": tf.order,
            "alpha": tf.alpha,
            "p_coeffs": list(tf.p_poly.coeffs),
            "boundaries": list(part.boundary_ts),
            "signs": ["+" if s > 0 else "-" for s in part.signs],
            "values": [{"t": t, "phi": v} for t, v in values],
        })
    else:
        print(f"transition function of order {tf.order} (conjecture n={args.n}), "
              f"alpha = {_fmt(args.alpha)}")
        print("numerator coefficients (ascending in z = t^(2 alpha)):")
        print("  " + "  ".join(_fmt(c) for c in tf.p_poly.coeffs))
        if part.boundary_ts:
            print("sign boundaries in t: "
                  + "  ".join(_fmt(b) for b in part.boundary_ts))
        else:
            print("sign boundaries in t: none")
        print("interval signs: " + " ".join("+" if s > 0 else "-" for s in part.signs))
        for t, v in values:
            print(f"  phi({_fmt(t)}) = {_fmt(v)}")
    return 0


def _cmd_constants(args) -> int:
    rep = compute_constants(Params(args.n, args.alpha), args.tol)
    if args.format == "json":
        _emit_json(rep.to_dict())
    else:
        print(f"C({args.n}, {_fmt(args.alpha)}) = {_fmt(rep.c_upper)}")
        print(f"closed-form total        = {_fmt(rep.closed_form_total)}")
        print(f"negative-part integral   = {_fmt(rep.m_minus_integral)}")
        print(f"decomposition residual   = {_fmt(rep.decomposition_residual)}")
    return 0


def _render_counterexample(args, as_json: bool) -> int:
    spec = CounterexampleSpec(args.epsilon)
    rep = verify(spec, args.tol)
    verified = rep.premise_ok and rep.bound_ok and not rep.failures and (
        spec.epsilon == 0.0 or rep.violated
    )
    if as_json:
        _emit_json(rep.to_dict())
    else:
        print(f"epsilon = {_fmt(spec.epsilon)}   (n = 2, alpha = 2)")
        print(f"premise holds: {rep.premise_ok} "
              f"(worst margin {_fmt(rep.premise_worst_margin)})")
        print(f"lhs integral        = {_fmt(rep.lhs_integral.value)} "
              f"(+/- {_fmt(rep.lhs_integral.abs_error_estimate)})")
        print(f"conjectured bound   = {_fmt(rep.rhs_conjecture)}")
        print(f"delta_I             = {_fmt(rep.delta_I.value)}")
        print(f"C(2, 2)             = {_fmt(rep.c_upper)}")
        print(f"violation margin    = {_fmt(rep.violation_margin)}")
        print(f"lhs <= C(2,2): {rep.bound_ok}")
        for failure in rep.failures:
            print(f"FAILURE: {failure}")
        if spec.epsilon == 0.0:
            print("equality case, no violation")
        elif rep.violated:
            print("CONJECTURE VIOLATED")
        else:
            print("no violation detected")
    return 0 if verified else 1


def _cmd_counterexample(args) -> int:
    return _render_counterexample(args, as_json=args.format == "json")


def _cmd_report(args) -> int:
    return _render_counterexample(args, as_json=args.format != "text")


def _cmd_identity(args) -> int:
    from .kernel import KernelSpec, kernel_eval
    from .quad import integrate_halfline

    tf = build_transition(args.n - 1, args.alpha)
    spec = KernelSpec(args.n - 1)
    two_alpha = 2.0 * args.alpha
    ys = args.y or [0.25, 0.5, 1.0, 2.0, 4.0]
    rows = []
    for y in ys:
        res = integrate_halfline(
            lambda t: transition_eval(tf, t) * kernel_eval(spec, y / t),
            y,
            args.tol,
        )
        if y >= 1.0:
            target = math.log1p(y**-two_alpha)
        else:
            target = -two_alpha * math.log(y) + math.log1p(y**two_alpha)
        rows.append((y, res.value, target, res.value - target))
    if args.format == "json":
        _emit_json({
            "n": args.n,
            "alpha": args.alpha,
            "rows": [
                {"y": y, "integral": v, "target": t, "residual": r}
                for y, v, t, r in rows
            ],
        })
    elif args.format == "csv":
        print("y,integral,target,residual")
        for y, v, t, r in rows:
            print(f"{y!r},{v!r},{t!r},{r!r}")
    else:
        print(f"bridge identity, n = {args.n}, alpha = {_fmt(args.alpha)}")
        print(f"{'y':>12} {'integral':>18} {'ln(1+y^-2a)':>18} {'residual':>12}")
        for y, v, t, r in rows:
            print(f"{_fmt(y):>12} {_fmt(v):>18} {_fmt(t):>18} {r:>12.3e}")
    return 0


def _cmd_convert(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        pw = PiecewisePolynomial.from_dict(json.load(fh))
    if args.inverse:
        q = inverse_convert(pw, args.n)
        print(json.dumps(q.to_dict(), indent=2))
        return 0
    params = Params(args.n, 1.0)
    rows = [(t, direct_convert(pw, params, t, args.tol)) for t in args.t]
    if args.format == "json":
        _emit_json({"values": [{"t": t, "g": g} for t, g in rows]})
    else:
        for t, g in rows:
            print(f"g({_fmt(t)}) = {_fmt(g)}")
    return 0


def _cmd_plotdata(args) -> int:
    kind = args.kind
    lo, hi = args.lo, args.hi

    if kind == "R3":
        f = _R3
    elif kind == "h":
        f = build_h(T0)
    elif kind == "g":
        f = build_g(CounterexampleSpec(args.epsilon))
    elif kind == "q":
        f = build_q(CounterexampleSpec(args.epsilon))
    else:
        tf = build_transition(args.n - 1, args.alpha)
        f = lambda t: transition_eval(tf, t)  # noqa: E731

    print("x,value")
    n = args.points
    if n <= 0:
        return 0
    for i in range(n):
        x = lo if n == 1 else lo + (hi - lo) * i / (n - 1)
        print(f"{x!r},{f(x)!r}")
    return 0


_DISPATCH = {
    "transition": _cmd_transition,
    "constants": _cmd_constants,
    "counterexample": _cmd_counterexample,
    "report": _cmd_report,
    "identity": _cmd_identity,
    "convert": _cmd_convert,
    "plotdata": _cmd_plotdata,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return _DISPATCH[args.command](args)
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
