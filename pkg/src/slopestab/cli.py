"""Command-line interface.

Subcommands:

* ``verify`` -- run a built-in verification suite (product, kodaira,
  jflow, or all); exit 0 when every check passes, 1 otherwise.
* ``window`` -- emit an instability window (product_c, product_s, x2_c)
  as JSON or CSV, optionally with a rendered figure.
* ``cone``   -- write the ample-cone section CSV, optionally with a
  rendered figure.
* ``report`` -- dump a full stability report as JSON or markdown.

Rationals are accepted and emitted as ``n/d`` strings; output bytes are
deterministic for fixed flags.  Exit codes: 0 success, 1 failed check or
I/O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional

from .errors import SlopeStabError
from .polysign import endpoint_sup
from .positivity import (
    boundary_seshadri_diagonal,
    cone_section,
    seshadri_diagonal,
    seshadri_lower_bound_diagonal_cover,
)
from .rationals import DEFAULT_TOL, as_fraction
from .reporting import (
    cone_csv_text,
    json_text,
    kodaira_report,
    product_report,
    report_markdown,
    window_csv_rows,
    window_to_dict,
    write_text,
)
from .stability import (
    S_FAMILY,
    StabilityWindow,
    instability_window_c,
    instability_window_s,
    kodaira_quotient_slope,
    kodaira_slope,
    kodaira_window_c,
    product_quotient_closed,
    product_slope_closed,
    quotient_slope,
    slope,
)
from .surfaces import (
    BranchedCover,
    GeneralModuliSquare,
    KodairaParams,
    ProductSurfaceParams,
    UserBounds,
    kodaira_surface,
    product_surface,
)
from .verify import suite_all, suite_jflow, suite_kodaira, suite_product


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except SlopeStabError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _rational_or_boundary(text: str):
    if text == "boundary":
        return "boundary"
    return _rational(text)


def _add_sc_mode_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, default=None, help="branched-cover degree over the line")
    parser.add_argument(
        "--general-moduli",
        action="store_true",
        help="general-moduli curve with perfect-square genus",
    )
    parser.add_argument(
        "--sc-bounds",
        nargs=2,
        type=_rational,
        metavar=("LO", "HI"),
        default=None,
        help="certified bounds on the t-family ampleness threshold",
    )


def _sc_mode_from_args(args) -> object:
    chosen = [
        args.k is not None,
        getattr(args, "general_moduli", False),
        getattr(args, "sc_bounds", None) is not None,
    ]
    if sum(chosen) > 1:
        raise SlopeStabError("choose at most one of --k, --general-moduli, --sc-bounds")
    if args.k is not None:
        return BranchedCover(args.k)
    if getattr(args, "general_moduli", False):
        return GeneralModuliSquare()
    if getattr(args, "sc_bounds", None) is not None:
        lo, hi = args.sc_bounds
        return UserBounds(lo, hi)
    return None


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_text(out, text)


def _csv_text(rows: list[list[str]]) -> str:
    return "".join(",".join(row) + "\n" for row in rows)


# ---------------------------------------------------------------------------
# subcommand: verify


def _cmd_verify(args) -> int:
    tol = args.tol
    if args.suite == "product":
        results = [suite_product(q=args.q if args.q else 2, k=args.k, tol=tol)]
    elif args.suite == "kodaira":
        results = [
            suite_kodaira(
                q=args.q if args.q else 3,
                r=args.r if args.r else 2,
                group_order=args.G if args.G else 2,
                k=args.k,
                tol=tol,
            )
        ]
    elif args.suite == "jflow":
        results = [suite_jflow(q=args.q if args.q else 2, s=args.s, tol=tol)]
    else:
        results = suite_all(tol=tol)

    if args.format == "json":
        payload = {"suites": [r.to_dict() for r in results], "passed": all(r.passed for r in results)}
        sys.stdout.write(json_text(payload))
    else:
        for result in results:
            for line in result.text_lines():
                print(line)
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# subcommand: window


def _window_output(args, window: StabilityWindow) -> None:
    if args.format == "csv":
        _emit(_csv_text(window_csv_rows(window)), args.out)
    else:
        _emit(json_text(window_to_dict(window)), args.out)


def _plot_window_curves(window, x_lo, x_hi, curves, path, xlabel, title):
    from . import figures

    figures.render_window(window.intervals, x_lo, x_hi, curves, path, xlabel, title)


def _cmd_window(args) -> int:
    tol = args.tol
    if args.target == "product_c":
        params = ProductSurfaceParams(q=args.q, sc_mode=_sc_mode_from_args(args))
        model = product_surface(params)
        s = args.s if args.s is not None else "boundary"
        s_val = Fraction(args.q) if s == "boundary" else s
        if s_val < args.q:
            raise SlopeStabError(f"s must be at least q={args.q}")
        L = s_val * model.named("f") + model.named("delta_prime")
        seshadri = (
            boundary_seshadri_diagonal(params)
            if s_val == args.q
            else seshadri_diagonal(params, s_val)
        )
        window = instability_window_c(model, model.named("diagonal"), L, seshadri, tol)
        _window_output(args, window)
        if args.plot:
            D = model.named("diagonal")
            cap = seshadri.lower

            def mu_curve(c):
                return slope(model, L)

            def mu_c_curve(c):
                try:
                    return quotient_slope(model, D, L, c)
                except SlopeStabError:
                    return None

            _plot_window_curves(
                window,
                cap / 50,
                cap,
                [("mu", mu_curve), ("mu_c (diagonal)", mu_c_curve)],
                args.plot,
                "c",
                f"instability window in c (q={args.q}, s={s_val})",
            )
        return 0

    if args.target == "product_s":
        if args.c is None:
            raise SlopeStabError("--c is required for product_s")
        params = ProductSurfaceParams(q=args.q, sc_mode=_sc_mode_from_args(args))
        window = instability_window_s(params, args.c, args.extent, tol)
        _window_output(args, window)
        if args.plot:
            q = Fraction(args.q)
            if window.intervals:
                last_hi = window.intervals[-1].hi
                hi = q + args.extent if last_hi is None else endpoint_sup(last_hi)
                x_hi = q + (hi - q) * 2
            else:
                x_hi = q + args.extent

            def mu_curve(s):
                try:
                    return product_slope_closed(args.q, s)
                except SlopeStabError:
                    return None

            def mu_c_curve(s):
                try:
                    return product_quotient_closed(args.q, s, args.c)
                except SlopeStabError:
                    return None

            _plot_window_curves(
                window,
                q,
                x_hi,
                [("mu", mu_curve), ("mu_c (diagonal)", mu_c_curve)],
                args.plot,
                "s",
                f"instability window in s (q={args.q}, c={args.c})",
            )
        return 0

    # x2_c
    if args.r is None or args.G is None:
        raise SlopeStabError("--r and --G are required for x2_c")
    params = KodairaParams(q=args.q, r=args.r, group_order=args.G, k=args.k)
    s = args.s if args.s is not None else "boundary"
    s_val = Fraction(args.q) if s == "boundary" else s
    eps = args.eps if args.eps is not None else Fraction(0)
    seshadri = seshadri_lower_bound_diagonal_cover(params, s_val, eps)
    window = kodaira_window_c(params, s_val, eps, seshadri, tol)
    _window_output(args, window)
    if args.plot:
        model = kodaira_surface(params)
        cap = seshadri.lower if seshadri.lower > 0 else Fraction(1)

        def mu_curve(c):
            return kodaira_slope(params, S_FAMILY, s_val, eps, model=model)

        def mu_c_curve(c):
            try:
                return kodaira_quotient_slope(params, S_FAMILY, s_val, eps, c, model=model)
            except SlopeStabError:
                return None

        _plot_window_curves(
            window,
            cap / 50,
            cap,
            [("mu", mu_curve), ("mu_c (diagonal pullback)", mu_c_curve)],
            args.plot,
            "c",
            f"instability window in c (cyclic cover, q={args.q}, r={args.r}, |G|={args.G})",
        )
    return 0


# ---------------------------------------------------------------------------
# subcommand: cone


def _cmd_cone(args) -> int:
    params = ProductSurfaceParams(q=args.q, sc_mode=_sc_mode_from_args(args))
    extent = args.extent if args.extent is not None else Fraction(2 * args.q)
    rays, cells = cone_section(params, extent, args.samples, args.tol)
    _emit(cone_csv_text(rays, cells), args.out)
    if args.plot:
        from . import figures

        figures.render_cone(rays, cells, args.plot, title=f"ample cone section (q={args.q})")
    return 0


# ---------------------------------------------------------------------------
# subcommand: report


def _cmd_report(args) -> int:
    tol = args.tol
    if args.kind == "product":
        params = ProductSurfaceParams(q=args.q, sc_mode=_sc_mode_from_args(args))
        s = args.s if args.s is not None else "boundary"
        s_val = Fraction(args.q) if s == "boundary" else s
        c = args.c if args.c is not None else Fraction(1, 2)
        report = product_report(params, s_val, c, tol, search_extent=args.extent)
    else:
        if args.r is None or args.G is None:
            raise SlopeStabError("--r and --G are required for kodaira reports")
        params = KodairaParams(q=args.q, r=args.r, group_order=args.G, k=args.k, d=args.d)
        s = args.s if args.s is not None else "boundary"
        s_val = Fraction(args.q) if s == "boundary" else s
        report = kodaira_report(
            params,
            s=s_val,
            eps=args.eps if args.eps is not None else 0,
            c=args.c if args.c is not None else Fraction(1, 2),
            t=args.t,
            tol=tol,
        )
    if args.format == "markdown":
        _emit(report_markdown(report), args.out)
    else:
        _emit(json_text(report), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slopestab",
        description="Exact slope-stability checks for curve products and cyclic-cover Kodaira fibrations.",
    )
    parser.add_argument(
        "--tol",
        type=_rational,
        default=DEFAULT_TOL,
        help="enclosure width bound for irrational thresholds (default 1/10^9)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=["product", "kodaira", "jflow", "all"])
    p_verify.add_argument("--q", type=int, default=None)
    p_verify.add_argument("--k", type=int, default=None)
    p_verify.add_argument("--r", type=int, default=None)
    p_verify.add_argument("--G", type=int, default=None)
    p_verify.add_argument("--s", type=_rational, default=None)
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    p_verify.set_defaults(func=_cmd_verify)

    p_window = sub.add_parser("window", help="emit an instability window")
    p_window.add_argument("target", choices=["product_c", "product_s", "x2_c"])
    p_window.add_argument("--q", type=int, required=True)
    p_window.add_argument("--s", type=_rational_or_boundary, default=None)
    p_window.add_argument("--c", type=_rational, default=None)
    p_window.add_argument("--r", type=int, default=None)
    p_window.add_argument("--G", type=int, default=None)
    p_window.add_argument("--eps", type=_rational, default=None)
    p_window.add_argument("--extent", type=_rational, default=Fraction(10))
    _add_sc_mode_flags(p_window)
    p_window.add_argument("--format", choices=["json", "csv"], default="json")
    p_window.add_argument("--out", default=None)
    p_window.add_argument("--plot", default=None, help="render a figure to this path")
    p_window.set_defaults(func=_cmd_window)

    p_cone = sub.add_parser("cone", help="write the ample-cone section CSV")
    p_cone.add_argument("--q", type=int, required=True)
    _add_sc_mode_flags(p_cone)
    p_cone.add_argument("--extent", type=_rational, default=None)
    p_cone.add_argument("--samples", type=int, default=41)
    p_cone.add_argument("--out", required=True)
    p_cone.add_argument("--plot", default=None, help="render a figure to this path")
    p_cone.set_defaults(func=_cmd_cone)

    p_report = sub.add_parser("report", help="dump a full stability report")
    p_report.add_argument("kind", choices=["product", "kodaira"])
    p_report.add_argument("--q", type=int, required=True)
    p_report.add_argument("--s", type=_rational_or_boundary, default=None)
    p_report.add_argument("--t", type=_rational, default=None)
    p_report.add_argument("--c", type=_rational, default=None)
    p_report.add_argument("--eps", type=_rational, default=None)
    p_report.add_argument("--r", type=int, default=None)
    p_report.add_argument("--G", type=int, default=None)
    p_report.add_argument("--d", type=int, default=None)
    p_report.add_argument("--extent", type=_rational, default=Fraction(10))
    _add_sc_mode_flags(p_report)
    p_report.add_argument("--format", choices=["json", "markdown"], default="json")
    p_report.add_argument("--out", default=None)
    p_report.set_defaults(func=_cmd_report)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SlopeStabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
