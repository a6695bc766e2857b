"""Command-line front end: evaluation, construction, geometry, experiments.

Every command is deterministic given its full flag set.  CSV and text
outputs embed the parameter, arithmetic mode, seed and tool version; SVG
output is a single polyline in a unit viewBox with the y axis flipped so
mathematical up is visual up.

Exit codes: 0 success, 1 usage/domain error, 2 numerical/precision failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import __version__
from .differentiability import (
    critical_a0,
    derivative_trace,
    digit_frequency_experiment,
    find_a0,
    region_classify,
)
from .errors import DomainError, OkamotoError, PrecisionError
from .function import Parameter, eval_digit_series, sample_graph
from .geometry import (
    arc_length_profile,
    chaos_game,
    cover_profile,
    dimension_estimate,
)
from .ternary import TernaryExpansion, to_ternary


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return f"{float(v):.17g}"


def _parse_x(text: str, a: Parameter, digits: int) -> TernaryExpansion:
    """x as a decimal in [0,1] or an exact fraction p/q."""
    text = text.strip()
    if "/" in text:
        frac = Fraction(text)
        if not 0 <= frac <= 1:
            raise DomainError(f"x = {text} outside [0, 1]")
        # exact expansion; 3-smooth denominators terminate on their own
        e = to_ternary(frac, digits)
    elif a.mode == "exact":
        e = to_ternary(Fraction(text), digits)
    else:
        e = to_ternary(float(text), digits)
    return e


def _header(a: Parameter, seed=None) -> str:
    parts = [f"a={a}", f"mode={a.mode}", f"seed={seed if seed is not None else 'none'}",
             f"version={__version__}"]
    return "# " + " ".join(parts)


def _write(path: str | None, content: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(content)
        if not content.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(content)


def _svg_polyline(points) -> str:
    coords = " ".join(f"{float(x):.8g},{1 - float(y):.8g}" for x, y in points)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1">\n'
        f'  <polyline fill="none" stroke="black" stroke-width="0.002" points="{coords}"/>\n'
        "</svg>\n"
    )


def _parse_levels(text: str) -> tuple[int, int]:
    """Inclusive 'lo..hi' range."""
    lo, sep, hi = text.partition("..")
    if not sep:
        raise DomainError(f"level range {text!r} must look like 'lo..hi'")
    return int(lo), int(hi)


def cmd_eval(args) -> int:
    a = Parameter.parse(args.a, exact=args.exact)
    x = _parse_x(args.x, a, args.digits)
    res = eval_digit_series(a, x, args.tol)
    lines = [
        _header(a),
        f"x_digits = {''.join(map(str, x.digits[:res.digits_used or len(x.digits)]))}",
        f"value = {_fmt(res.value)}",
        f"error_bound = {_fmt(res.error_bound)}",
        f"digits_used = {res.digits_used}",
    ]
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_iterate(args) -> int:
    a = Parameter.parse(args.a, exact=args.exact)
    pts = sample_graph(a, args.level)
    if args.format == "svg":
        _write(args.out, _svg_polyline(pts))
    else:
        rows = [_header(a), "x,y"]
        rows += [f"{_fmt(x)},{_fmt(y)}" for x, y in pts]
        _write(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_dim(args) -> int:
    a = Parameter.parse(args.a, exact=args.exact)
    lo, hi = _parse_levels(args.levels)
    est = dimension_estimate(a, lo, hi, method=args.method)
    prof = cover_profile(a, hi)
    rows = [_header(a), "level,delta,area,boxes,log_inv_delta,log_boxes"]
    for i in range(lo, hi + 1):
        d, ar, nb = prof.delta[i], prof.area[i], prof.boxes[i]
        rows.append(
            f"{i},{d:.17g},{ar:.17g},{nb:.17g},{math.log(1 / d):.17g},{math.log(nb):.17g}"
        )
    rows.append(f"# method={est.method} slope={est.slope:.17g} "
                f"intercept={est.intercept:.17g} max_residual={est.max_residual:.3g} "
                f"reference={est.reference:.17g}")
    _write(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_arclength(args) -> int:
    a = Parameter.parse(args.a, exact=args.exact)
    lo, hi = _parse_levels(args.levels)
    prof = arc_length_profile(a, hi)
    rows = [_header(a), "level,euclidean_length,manhattan_length,total_variation"]
    for i in range(lo, hi + 1):
        rows.append(
            f"{i},{prof.euclidean[i]:.17g},{prof.manhattan[i]:.17g},"
            f"{prof.total_variation[i]:.17g}"
        )
    _write(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_derivative(args) -> int:
    a = Parameter.parse(args.a, exact=args.exact)
    x = _parse_x(args.x, a, args.n)
    if len(x.digits) < args.n:
        x = x.padded(args.n)
    tr = derivative_trace(a, x, args.n)
    lines = [_header(a), "m,digit,D_m"]
    for m, (d, v) in enumerate(zip(x.digits, tr.values), start=1):
        lines.append(f"{m},{d},{_fmt(v)}")
    lines.append(f"# ones_count={tr.stats.ones_count} ratio={tr.stats.ratio} "
                 f"gamma_estimate={tr.stats.gamma_estimate} "
                 f"max_abs={tr.max_abs:.17g} diverged={tr.diverged}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_classify(args) -> int:
    a = Parameter.parse(args.a, exact=args.exact)
    rc = region_classify(a)
    lines = [
        _header(a),
        f"label = {rc.label.value}",
        f"first_derivative = {rc.first_derivative}",
        f"second_derivative = {rc.second_derivative}",
        f"a0 = {rc.a0:.17g}",
    ]
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_a0(args) -> int:
    a0 = find_a0(args.tol)
    residual = 54 * a0**3 - 27 * a0**2 - 1
    lines = [
        f"# version={__version__}",
        f"a0 = {a0:.17g}",
        f"residual = {residual:.3g}",
        f"tol = {args.tol:.3g}",
    ]
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_chaos(args) -> int:
    a = Parameter.parse(args.a, exact=args.exact)
    sample = chaos_game(a, args.n, burn_in=args.burn_in, seed=args.seed)
    if args.format == "svg":
        _write(args.out, _svg_polyline(sample.points))
    else:
        rows = [_header(a, seed=args.seed), "x,y,step"]
        rows += [
            f"{x:.17g},{y:.17g},{t}" for t, (x, y) in enumerate(sample.points)
        ]
        _write(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_experiment(args) -> int:
    summary = digit_frequency_experiment(args.samples, args.digits, args.seed)
    lines = [
        f"# seed={args.seed} version={__version__}",
        f"samples = {summary.samples}",
        f"digits = {summary.n}",
        f"mean_ratio = {summary.mean:.17g}",
        f"min_ratio = {summary.min:.17g}",
        f"max_ratio = {summary.max:.17g}",
        f"fraction_within_0.02 = {summary.fraction_within:.17g}",
    ]
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> _Parser:
    p = _Parser(prog="okamoto", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=False):
        sp.add_argument("--a", required=True, help="parameter a: decimal or p/q")
        sp.add_argument("--exact", action="store_true", help="exact rational arithmetic")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--threads", type=int, default=1,
                        help="worker count; output is independent of it")
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("eval", help="evaluate F_a(x) with a certified error bound")
    common(sp)
    sp.add_argument("--x", required=True, help="point: decimal in [0,1] or p/q")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--digits", type=int, default=200, help="max digits to expand")
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("iterate", help="emit the level-i polyline (csv or svg)")
    common(sp)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--format", choices=("csv", "svg"), default="csv")
    sp.set_defaults(fn=cmd_iterate)

    sp = sub.add_parser("dim", help="box-counting dimension regression")
    common(sp)
    sp.add_argument("--levels", default="1..10", help="inclusive range lo..hi")
    sp.add_argument("--method", choices=("column", "square"), default="column")
    sp.set_defaults(fn=cmd_dim)

    sp = sub.add_parser("arclength", help="per-level polyline lengths")
    common(sp)
    sp.add_argument("--levels", default="0..10")
    sp.set_defaults(fn=cmd_arclength)

    sp = sub.add_parser("derivative", help="slope-product trace along x's digits")
    common(sp)
    sp.add_argument("--x", required=True)
    sp.add_argument("--n", type=int, default=50)
    sp.set_defaults(fn=cmd_derivative)

    sp = sub.add_parser("classify", help="differentiability region of a")
    common(sp)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("a0", help="critical parameter a0 by bisection")
    sp.add_argument("--tol", type=float, default=1e-14)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_a0)

    sp = sub.add_parser("chaos", help="weighted chaos game on the graph")
    common(sp, seed=True)
    sp.add_argument("--n", type=int, default=10000)
    sp.add_argument("--burn-in", type=int, default=30, dest="burn_in")
    sp.add_argument("--format", choices=("csv", "svg"), default="csv")
    sp.set_defaults(fn=cmd_chaos)

    sp = sub.add_parser("experiment", help="digit-frequency experiment")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--digits", type=int, default=3000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_experiment)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except PrecisionError as exc:
        print(f"okamoto: precision failure: {exc}", file=sys.stderr)
        return 2
    except OverflowError as exc:
        print(f"okamoto: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (OkamotoError, ValueError) as exc:
        print(f"okamoto: error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
