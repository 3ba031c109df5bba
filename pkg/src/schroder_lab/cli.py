"""Command-line front end: CSV curve data and JSON verification reports.

One subcommand per reproducible artifact:

    coeffs      series coefficients a_n(s) (exact string + float)
    potential   one switchback branch V_n^(m) sampled on an x grid
    transit     per-leg transit times and unit group sums (JSON report)
    trajectory  continuous interpolated orbit x(t) and its velocity
    branches    the multi-valued Schroeder function, one column per branch
    verify      the full verification suite (exit 0 iff everything passes)

Output conventions: CSV with a header row, comma delimiter, LF endings,
floats at 17 significant digits, exact rationals as "p/q".  Identical
invocations produce byte-identical output.  ``--out`` writes to a file
(relative paths resolve against $SCHRODER_LAB_OUT when set); default is
stdout.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import potentials, schroder, verify
from .algebra import exactify, format_scalar
from .errors import SchroderLabError
from .series import u_coefficients

OUT_DIR_ENV = "SCHRODER_LAB_OUT"


def _parse_s(text: str) -> Fraction:
    try:
        return exactify(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemExit(f"error: cannot parse --s {text!r}: {exc}")


def _resolve_out(out: str | None):
    if out is None:
        return None
    path = Path(out)
    env = os.environ.get(OUT_DIR_ENV)
    if env and not path.is_absolute():
        path = Path(env) / path
    return path


def _emit(text: str, out: str | None):
    path = _resolve_out(out)
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_coeffs(args) -> int:
    s = _parse_s(args.s)
    series = u_coefficients(s, args.n)
    rows = [
        (str(n), format_scalar(series.a(n)), _fmt(float(series.a(n))))
        for n in range(1, args.n + 1)
    ]
    _emit(_csv(("n", "a_n", "a_n_float"), rows), args.out)
    return 0


def cmd_potential(args) -> int:
    s = _parse_s(args.s)
    node = potentials.family_node(args.family, args.index, s)
    xmin = float(node.lower_tp) if args.xmin is None else float(_parse_s(args.xmin))
    xmax = float(node.upper_tp) if args.xmax is None else float(_parse_s(args.xmax))
    xs = np.linspace(xmin, xmax, args.samples)
    vs = node.value(xs, args.n)
    rows = [(_fmt(x), _fmt(v)) for x, v in zip(xs, vs)]
    _emit(_csv(("x", "V"), rows), args.out)
    return 0


def cmd_transit(args) -> int:
    s = _parse_s(args.s)
    report = verify.transit_report(s, args.depth, args.n)
    _emit(report.to_json(), args.out)
    return 0


def cmd_trajectory(args) -> int:
    s = _parse_s(args.s)
    x0 = _parse_s(args.x0)
    ts = np.arange(args.t0, args.t1 + 0.5 * args.dt, args.dt)
    traj = schroder.trajectory(x0, s, [float(t) for t in ts], args.n)
    rows = []
    for t, x in traj.samples:
        v = schroder.velocity(x0, s, t, args.n)
        rows.append((_fmt(t), _fmt(x), _fmt(v)))
    _emit(_csv(("t", "x", "dxdt"), rows), args.out)
    return 0


def cmd_branches(args) -> int:
    s = _parse_s(args.s)
    branches = schroder.psi_branches(s, args.count, args.n)
    xs = np.linspace(0.0, float(s) / 4.0, args.samples)
    header = ("x",) + tuple(f"branch_{b.index}" for b in branches)
    rows = []
    for x in xs:
        cells = [_fmt(x)]
        for b in branches:
            if float(b.lower) - 1e-12 <= x <= float(b.upper) + 1e-12:
                cells.append(_fmt(b.value(float(np.clip(x, float(b.lower), float(b.upper))))))
            else:
                cells.append("")
        rows.append(tuple(cells))
    _emit(_csv(header, rows), args.out)
    return 0


def cmd_verify(args) -> int:
    report = verify.run_all(only=args.only, N=args.n)
    for line in report.lines():
        print(line)
    print(f"{report.passed}/{report.total} checks passed")
    if args.json:
        _emit(report.to_json(), args.json)
    return 0 if report.all_passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schroder-lab",
        description="Potentials underlying the logistic map: series data, "
        "switchback branches, transit-time and duality verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, n_default=200):
        p.add_argument("--s", required=True, help='map parameter, e.g. "5/2" or "2.5"')
        p.add_argument("--n", type=int, default=n_default, help="series order (default %(default)s)")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None, help="output format")

    p = sub.add_parser("coeffs", help="series coefficients a_n(s)")
    common(p, n_default=50)
    p.set_defaults(fn=cmd_coeffs, native_format="csv")

    p = sub.add_parser("potential", help="sample one switchback branch")
    common(p)
    p.add_argument("--family", type=int, default=0, help="family index m (default 0)")
    p.add_argument("--index", type=int, default=0, help="sequence index n (default 0)")
    p.add_argument("--xmin", default=None, help="left sample bound (default: lower turning point)")
    p.add_argument("--xmax", default=None, help="right sample bound (default: upper turning point)")
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(fn=cmd_potential, native_format="csv")

    p = sub.add_parser("transit", help="transit times along the potential path")
    common(p)
    p.add_argument("--depth", type=int, default=3, help="number of unit-time groups")
    p.set_defaults(fn=cmd_transit, native_format="json")

    p = sub.add_parser("trajectory", help="continuous orbit interpolation")
    common(p)
    p.add_argument("--x0", required=True, help="starting point")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=3.0)
    p.add_argument("--dt", type=float, default=0.125)
    p.set_defaults(fn=cmd_trajectory, native_format="csv")

    p = sub.add_parser("branches", help="branches of the Schroeder function")
    common(p)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--samples", type=int, default=257)
    p.set_defaults(fn=cmd_branches, native_format="csv")

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--only", default=None, help=f"one of: {', '.join(verify.CHECKS)}")
    p.add_argument("--n", type=int, default=200, help="series order (default %(default)s)")
    p.add_argument("--json", default=None, help="also write the JSON report here")
    p.set_defaults(fn=cmd_verify, native_format="json")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "format", None) not in (None, getattr(args, "native_format", None)):
        print(
            f"error: {args.command} emits {args.native_format} only", file=sys.stderr
        )
        return 2
    try:
        return args.fn(args)
    except SchroderLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
