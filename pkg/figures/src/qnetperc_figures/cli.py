"""Command-line entry point: regenerate figures from qnetperc artifacts.

    figures curves   --in runs/*.csv [--threshold thr.json] [--zoom] --out fig.png
    figures collapse --in cloud.csv --fit fit.json --out fig.png

Output format follows the --out extension (.png or .svg).
"""

from __future__ import annotations

import argparse
import sys

from .plots import FigureSpec, plot_curves, plot_collapse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures", description="Render qnetperc artifacts as figures."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_curves = sub.add_parser("curves", help="P(theta) curve family, one series per N")
    p_curves.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="CSV")
    p_curves.add_argument("--threshold", help="threshold JSON for a theta_T marker")
    p_curves.add_argument("--zoom", action="store_true", help="zoom onto the crossing")
    p_curves.add_argument("--out", required=True, help="output image (.png or .svg)")

    p_col = sub.add_parser("collapse", help="transformed point-cloud scatter")
    p_col.add_argument("--in", dest="inputs", nargs=1, required=True, metavar="CSV")
    p_col.add_argument("--fit", required=True, help="scaling-fit JSON")
    p_col.add_argument("--out", required=True, help="output image (.png or .svg)")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not str(args.out).lower().endswith((".png", ".svg")):
        parser.error("--out must end in .png or .svg")
    try:
        if args.command == "curves":
            spec = FigureSpec(
                inputs=tuple(args.inputs),
                kind="crossing-zoom" if args.zoom else "curves",
                out=args.out,
                threshold=args.threshold,
            )
            plot_curves(spec)
        else:
            spec = FigureSpec(
                inputs=tuple(args.inputs), kind="collapse", out=args.out, fit=args.fit
            )
            plot_collapse(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4
    print(f"wrote {args.out}")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
