"""Command line entry point: ``analyze --input pts.csv --r 4 --out report.json``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .errors import DatasetParseError, DomainError, TransformUndefined
from .report import PipelineError, RunConfig, parse_dataset, run_pipeline, write_report
from .svg import render_svg
from .transforms import TransformSpec

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_TRANSFORM = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _center(text: str):
    if text == "auto":
        return "auto"
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or X,Y, got {text!r}") from None
    return (x, y)


def _translation(text: str) -> tuple[int, int]:
    try:
        i, k = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected I,K integers, got {text!r}") from None
    return i, k


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="analyze", description="Typed topological structure of a 2-D point set.")
    p.add_argument("--input", required=True, help="CSV (x,y per line) or JSON array of [x, y]")
    p.add_argument("--format", choices=("csv", "json"), help="input format (default: from suffix)")
    p.add_argument("--r", type=float, required=True, help="track width")
    p.add_argument("--n", type=int, help="sectors per unit track (default: smallest valid, 12)")
    p.add_argument("--center", type=_center, default=(0.0, 0.0), help="grid center X,Y or 'auto'")
    p.add_argument("--t-max", type=int, help="ignore cells beyond this track")
    p.add_argument("--pad", action="store_true", help="add the r-lattice over the data's bounding box")
    p.add_argument("--rotate", type=_fraction, metavar="DEG", help="rotate cells by DEG degrees")
    p.add_argument("--translate", type=_translation, metavar="I,K", help="move cells K tracks along ray I")
    p.add_argument("--scale", type=_fraction, metavar="K", help="scale cells by K")
    p.add_argument("--curve", metavar="EXPR", help="implicit curve in x and y, e.g. 'x**2 + y**2 = 36'")
    p.add_argument("--out", required=True, help="report JSON path")
    p.add_argument("--svg", help="SVG output path")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        specs = []
        if args.rotate is not None:
            specs.append(TransformSpec.rotation(args.rotate))
        if args.translate is not None:
            specs.append(TransformSpec.translation(*args.translate))
        if args.scale is not None:
            specs.append(TransformSpec.scaling(args.scale))
        config = RunConfig(
            r=args.r,
            n=args.n,
            center=args.center,
            t_max=args.t_max,
            pad=args.pad,
            curve=args.curve,
            transforms=specs,
            input=args.input,
        )
    except DomainError as e:
        print(f"analyze: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        data = parse_dataset(args.input, args.format)
    except OSError as e:
        print(f"analyze: cannot read {args.input}: {e.strerror}", file=sys.stderr)
        return EXIT_DATA
    except (DatasetParseError, DomainError) as e:
        print(f"analyze: {args.input}: {e}", file=sys.stderr)
        return EXIT_DATA
    if data.duplicates:
        print(f"analyze: warning: removed {data.duplicates} duplicate point(s)", file=sys.stderr)

    try:
        report = run_pipeline(config, data.points, data.duplicates)
    except PipelineError as e:
        print(f"analyze: {e}", file=sys.stderr)
        return EXIT_TRANSFORM if isinstance(e.cause, TransformUndefined) else EXIT_DATA

    try:
        write_report(report, args.out)
        if args.svg:
            render_svg(report, args.svg)
    except OSError as e:
        print(f"analyze: cannot write output: {e}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
