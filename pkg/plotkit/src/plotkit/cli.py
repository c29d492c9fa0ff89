"""plotkit command line: render sweep CSVs to image files.

Usage:  plotkit <fig1|fig2> --in sweep.csv --out figure.png [--inset]
                [--stride K]

Exit codes: 0 on success, 2 on schema or argument problems.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

import matplotlib.pyplot as plt

from .figures import FigureSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotkit", description="render cohres sweep CSVs to figures")
    parser.add_argument("kind", choices=["fig1", "fig2"],
                        help="fig1: asymmetry growth; fig2: repeatability error")
    parser.add_argument("--in", dest="csv_path", required=True,
                        help="input sweep CSV")
    parser.add_argument("--out", dest="out_path", required=True,
                        help="output image path (png, pdf, svg, ...)")
    parser.add_argument("--inset", action="store_true",
                        help="zoom panel over N in [150, 200] (fig1 only)")
    parser.add_argument("--stride", type=int, default=0,
                        help="marker thinning; 0 = kind default")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(csv_path=args.csv_path, out_path=args.out_path,
                      kind=args.kind, marker_stride=args.stride,
                      inset=args.inset)
    try:
        fig = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
