"""Render figures from isacsim CSV files.

Exit codes: 0 success, 2 usage errors including missing CSV columns (the
offending column names are printed).
"""
from __future__ import annotations

import argparse
import sys

from .figures import FIGURE_KINDS, FigureSpec, MissingColumnsError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotkit-render",
        description="Render curve overlays, sweep lines/surfaces and "
                    "fading-fit overlays from isacsim CSV output.",
    )
    parser.add_argument("--csv", required=True, help="input CSV path")
    parser.add_argument("--kind", choices=FIGURE_KINDS, default="ccdf")
    parser.add_argument("--out", required=True, help="output image path (png/svg/pdf)")
    parser.add_argument("--modes", default="",
                        help="comma-separated mode filter (empty = all)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    modes = tuple(m for m in args.modes.replace(",", " ").split() if m)
    spec = FigureSpec(csv_path=args.csv, figure_kind=args.kind, mode_filter=modes)
    try:
        render(spec, args.out)
    except MissingColumnsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
