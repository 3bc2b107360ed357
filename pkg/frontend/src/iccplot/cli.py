"""Command-line entry point: ``plot --csv PATH --out DIR [...]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import PlotSpec, render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render BER/MSE figures (one per block length) from a "
        "simulator results CSV.",
    )
    parser.add_argument("--csv", required=True, metavar="PATH",
                        help="results CSV emitted by icc-sim")
    parser.add_argument("--out", required=True, metavar="DIR",
                        help="directory to write image files into")
    parser.add_argument("--schemes", metavar="LIST",
                        help="comma-separated scheme names to include (default: all)")
    parser.add_argument("--t-slots", dest="t_slots", metavar="LIST",
                        help="comma-separated block lengths to include (default: all)")
    parser.add_argument("--formats", default="png", metavar="LIST",
                        help="comma-separated image formats: png, svg (default: png)")
    return parser


def _comma_list(text: str | None) -> tuple[str, ...] | None:
    if text is None:
        return None
    items = tuple(item.strip() for item in text.split(",") if item.strip())
    if not items:
        raise ValueError(f"expected a comma-separated list, got {text!r}")
    return items


def _int_list(text: str | None) -> tuple[int, ...] | None:
    items = _comma_list(text)
    if items is None:
        return None
    try:
        return tuple(int(item) for item in items)
    except ValueError:
        raise ValueError(f"t-slots: expected comma-separated integers, got {text!r}") from None


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = PlotSpec(
            input_csv=Path(args.csv),
            out_dir=Path(args.out),
            schemes=_comma_list(args.schemes),
            t_slots=_int_list(args.t_slots),
            formats=_comma_list(args.formats) or ("png",),
        )
        written = render(spec)
    except Exception as exc:
        print(f"plot: error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(f"wrote {path}")
    return 0
