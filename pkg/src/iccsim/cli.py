"""Command-line entry point for running sweeps."""

from __future__ import annotations

import argparse
import sys

from .harness import build_config, emit_results, parse_config_file, run_sweep


def _parse_snr_range(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected START:STOP:STEP, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0:
        raise ValueError(f"snr step must be positive, got {step:g}")
    grid = []
    value = start
    while value <= stop + 1e-9:  # stop is inclusive
        grid.append(round(value, 9))
        value = start + len(grid) * step
    if not grid:
        raise ValueError(f"empty snr range {text!r}")
    return tuple(grid)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icc-sim",
        description="Monte Carlo link simulation of lattice dirty-paper "
        "communication-and-computing against a linear-receiver baseline.",
    )
    parser.add_argument("--config", metavar="PATH", help="flat key = value config file")
    parser.add_argument("--out", metavar="DIR", default="results", help="output directory (default: results)")
    parser.add_argument("--seed", metavar="U64", type=int, help="master seed")
    parser.add_argument("--workers", metavar="INT", type=int, help="worker process count")
    parser.add_argument("--schemes", metavar="LIST", help="comma list of schemes (DPC,SOTA)")
    parser.add_argument("--snr", metavar="START:STOP:STEP", help="SNR grid in dB, stop inclusive")
    parser.add_argument("--trials", metavar="INT", type=int, help="Monte Carlo blocks per grid point")
    parser.add_argument("--t-slots", metavar="LIST", help="comma list of block lengths")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        file_values = parse_config_file(args.config) if args.config else {}
        overrides = {}
        if args.seed is not None:
            overrides["master_seed"] = args.seed
        if args.workers is not None:
            overrides["workers"] = args.workers
        if args.schemes is not None:
            overrides["schemes"] = args.schemes
        if args.snr is not None:
            overrides["snr_grid_db"] = _parse_snr_range(args.snr)
        if args.trials is not None:
            overrides["trials_per_point"] = args.trials
        if args.t_slots is not None:
            overrides["t_slots"] = args.t_slots

        cfg = build_config(file_values, overrides)
        records = run_sweep(cfg)
        csv_path, manifest_path = emit_results(records, args.out, cfg)
    except Exception as exc:
        print(f"icc-sim: error: {exc}", file=sys.stderr)
        return 1

    print(f"{'scheme':<6} {'T':>3} {'snr_db':>7} {'trials':>8} {'ber':>12} {'ser':>12} {'mse':>12}")
    for rec in records:
        print(
            f"{rec.scheme:<6} {rec.t_slots:>3} {rec.snr_db:>7g} {rec.trials:>8} "
            f"{rec.ber:>12.4e} {rec.ser:>12.4e} {rec.mse:>12.4e}"
        )
    print(f"wrote {csv_path} and {manifest_path}")
    return 0
