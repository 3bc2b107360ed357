"""Sweep configuration, the Monte Carlo driver, and results output.

The driver walks (scheme, T, SNR) cells, splits each cell's trials into
fixed-size chunks, runs the chunks serially or on a process pool, and merges
chunk records in ascending block order so output bytes never depend on the
worker count.
"""

from __future__ import annotations

import csv
import json
import math
import multiprocessing
import sys
from dataclasses import dataclass, fields
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .engine import CHUNK, SCHEMES, ChunkTask, run_chunk, _tables
from .errors import CapacityError, ConfigError
from .lattice import LatticeConfig
from .metrics import MetricsRecord, merge

CSV_HEADER = "scheme,snr_db,K,N,T,M,delta,trials,ber,ci95_ber,ser,mse,tx_power,seed"


@dataclass(frozen=True)
class SimConfig:
    """Full sweep description; defaults reproduce the reference setup."""

    k_users: int = 2
    n_antennas: int = 5
    t_slots: tuple[int, ...] = (5, 10)
    m_points: int = 4
    delta: float = 2.0
    snr_grid_db: tuple[float, ...] = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0)
    trials_per_point: int = 100_000
    master_seed: int = 0
    schemes: tuple[str, ...] = SCHEMES
    normalize_tx_power: bool = False
    workers: int = 1
    ml_candidate_limit: int = 10 ** 6

    @property
    def lattice(self) -> LatticeConfig:
        return LatticeConfig(self.delta, self.m_points)


def validate_config(cfg: SimConfig) -> None:
    """Raise ConfigError (naming the field) or CapacityError on a bad config."""
    if not isinstance(cfg.k_users, int) or cfg.k_users < 1:
        raise ConfigError(f"k_users: must be an integer >= 1, got {cfg.k_users!r}")
    if not isinstance(cfg.n_antennas, int) or cfg.n_antennas < 1:
        raise ConfigError(f"n_antennas: must be an integer >= 1, got {cfg.n_antennas!r}")
    if not cfg.t_slots or any(not isinstance(t, int) or t < 1 for t in cfg.t_slots):
        raise ConfigError(f"t_slots: must be one or more integers >= 1, got {cfg.t_slots!r}")
    try:
        LatticeConfig(cfg.delta, cfg.m_points)
    except ValueError as exc:
        raise ConfigError(f"delta/m_points: {exc}") from None
    if not cfg.snr_grid_db or any(not math.isfinite(v) for v in cfg.snr_grid_db):
        raise ConfigError(f"snr_grid_db: must be one or more finite reals, got {cfg.snr_grid_db!r}")
    if not isinstance(cfg.trials_per_point, int) or cfg.trials_per_point < 0:
        raise ConfigError(f"trials_per_point: must be an integer >= 0, got {cfg.trials_per_point!r}")
    if not isinstance(cfg.master_seed, int) or not 0 <= cfg.master_seed < 2 ** 64:
        raise ConfigError(f"master_seed: must be an unsigned 64-bit integer, got {cfg.master_seed!r}")
    if not cfg.schemes or any(s not in SCHEMES for s in cfg.schemes):
        raise ConfigError(f"schemes: must be a nonempty subset of {SCHEMES}, got {cfg.schemes!r}")
    if len(set(cfg.schemes)) != len(cfg.schemes):
        raise ConfigError(f"schemes: duplicate entries in {cfg.schemes!r}")
    if not isinstance(cfg.workers, int) or cfg.workers < 1:
        raise ConfigError(f"workers: must be an integer >= 1, got {cfg.workers!r}")
    if not isinstance(cfg.ml_candidate_limit, int) or cfg.ml_candidate_limit < 1:
        raise ConfigError(f"ml_candidate_limit: must be an integer >= 1, got {cfg.ml_candidate_limit!r}")
    n_cand = cfg.m_points ** cfg.k_users
    if n_cand > cfg.ml_candidate_limit:
        raise CapacityError(
            f"computing-vector search needs M^K = {cfg.m_points}^{cfg.k_users} = {n_cand} "
            f"candidates, over the limit {cfg.ml_candidate_limit}; reduce K or M"
        )


def _cells(cfg: SimConfig):
    for scheme in cfg.schemes:
        for t in cfg.t_slots:
            for snr_index, snr_db in enumerate(cfg.snr_grid_db):
                yield scheme, t, snr_index, float(snr_db)


def _cell_tasks(cfg: SimConfig, scheme: str, t: int, snr_index: int, snr_db: float):
    for start in range(0, cfg.trials_per_point, CHUNK):
        yield ChunkTask(
            scheme=scheme,
            t_slots=t,
            snr_index=snr_index,
            snr_db=snr_db,
            start=start,
            count=min(CHUNK, cfg.trials_per_point - start),
            k_users=cfg.k_users,
            n_antennas=cfg.n_antennas,
            m_points=cfg.m_points,
            delta=cfg.delta,
            master_seed=cfg.master_seed,
            normalize_tx_power=cfg.normalize_tx_power,
        )


def run_sweep(cfg: SimConfig) -> list[MetricsRecord]:
    """Run every (scheme, T, SNR) cell of the sweep.

    Returns one record per cell in the cell enumeration order. Output is
    bit-identical across runs and worker counts for a fixed config.
    """
    validate_config(cfg)
    cells = list(_cells(cfg))
    tasks: list[ChunkTask] = []
    spans: list[tuple[int, int]] = []  # task-index range of each cell
    for scheme, t, snr_index, snr_db in cells:
        first = len(tasks)
        tasks.extend(_cell_tasks(cfg, scheme, t, snr_index, snr_db))
        spans.append((first, len(tasks)))
    if not tasks:
        return []

    if cfg.workers > 1 and len(tasks) > 1:
        with multiprocessing.get_context("fork").Pool(cfg.workers) as pool:
            chunk_records = list(pool.imap(run_chunk, tasks, chunksize=1))
    else:
        chunk_records = [run_chunk(task) for task in tasks]

    records: list[MetricsRecord] = []
    for (scheme, t, snr_index, snr_db), (first, last) in zip(cells, spans):
        cell_rec = MetricsRecord(scheme=scheme, snr_db=snr_db, t_slots=t)
        for rec in chunk_records[first:last]:  # ascending block order
            cell_rec = merge(cell_rec, rec)
        records.append(cell_rec)
        print(
            f"[{len(records)}/{len(cells)}] {scheme} T={t} snr={snr_db:g} dB: "
            f"ber={cell_rec.ber:.3e} ser={cell_rec.ser:.3e} mse={cell_rec.mse:.3e}",
            file=sys.stderr,
            flush=True,
        )
    return records


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def config_to_dict(cfg: SimConfig) -> dict:
    """JSON-ready mapping; config_from_dict inverts it exactly."""
    out = {}
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        out[f.name] = list(value) if isinstance(value, tuple) else value
    return out


def config_from_dict(values: dict) -> SimConfig:
    """Rebuild a SimConfig from config_to_dict / parsed-file values."""
    return build_config(values)


def emit_results(records, out_dir, cfg: SimConfig):
    """Write results.csv and manifest.json; returns their paths.

    CSV floats carry 10 significant digits with '\\n' line endings, so equal
    sweeps produce byte-identical files.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "results.csv"
    manifest_path = out / "manifest.json"

    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for rec in records:
            writer.writerow([
                rec.scheme,
                _fmt(rec.snr_db),
                cfg.k_users,
                cfg.n_antennas,
                rec.t_slots,
                cfg.m_points,
                _fmt(cfg.delta),
                rec.trials,
                _fmt(rec.ber),
                _fmt(rec.ci95_ber),
                _fmt(rec.ser),
                _fmt(rec.mse),
                _fmt(rec.tx_power),
                cfg.master_seed,
            ])

    tab = _tables(cfg.delta, cfg.m_points)
    manifest = {
        "config": config_to_dict(cfg),
        "tool_version": __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "snr_definition": "snr_db = -10*log10(noise_var), referenced to unit nominal transmit power",
        "tx_power": {
            "component_sum": tab.e_d + tab.e_s,
            "dpc_enumerated_mean": tab.dpc_power,
            "normalize_tx_power": cfg.normalize_tx_power,
            "note": (
                "the modulo wrap inflates the dirty-paper mean transmit power above the "
                "sum of the component powers; rows report the measured value"
            ),
        },
    }
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path, manifest_path


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part.strip()) for part in text.split(","))


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part.strip()) for part in text.split(","))


def _parse_schemes(text: str) -> tuple[str, ...]:
    return tuple(part.strip().upper() for part in text.split(","))


_FIELD_PARSERS = {
    "k_users": int,
    "n_antennas": int,
    "t_slots": _parse_int_list,
    "m_points": int,
    "delta": float,
    "snr_grid_db": _parse_float_list,
    "trials_per_point": int,
    "master_seed": int,
    "schemes": _parse_schemes,
    "normalize_tx_power": _parse_bool,
    "workers": int,
    "ml_candidate_limit": int,
}

_TUPLE_FIELDS = {"t_slots": int, "snr_grid_db": float, "schemes": str}


def parse_config_file(path) -> dict[str, str]:
    """Read a flat `key = value` file; '#' starts a comment. Values stay raw
    strings for build_config to coerce."""
    values: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or not key:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            if key not in _FIELD_PARSERS:
                raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = value.strip()
    return values


def build_config(file_values: dict | None = None, overrides: dict | None = None) -> SimConfig:
    """Merge raw file values and override values into a validated SimConfig.

    String values are parsed per field; native values (from a manifest or
    caller) are normalized to the field types. Overrides win over the file.
    """
    merged = {}
    for source in (file_values or {}, overrides or {}):
        for key, value in source.items():
            if key not in _FIELD_PARSERS:
                raise ConfigError(f"unknown config key {key!r}")
            if isinstance(value, str):
                try:
                    value = _FIELD_PARSERS[key](value)
                except ValueError as exc:
                    raise ConfigError(f"{key}: {exc}") from None
            elif key in _TUPLE_FIELDS:
                value = tuple(_TUPLE_FIELDS[key](v) for v in value)
            merged[key] = value
    cfg = SimConfig(**merged)
    validate_config(cfg)
    return cfg
