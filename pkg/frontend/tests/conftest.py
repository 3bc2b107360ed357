"""Shared fixtures: hand-written results CSVs in the simulator's emitted shape."""

from __future__ import annotations

from pathlib import Path

import pytest

RESULTS_HEADER = "scheme,snr_db,K,N,T,M,delta,trials,ber,ci95_ber,ser,mse,tx_power,seed"


def write_results_csv(path: Path, cells, header: str = RESULTS_HEADER) -> Path:
    """Write a results CSV from (scheme, snr_db, T, ber, mse) tuples.

    Columns the plots never read get fixed plausible values.
    """
    lines = [header]
    for scheme, snr_db, t_slots, ber, mse in cells:
        lines.append(
            f"{scheme},{snr_db:g},2,5,{t_slots},4,2,1000,"
            f"{ber:.10g},0.001,{ber:.10g},{mse:.10g},1.5,0"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


SAMPLE_CELLS = [
    # scheme, snr_db, T, ber, mse  — DPC hits ber=0 at T=5 and ber=mse=0 at T=10
    ("DPC", 0, 5, 0.15, 0.04),
    ("DPC", 10, 5, 0.002, 0.002),
    ("DPC", 20, 5, 0.0, 0.0018),
    ("SOTA", 0, 5, 0.23, 0.53),
    ("SOTA", 10, 5, 0.238, 0.57),
    ("SOTA", 20, 5, 0.248, 0.60),
    ("DPC", 0, 10, 0.15, 0.0066),
    ("DPC", 10, 10, 0.0017, 1e-05),
    ("DPC", 20, 10, 0.0, 0.0),
    ("SOTA", 0, 10, 0.226, 0.505),
    ("SOTA", 10, 10, 0.238, 0.528),
    ("SOTA", 20, 10, 0.2499, 0.5508),
]


@pytest.fixture
def sample_csv(tmp_path: Path) -> Path:
    return write_results_csv(tmp_path / "results.csv", SAMPLE_CELLS)
