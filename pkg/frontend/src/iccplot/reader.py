"""Load and filter simulator results CSVs.

The plotting frontend consumes the simulator's ``results.csv`` exactly as
emitted: one row per (scheme, block length, SNR) cell. Only the columns this
package actually plots are required to be present; extra columns pass through
untouched. All failures raise typed errors that name what was missing so the
CLI can report them verbatim.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

#: Columns the plots reference. The CSV may carry more; these must exist.
REQUIRED_COLUMNS = ("scheme", "snr_db", "T", "ber", "mse")


class SchemaError(ValueError):
    """The CSV header or a cell does not match the expected results schema."""


class EmptySelectionError(ValueError):
    """No data rows survive the requested scheme / block-length filters."""


@dataclass(frozen=True)
class ResultRow:
    """One simulated cell: a (scheme, block length, SNR) point."""

    scheme: str
    snr_db: float
    t_slots: int
    ber: float
    mse: float


def load_results(path: str | Path) -> list[ResultRow]:
    """Parse a results CSV into rows, validating the header by column name.

    Raises :class:`SchemaError` naming every required column missing from the
    header, or the first cell that fails to parse. Raises
    :class:`EmptySelectionError` if the file holds a header but no data rows.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        dict_reader = csv.DictReader(fh)
        header = dict_reader.fieldnames or []
        missing = [name for name in REQUIRED_COLUMNS if name not in header]
        if missing:
            raise SchemaError(
                f"{path}: missing required column(s): {', '.join(missing)} "
                f"(header has: {', '.join(header) if header else 'nothing'})"
            )
        rows: list[ResultRow] = []
        for lineno, raw in enumerate(dict_reader, start=2):
            rows.append(_parse_row(raw, path, lineno))
    if not rows:
        raise EmptySelectionError(f"{path}: no data rows")
    return rows


def _parse_row(raw: dict[str, str], path: Path, lineno: int) -> ResultRow:
    def cell(column: str, convert):
        value = raw.get(column)
        if value is None:
            raise SchemaError(f"{path}:{lineno}: row has no value for column {column!r}")
        try:
            return convert(value)
        except ValueError:
            raise SchemaError(
                f"{path}:{lineno}: column {column!r} has unparseable value {value!r}"
            ) from None

    return ResultRow(
        scheme=cell("scheme", str),
        snr_db=cell("snr_db", float),
        t_slots=cell("T", int),
        ber=cell("ber", float),
        mse=cell("mse", float),
    )


def select(
    rows: Sequence[ResultRow],
    schemes: Sequence[str] | None = None,
    t_slots: Sequence[int] | None = None,
) -> list[ResultRow]:
    """Keep rows matching the given scheme names and block lengths.

    ``None`` means "keep all" for that axis. Row order is preserved. Raises
    :class:`EmptySelectionError` describing the filters and what the data
    actually offers when nothing survives.
    """
    kept = list(rows)
    if schemes is not None:
        wanted_schemes = tuple(schemes)
        kept = [row for row in kept if row.scheme in wanted_schemes]
    if t_slots is not None:
        wanted_t = tuple(t_slots)
        kept = [row for row in kept if row.t_slots in wanted_t]
    if not kept:
        parts = []
        if schemes is not None:
            parts.append(f"schemes={','.join(schemes)}")
        if t_slots is not None:
            parts.append(f"t_slots={','.join(str(t) for t in t_slots)}")
        have_schemes = ", ".join(sorted({row.scheme for row in rows}))
        have_t = ", ".join(str(t) for t in sorted({row.t_slots for row in rows}))
        raise EmptySelectionError(
            "empty selection: no rows match "
            + " and ".join(parts or ["(no filters)"])
            + f"; data has schemes [{have_schemes}] and T values [{have_t}]"
        )
    return kept
