"""Render results rows into per-block-length BER/MSE figures.

For each block length T in the selection, :func:`render` emits one two-panel
figure: bit error rate on the left, function-value MSE on the right, both on a
log y axis against SNR in dB, one curve per scheme. Styling is fixed so that
rendering the same CSV twice produces byte-identical image files. Zero error
rates cannot sit on a log axis, so they are clamped to :data:`CLAMP_FLOOR` and
flagged with a distinct hollow marker plus a legend entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .reader import ResultRow, load_results, select

#: Zero cells are drawn at this value on the log axis, marked as clamped.
CLAMP_FLOOR = 1e-7

#: Legend label attached to clamped points.
CLAMP_LABEL = f"clamped at {CLAMP_FLOOR:g}"

#: Fixed per-scheme styling; schemes beyond these draw from _EXTRA_STYLES.
_SCHEME_STYLES = {
    "DPC": {"color": "#1f77b4", "marker": "o"},
    "SOTA": {"color": "#d62728", "marker": "s"},
}

_EXTRA_STYLES = (
    {"color": "#2ca02c", "marker": "^"},
    {"color": "#9467bd", "marker": "D"},
    {"color": "#8c564b", "marker": "v"},
    {"color": "#e377c2", "marker": "P"},
)

_RC_PARAMS = {
    "figure.figsize": (10.0, 4.2),
    "figure.dpi": 100,
    "savefig.dpi": 120,
    "font.size": 10,
    "axes.titlesize": 11,
    "axes.labelsize": 10,
    "legend.fontsize": 9,
    "lines.linewidth": 1.6,
    "lines.markersize": 5,
}

_VALID_FORMATS = ("png", "svg")


@dataclass(frozen=True)
class PlotSpec:
    """What to plot and where to put it.

    ``schemes`` / ``t_slots`` of ``None`` include everything the CSV offers;
    explicit tuples also fix the curve order. ``formats`` selects the emitted
    image types (png always works; svg optional).
    """

    input_csv: Path
    out_dir: Path
    schemes: tuple[str, ...] | None = None
    t_slots: tuple[int, ...] | None = None
    formats: tuple[str, ...] = ("png",)

    def __post_init__(self) -> None:
        if not self.formats:
            raise ValueError("formats: must name at least one image format")
        for fmt in self.formats:
            if fmt not in _VALID_FORMATS:
                raise ValueError(
                    f"formats: unsupported format {fmt!r} (choose from {', '.join(_VALID_FORMATS)})"
                )


def render(spec: PlotSpec) -> list[Path]:
    """Render one figure per block length and return the written image paths.

    Reads ``spec.input_csv`` (never modifying it), applies the scheme and
    block-length filters, and writes ``ber_mse_T{t}.{fmt}`` files into
    ``spec.out_dir`` (created if needed). Paths are returned in emission
    order: ascending T, formats in spec order.
    """
    rows = select(load_results(spec.input_csv), spec.schemes, spec.t_slots)
    spec.out_dir.mkdir(parents=True, exist_ok=True)

    written: list[Path] = []
    for t in sorted({row.t_slots for row in rows}):
        fig = build_figure([row for row in rows if row.t_slots == t], t,
                           scheme_order=spec.schemes)
        try:
            for fmt in spec.formats:
                path = spec.out_dir / f"ber_mse_T{t}.{fmt}"
                metadata = {"Date": None} if fmt == "svg" else None
                fig.savefig(path, format=fmt, metadata=metadata)
                written.append(path)
        finally:
            plt.close(fig)
    return written


def build_figure(rows: Sequence[ResultRow], t_slots: int,
                 scheme_order: Sequence[str] | None = None):
    """Build the two-panel BER/MSE figure for one block length.

    ``rows`` must all carry ``t_slots``; curves appear in ``scheme_order`` if
    given, else in order of first appearance. The caller owns (and closes)
    the returned figure.
    """
    for row in rows:
        if row.t_slots != t_slots:
            raise ValueError(
                f"row for scheme {row.scheme!r} has T={row.t_slots}, expected T={t_slots}"
            )
    schemes = _ordered_schemes(rows, scheme_order)

    with plt.rc_context(_RC_PARAMS):
        fig, (ax_ber, ax_mse) = plt.subplots(1, 2, layout="constrained")
        for position, scheme in enumerate(schemes):
            points = sorted(
                ((row.snr_db, row.ber, row.mse) for row in rows if row.scheme == scheme),
            )
            snrs = [p[0] for p in points]
            style = _style_for(scheme, position)
            _draw_curve(ax_ber, snrs, [p[1] for p in points], scheme, style)
            _draw_curve(ax_mse, snrs, [p[2] for p in points], scheme, style)

        ax_ber.set_title("Bit error rate")
        ax_ber.set_ylabel("BER")
        ax_mse.set_title("MSE of recovered function value")
        ax_mse.set_ylabel("MSE")
        for ax in (ax_ber, ax_mse):
            ax.set_yscale("log")
            ax.set_xlabel("SNR (dB)")
            ax.grid(True, which="both", alpha=0.3)
            _dedup_legend(ax)
        fig.suptitle(f"T = {t_slots} slots")
    return fig


def _ordered_schemes(rows: Sequence[ResultRow],
                     scheme_order: Sequence[str] | None) -> list[str]:
    seen: dict[str, None] = {}
    for row in rows:
        seen.setdefault(row.scheme, None)
    if scheme_order is None:
        return list(seen)
    return [scheme for scheme in scheme_order if scheme in seen]


def _style_for(scheme: str, position: int) -> dict[str, str]:
    if scheme in _SCHEME_STYLES:
        return _SCHEME_STYLES[scheme]
    return _EXTRA_STYLES[position % len(_EXTRA_STYLES)]


def _draw_curve(ax, snrs: list[float], values: list[float], scheme: str,
                style: dict[str, str]) -> None:
    clamped = [max(value, CLAMP_FLOOR) for value in values]
    ax.plot(snrs, clamped, label=scheme, **style)
    floor_snrs = [snr for snr, value in zip(snrs, values) if value < CLAMP_FLOOR]
    if floor_snrs:
        ax.plot(
            floor_snrs,
            [CLAMP_FLOOR] * len(floor_snrs),
            linestyle="none",
            marker="v",
            markersize=9,
            markerfacecolor="none",
            markeredgecolor=style["color"],
            label=CLAMP_LABEL,
        )


def _dedup_legend(ax) -> None:
    handles, labels = ax.get_legend_handles_labels()
    unique: dict[str, object] = {}
    for handle, label in zip(handles, labels):
        unique.setdefault(label, handle)
    if unique:
        ax.legend(unique.values(), unique.keys())
