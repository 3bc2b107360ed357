"""Streaming aggregation of per-block outcomes into BER / SER / function-MSE
and transmit-power statistics with normal-approximation confidence intervals."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class MetricsRecord:
    """Aggregate for one (scheme, SNR, T) sweep cell.

    Counts and sums are the stored state; rates and intervals are derived.
    ci95 values use the normal approximation, which is loose at very low
    error counts.
    """

    scheme: str
    snr_db: float
    t_slots: int
    trials: int = 0
    bit_errors: int = 0
    total_bits: int = 0
    symbol_errors: int = 0
    total_symbols: int = 0
    mse_sum: float = 0.0      # sum of |f_hat - f|^2
    mse_sq_sum: float = 0.0   # sum of |f_hat - f|^4, for the MSE interval
    tx_power_sum: float = 0.0  # sum over blocks of the block-mean |x|^2

    @property
    def ber(self) -> float:
        return self.bit_errors / self.total_bits if self.total_bits else 0.0

    @property
    def ser(self) -> float:
        return self.symbol_errors / self.total_symbols if self.total_symbols else 0.0

    @property
    def mse(self) -> float:
        return self.mse_sum / self.trials if self.trials else 0.0

    @property
    def tx_power(self) -> float:
        return self.tx_power_sum / self.trials if self.trials else 0.0

    @property
    def ci95_ber(self) -> float:
        if not self.total_bits:
            return 0.0
        p = self.ber
        return 1.96 * math.sqrt(p * (1.0 - p) / self.total_bits)

    @property
    def ci95_mse(self) -> float:
        if not self.trials:
            return 0.0
        var = max(self.mse_sq_sum / self.trials - self.mse ** 2, 0.0)
        return 1.96 * math.sqrt(var / self.trials)


def record_block(rec: MetricsRecord, frame, f_true: complex, detection) -> MetricsRecord:
    """Fold one block into the record: exact bit/symbol comparisons against
    the frame's truth, squared function error, and the block's mean transmit
    power. Returns a new record."""
    sym_hat = detection.v_hat if hasattr(detection, "v_hat") else detection.d_hat
    bits_hat = np.asarray(detection.bits_hat)
    if frame.data_bits.shape != bits_hat.shape or frame.data_symbols.shape != np.shape(sym_hat):
        raise ValueError("detection shapes do not match the frame")
    err = abs(complex(detection.f_hat) - complex(f_true)) ** 2
    return replace(
        rec,
        trials=rec.trials + 1,
        bit_errors=rec.bit_errors + int(np.sum(frame.data_bits != bits_hat)),
        total_bits=rec.total_bits + frame.data_bits.size,
        symbol_errors=rec.symbol_errors + int(np.sum(frame.data_symbols != sym_hat)),
        total_symbols=rec.total_symbols + frame.data_symbols.size,
        mse_sum=rec.mse_sum + err,
        mse_sq_sum=rec.mse_sq_sum + err ** 2,
        tx_power_sum=rec.tx_power_sum + float(np.mean(np.abs(frame.encoded) ** 2)),
    )


def merge(a: MetricsRecord, b: MetricsRecord) -> MetricsRecord:
    """Combine two records of the same cell; counts add, rates re-derive."""
    if (a.scheme, a.snr_db, a.t_slots) != (b.scheme, b.snr_db, b.t_slots):
        raise ValueError(
            f"cannot merge records of different cells: "
            f"{(a.scheme, a.snr_db, a.t_slots)} vs {(b.scheme, b.snr_db, b.t_slots)}"
        )
    return replace(
        a,
        trials=a.trials + b.trials,
        bit_errors=a.bit_errors + b.bit_errors,
        total_bits=a.total_bits + b.total_bits,
        symbol_errors=a.symbol_errors + b.symbol_errors,
        total_symbols=a.total_symbols + b.total_symbols,
        mse_sum=a.mse_sum + b.mse_sum,
        mse_sq_sum=a.mse_sq_sum + b.mse_sq_sum,
        tx_power_sum=a.tx_power_sum + b.tx_power_sum,
    )
