"""Block-fading SIMO channel: iid complex Gaussian gains held constant over a
block, plus white complex Gaussian noise."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChannelRealization:
    """One block's N x K gain matrix and the noise variance that applies to it."""

    H: np.ndarray
    noise_var: float
    block_id: int = 0

    def __post_init__(self):
        H = np.asarray(self.H, dtype=np.complex128)
        if H.ndim != 2:
            raise ValueError(f"H must be a 2-D matrix, got shape {H.shape}")
        if not (math.isfinite(self.noise_var) and self.noise_var >= 0):
            raise ValueError(f"noise_var must be a nonnegative finite real, got {self.noise_var!r}")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "noise_var", float(self.noise_var))


def draw_channel(rng, n_antennas: int, k_users: int, noise_var: float = 0.0,
                 block_id: int = 0) -> ChannelRealization:
    """Draw one block's channel: entries iid complex Gaussian, zero mean, unit
    variance (real and imaginary parts each variance 1/2).

    Consumes exactly one (2, N, K) standard-normal batch from `rng` — real
    parts first — so a given stream state always produces the same matrix.
    """
    if n_antennas < 1 or k_users < 1:
        raise ValueError("n_antennas and k_users must be at least 1")
    z = rng.standard_normal((2, n_antennas, k_users))
    return ChannelRealization((z[0] + 1j * z[1]) * math.sqrt(0.5), noise_var, block_id)


def draw_noise(rng, n_antennas: int, t_slots: int, noise_var: float) -> np.ndarray:
    """One block's N x T noise matrix, entries iid complex Gaussian with
    variance noise_var. Consumes one (2, N, T) standard-normal batch."""
    z = rng.standard_normal((2, n_antennas, t_slots))
    return (z[0] + 1j * z[1]) * math.sqrt(noise_var / 2.0)


def transmit(x, ch: ChannelRealization, rng=None) -> np.ndarray:
    """Received block Y = H X + W for a K x T transmit matrix.

    Noise is drawn from `rng` only when ch.noise_var > 0; at zero noise the
    output is exactly H X and no stream values are consumed.
    """
    X = np.asarray(x, dtype=np.complex128)
    if X.ndim != 2:
        raise ValueError(f"transmit expects a K x T matrix, got shape {X.shape}")
    n, k = ch.H.shape
    if X.shape[0] != k:
        raise ValueError(f"transmit matrix has {X.shape[0]} rows, channel has {k} users")
    y = ch.H @ X
    if ch.noise_var > 0:
        if rng is None:
            raise ValueError("an rng is required when noise_var > 0")
        y = y + draw_noise(rng, n, X.shape[1], ch.noise_var)
    return y


def snr_to_noise_var(snr_db: float) -> float:
    """Noise variance for an SNR in dB referenced to unit transmit power."""
    if not math.isfinite(snr_db):
        raise ValueError(f"snr_db must be finite, got {snr_db!r}")
    return float(10.0 ** (-snr_db / 10.0))
