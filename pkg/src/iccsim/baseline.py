"""Superposition benchmark scheme: data plus computing symbols transmitted as
a plain sum, detected by two-stage LMMSE with a linear function combiner."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization
from .lattice import LatticeConfig, build_constellations, hard_decide, label_bits
from .transmitter import _require_on, map_bits


@dataclass(frozen=True)
class BaselineFrame:
    """One block of the superposition scheme: X = D + S (no modulo)."""

    data_symbols: np.ndarray      # D, (K, T)
    data_bits: np.ndarray         # (K, T, bits/symbol) uint8
    computing_vector: np.ndarray  # s, (K,)
    encoded: np.ndarray           # X, (K, T)

    @property
    def k_users(self) -> int:
        return int(self.data_symbols.shape[0])

    @property
    def t_slots(self) -> int:
        return int(self.data_symbols.shape[1])


@dataclass(frozen=True)
class BaselineDetection:
    """Per-block output of the benchmark receiver."""

    d_hat: np.ndarray     # (K, T) detected data symbols
    bits_hat: np.ndarray  # (K, T, bits/symbol) uint8
    f_hat: complex        # function estimate (continuous-valued)


def baseline_encode(bits, s, cfg: LatticeConfig, strict: bool = True) -> BaselineFrame:
    """X = D + S with the same constellations and rate as the lattice scheme."""
    bits_u8, d = map_bits(bits, cfg)
    s_arr = np.asarray(s, dtype=np.complex128)
    if s_arr.ndim != 1 or s_arr.shape[0] != d.shape[0]:
        raise ValueError(f"computing vector must have length {d.shape[0]}, got shape {s_arr.shape}")
    if strict:
        _, comp_c = build_constellations(cfg)
        _require_on(comp_c.points, s_arr, "computing")
    return BaselineFrame(d, bits_u8, s_arr, d + s_arr[:, None])


def baseline_detect_data(y, H, noise_var: float, e_d: float, e_s: float, cfg: LatticeConfig):
    """LMMSE data estimate treating the computing component as noise.

    d_soft = E_d H^H ((E_d + E_s) H H^H + noise_var I_N)^{-1} y, followed by a
    hard decision on the data constellation. `y` may be (N,) or (N, T).
    Returns (symbols, bits); raises a linear-algebra error when the N x N
    system is singular.
    """
    H = np.asarray(H, dtype=np.complex128)
    y_arr = np.asarray(y, dtype=np.complex128)
    n, _ = H.shape
    if y_arr.shape[0] != n:
        raise ValueError(f"y has {y_arr.shape[0]} rows, H has {n}")
    gram = H @ H.conj().T
    cov = (e_d + e_s) * gram + noise_var * np.eye(n)
    soft = e_d * (H.conj().T @ np.linalg.solve(cov, y_arr))
    data_c, _ = build_constellations(cfg)
    idx, d_hat = hard_decide(soft, data_c)
    return d_hat, label_bits(data_c)[idx]


def baseline_estimate_function(Y, H, d_hat, noise_var: float, e_s: float) -> complex:
    """Function estimate from the data-cancelled residual.

    Per slot: r = y - H d_hat, f_slot = m^H r with the sum-target MMSE
    combiner m = E_s (E_s H H^H + noise_var I_N)^{-1} H 1_K; the estimate is
    the average over the block's slots (the computing vector is constant).
    """
    Y = np.asarray(Y, dtype=np.complex128)
    H = np.asarray(H, dtype=np.complex128)
    d_arr = np.asarray(d_hat, dtype=np.complex128)
    n, k = H.shape
    if d_arr.ndim != 2 or d_arr.shape[0] != k:
        raise ValueError(f"d_hat must be (K, T) with K={k}, got shape {d_arr.shape}")
    if Y.shape != (n, d_arr.shape[1]):
        raise ValueError(f"Y must be {(n, d_arr.shape[1])}, got {Y.shape}")
    cov = e_s * (H @ H.conj().T) + noise_var * np.eye(n)
    comb = e_s * np.linalg.solve(cov, H @ np.ones(k))
    resid = Y - H @ d_arr
    return complex(np.mean(comb.conj() @ resid))


def baseline_detect_frame(Y, ch: ChannelRealization, cfg: LatticeConfig,
                          e_d: float | None = None, e_s: float | None = None,
                          scale: float = 1.0) -> BaselineDetection:
    """Two-stage benchmark receiver for one block.

    The component powers default to the exact constellation means. When the
    transmitter scaled its output by `scale`, detection runs on the rescaled
    model (Y/scale, noise_var/scale^2).
    """
    data_c, comp_c = build_constellations(cfg)
    if e_d is None:
        e_d = float(np.mean(np.abs(data_c.points) ** 2))
    if e_s is None:
        e_s = float(np.mean(np.abs(comp_c.points) ** 2))
    Y_eff = np.asarray(Y, dtype=np.complex128)
    nv_eff = ch.noise_var
    if scale != 1.0:
        Y_eff = Y_eff / scale
        nv_eff = nv_eff / scale ** 2
    d_hat, bits_hat = baseline_detect_data(Y_eff, ch.H, nv_eff, e_d, e_s, cfg)
    f_hat = baseline_estimate_function(Y_eff, ch.H, d_hat, nv_eff, e_s)
    return BaselineDetection(d_hat, bits_hat, f_hat)
