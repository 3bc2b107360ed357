"""Modulo-lattice dirty-paper encoding: each user's data symbols are wrapped
against its own (self-known) computing symbol before transmission."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import LatticeConfig, build_constellations, label_index_lut, mod_lattice


@dataclass(frozen=True)
class Frame:
    """One user-block: K x T data symbols, their bits, the constant per-user
    computing vector, and the encoded transmit matrix."""

    data_symbols: np.ndarray      # V, (K, T) complex
    data_bits: np.ndarray         # (K, T, bits/symbol) uint8
    computing_vector: np.ndarray  # s, (K,) complex
    encoded: np.ndarray           # X, (K, T) complex

    @property
    def k_users(self) -> int:
        return int(self.data_symbols.shape[0])

    @property
    def t_slots(self) -> int:
        return int(self.data_symbols.shape[1])


@dataclass(frozen=True)
class PowerStats:
    """Empirical transmit-power summary over a set of frames."""

    per_user: np.ndarray  # mean |X[k,t]|^2 for each user
    e_d: float            # mean |data symbol|^2
    e_s: float            # mean |computing symbol|^2

    @property
    def mean(self) -> float:
        return float(np.mean(self.per_user))


def _require_on(points: np.ndarray, values, what: str) -> None:
    vals = np.asarray(values, dtype=np.complex128)
    if vals.size == 0:
        return
    dist = np.abs(vals[..., None] - points).min(axis=-1)
    if dist.max() > 1e-9:
        raise ValueError(f"{what} entries must be constellation points")


def encode_symbol(v, s, cfg: LatticeConfig, strict: bool = True):
    """Encode one data symbol against one computing symbol.

    Returns (v_tilde, x) where v_tilde is the centered wrap of v - s and
    x = v_tilde + s is the transmit value. With strict=True (default) both
    inputs must lie on their constellations; strict=False passes anything
    through the same arithmetic.
    """
    v = complex(v)
    s = complex(s)
    if strict:
        data_c, comp_c = build_constellations(cfg)
        _require_on(data_c.points, v, "data")
        _require_on(comp_c.points, s, "computing")
    v_tilde = mod_lattice(v - s, cfg.delta)
    return v_tilde, v_tilde + s


def map_bits(bits, cfg: LatticeConfig) -> tuple[np.ndarray, np.ndarray]:
    """Map a (K, T, bits) tensor to data symbols; returns (bits_u8, symbols)."""
    bits_arr = np.asarray(bits)
    if bits_arr.ndim != 3 or bits_arr.shape[-1] != cfg.rate_bits:
        raise ValueError(f"bits must have shape (K, T, {cfg.rate_bits}), got {bits_arr.shape}")
    if not np.isin(bits_arr, (0, 1)).all():
        raise ValueError("bits must be 0 or 1")
    data_c, _ = build_constellations(cfg)
    weights = (1 << np.arange(cfg.rate_bits - 1, -1, -1)).astype(np.intp)
    codes = bits_arr.astype(np.intp) @ weights
    symbols = data_c.points[label_index_lut(data_c)[codes]]
    return bits_arr.astype(np.uint8), symbols


def build_frame(bits, s, cfg: LatticeConfig, strict: bool = True) -> Frame:
    """Assemble a frame: bits -> data symbols -> per-slot DPC encoding.

    `s` is one computing symbol per user, held constant across the T slots.
    """
    bits_u8, v = map_bits(bits, cfg)
    s_arr = np.asarray(s, dtype=np.complex128)
    if s_arr.ndim != 1 or s_arr.shape[0] != v.shape[0]:
        raise ValueError(f"computing vector must have length {v.shape[0]}, got shape {s_arr.shape}")
    if strict:
        _, comp_c = build_constellations(cfg)
        _require_on(comp_c.points, s_arr, "computing")
    v_tilde = mod_lattice(v - s_arr[:, None], cfg.delta)
    return Frame(v, bits_u8, s_arr, v_tilde + s_arr[:, None])


def measure_tx_power(frames) -> PowerStats:
    """Empirical E[|x|^2] per user plus the data / computing component means."""
    frames = list(frames)
    if not frames:
        raise ValueError("at least one frame is required")
    k = frames[0].k_users
    x_sum = np.zeros(k)
    slots = 0
    d_sum = 0.0
    d_n = 0
    s_sum = 0.0
    s_n = 0
    for fr in frames:
        if fr.k_users != k:
            raise ValueError("frames must share the user count")
        x_sum += np.sum(np.abs(fr.encoded) ** 2, axis=1)
        slots += fr.t_slots
        d_sum += float(np.sum(np.abs(fr.data_symbols) ** 2))
        d_n += fr.data_symbols.size
        s_sum += float(np.sum(np.abs(fr.computing_vector) ** 2))
        s_n += fr.computing_vector.size
    return PowerStats(x_sum / slots, d_sum / d_n, s_sum / s_n)


def enumerate_tx_power(cfg: LatticeConfig) -> float:
    """Exact mean encoded power over all (data, computing) symbol pairs.

    The modulo wrap pushes some encoded values outside the coarse cell, so
    this exceeds the sum of the component powers; it is the ground truth the
    measured transmit power is checked against.
    """
    data_c, comp_c = build_constellations(cfg)
    v = data_c.points[:, None]
    s = comp_c.points[None, :]
    x = mod_lattice(v - s, cfg.delta) + s
    return float(np.mean(np.abs(x) ** 2))
