"""Receiver for the dirty-paper scheme: LMMSE estimation, mod-quantize-mod
data decoding, exhaustive ML recovery of the computing vector, and the
function evaluation."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization
from .errors import CapacityError
from .lattice import LatticeConfig, build_constellations, hard_decide, label_bits, mod_lattice, quantize_fine

ML_CANDIDATE_LIMIT = 10 ** 6


@dataclass(frozen=True)
class DetectionResult:
    """Per-block receiver output."""

    v_hat: np.ndarray        # (K, T) detected data symbols
    bits_hat: np.ndarray     # (K, T, bits/symbol) uint8
    s_hat: np.ndarray        # (K,) estimated computing vector
    f_hat: complex           # function estimate
    ml_objective: float      # attained minimum of the search residual


def lmmse_estimate(y, H, noise_var: float) -> np.ndarray:
    """x_hat = (H^H H + noise_var I)^{-1} H^H y.

    `y` may be one slot (N,) or a block (N, T); the result matches. Raises a
    linear-algebra error when the system is singular (noise_var = 0 with a
    rank-deficient H^H H).
    """
    H = np.asarray(H, dtype=np.complex128)
    y_arr = np.asarray(y, dtype=np.complex128)
    if H.ndim != 2:
        raise ValueError(f"H must be 2-D, got shape {H.shape}")
    n, k = H.shape
    if y_arr.shape[0] != n:
        raise ValueError(f"y has {y_arr.shape[0]} rows, H has {n}")
    if noise_var < 0:
        raise ValueError("noise_var must be nonnegative")
    if n < k:
        warnings.warn("fewer antennas than users: the LMMSE system is underdetermined", RuntimeWarning)
    gram = H.conj().T @ H + noise_var * np.eye(k)
    return np.linalg.solve(gram, H.conj().T @ y_arr)


def decode_data_slot(x_hat, cfg: LatticeConfig):
    """Map soft estimates to data symbols: wrap into the coarse cell, quantize
    to the fine grid, wrap again (boundary points), then hard-decide.

    Works per element; returns (symbols, bits) with bits shaped like the
    input plus a trailing bits-per-symbol axis.
    """
    data_c, _ = build_constellations(cfg)
    z = mod_lattice(x_hat, cfg.delta)
    on_grid = mod_lattice(quantize_fine(z, cfg), cfg.delta)
    idx, v_hat = hard_decide(on_grid, data_c)
    return v_hat, label_bits(data_c)[idx]


def candidate_indices(m_points: int, k_users: int) -> np.ndarray:
    """All M^K candidate index vectors in canonical order (user 0 varies
    slowest), as a (M^K, K) integer array."""
    grids = np.meshgrid(*([np.arange(m_points)] * k_users), indexing="ij")
    return np.stack(grids, axis=-1).reshape(-1, k_users)


def ml_computing_estimate(Y, H, v_hat, cfg: LatticeConfig,
                          candidate_limit: int = ML_CANDIDATE_LIMIT,
                          scale: float = 1.0):
    """Exhaustive search for the computing vector.

    Re-encodes the detected data against every candidate vector and picks the
    candidate minimizing the summed squared residual against Y across slots;
    ties resolve to the lowest canonical candidate index. `scale` is the
    amplitude applied at the transmitter (1 unless power normalization is
    on). Returns (s_hat, objective).
    """
    Y = np.asarray(Y, dtype=np.complex128)
    H = np.asarray(H, dtype=np.complex128)
    v_hat = np.asarray(v_hat, dtype=np.complex128)
    n, k = H.shape
    if v_hat.ndim != 2 or v_hat.shape[0] != k:
        raise ValueError(f"v_hat must be (K, T) with K={k}, got shape {v_hat.shape}")
    if Y.shape != (n, v_hat.shape[1]):
        raise ValueError(f"Y must be {(n, v_hat.shape[1])}, got {Y.shape}")
    _, comp_c = build_constellations(cfg)
    m = len(comp_c)
    n_cand = m ** k
    if n_cand > candidate_limit:
        raise CapacityError(
            f"computing-vector search needs M^K = {m}^{k} = {n_cand} candidates, "
            f"over the limit {candidate_limit}; reduce K or M"
        )
    cand = comp_c.points[candidate_indices(m, k)]              # (C, K)
    recon = mod_lattice(v_hat[None, :, :] - cand[:, :, None], cfg.delta) + cand[:, :, None]
    resid = Y[None, :, :] - scale * (H @ recon)                # (C, N, T)
    obj = np.sum(resid.real ** 2 + resid.imag ** 2, axis=(1, 2))
    best = int(np.argmin(obj))
    return cand[best].copy(), float(obj[best])


def evaluate_function(s_hat) -> complex:
    """Target function of the computing vector: the arithmetic sum."""
    return complex(np.sum(np.asarray(s_hat, dtype=np.complex128)))


def detect_frame(Y, ch: ChannelRealization, cfg: LatticeConfig,
                 candidate_limit: int = ML_CANDIDATE_LIMIT,
                 scale: float = 1.0) -> DetectionResult:
    """Full receiver chain for one block: LMMSE, data decode, computing-vector
    search, function evaluation.

    When the transmitter scaled its output by `scale`, the LMMSE stage runs on
    the equivalently rescaled model (Y/scale with noise_var/scale^2).
    """
    Y = np.asarray(Y, dtype=np.complex128)
    if scale != 1.0:
        x_hat = lmmse_estimate(Y / scale, ch.H, ch.noise_var / scale ** 2)
    else:
        x_hat = lmmse_estimate(Y, ch.H, ch.noise_var)
    v_hat, bits_hat = decode_data_slot(x_hat, cfg)
    s_hat, objective = ml_computing_estimate(Y, ch.H, v_hat, cfg, candidate_limit, scale)
    return DetectionResult(v_hat, bits_hat, s_hat, evaluate_function(s_hat), objective)
