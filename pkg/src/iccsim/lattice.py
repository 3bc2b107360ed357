"""Nested Gaussian-integer lattice pair: centered complex modulo reduction,
the offset fine-grid quantizer, and the data / rotated computing
constellations with per-dimension Gray bit labels."""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

DATA = "Data"
COMPUTING = "Computing"

# 45-degree rotation applied to (re, im) coordinate pairs; separates the
# computing point set maximally from the data set it is derived from.
ROTATION = np.array([[1.0, -1.0], [1.0, 1.0]]) / np.sqrt(2.0)


@dataclass(frozen=True)
class LatticeConfig:
    """Coarse cell of side `delta` holding `m_points` fine-grid points.

    `m_points` must be an even power of two (4, 16, 64, ...) so the per-cell
    points form a square grid carrying a whole number of bits per dimension.
    """

    delta: float = 2.0
    m_points: int = 4

    def __post_init__(self):
        try:
            delta = float(self.delta)
        except (TypeError, ValueError):
            raise ValueError(f"delta must be a positive finite real, got {self.delta!r}") from None
        if not math.isfinite(delta) or delta <= 0:
            raise ValueError(f"delta must be a positive finite real, got {self.delta!r}")
        try:
            m = operator.index(self.m_points)
        except TypeError:
            raise ValueError(f"m_points must be an integer, got {self.m_points!r}") from None
        if m < 4:
            raise ValueError(f"m_points must be at least 4, got {m}")
        if math.isqrt(m) ** 2 != m:
            raise ValueError(f"m_points must be a perfect square, got {m}")
        if m & (m - 1):
            raise ValueError(f"m_points must be a power of two, got {m}")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "m_points", m)

    @property
    def sqrt_m(self) -> int:
        return math.isqrt(self.m_points)

    @property
    def fine_spacing(self) -> float:
        """Fine-grid step: delta / sqrt(M)."""
        return self.delta / self.sqrt_m

    @property
    def offset(self) -> float:
        """Fractional grid offset in units of the fine step, in [0, 1)."""
        return ((self.sqrt_m - 1) / 2.0) % 1.0

    @property
    def rate_bits(self) -> int:
        """Bits per complex data symbol, log2(M)."""
        return self.m_points.bit_length() - 1


def mod_lattice(a, delta):
    """Reduce each complex value into the half-open cell [-delta/2, delta/2)^2.

    Component-wise centered modulo; the +delta/2 boundary wraps to -delta/2 so
    the reduction is single-valued. Accepts scalars or arrays of any shape.
    """
    if not isinstance(delta, (int, float)) or not math.isfinite(delta) or delta <= 0:
        raise ValueError(f"delta must be a positive finite real, got {delta!r}")
    arr = np.asarray(a, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise ValueError("input must be finite")
    half = delta / 2.0
    out = (np.mod(arr.real + half, delta) - half) + 1j * (np.mod(arr.imag + half, delta) - half)
    if arr.ndim == 0:
        return complex(out)
    return out


def quantize_fine(a, cfg: LatticeConfig):
    """Round each real dimension to the offset fine grid step*(n + offset).

    Half-step ties follow round-half-to-even; they sit on a measure-zero set
    and are excluded from the optimality contract.
    """
    arr = np.asarray(a, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise ValueError("input must be finite")
    step = cfg.fine_spacing
    eps = cfg.offset
    re = step * (np.round(arr.real / step - eps) + eps)
    im = step * (np.round(arr.imag / step - eps) + eps)
    out = re + 1j * im
    if arr.ndim == 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class Constellation:
    """Ordered point set; data constellations also carry per-point bit labels."""

    kind: str
    points: np.ndarray
    bit_labels: tuple[str, ...] = ()

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.complex128)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.shape[0])


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def build_constellations(cfg: LatticeConfig) -> tuple[Constellation, Constellation]:
    """Return (data, computing) constellations in canonical order.

    Data points are the M offset-grid points inside the coarse cell, listed
    row-major by (im, re). Computing points are the data points rotated by
    ROTATION, kept in the paired order. Bit labels are per-dimension Gray
    codes: the first half of each label indexes the real level, the second
    half the imaginary level.
    """
    sm = cfg.sqrt_m
    step = cfg.fine_spacing
    eps = cfg.offset
    half = cfg.delta / 2.0
    n0 = math.ceil(-half / step - eps)
    levels = step * (np.arange(n0, n0 + sm) + eps)
    if not (levels.size == sm and levels[0] >= -half and levels[-1] < half):
        raise AssertionError("offset grid does not tile the coarse cell")
    pts = (levels[None, :] + 1j * levels[:, None]).reshape(-1)

    nb = cfg.rate_bits // 2
    dim_label = [format(_gray(i), f"0{nb}b") for i in range(sm)]
    labels = tuple(dim_label[i_re] + dim_label[i_im] for i_im in range(sm) for i_re in range(sm))
    data = Constellation(DATA, pts, labels)

    xy = ROTATION @ np.stack([pts.real, pts.imag])
    comp = Constellation(COMPUTING, xy[0] + 1j * xy[1])
    return data, comp


def bits_to_symbol(bits: str, c: Constellation) -> complex:
    """Map a bit string to its data constellation point."""
    if not c.bit_labels:
        raise ValueError("constellation carries no bit labels")
    nb = len(c.bit_labels[0])
    if len(bits) != nb or any(ch not in "01" for ch in bits):
        raise ValueError(f"expected a {nb}-character bit string, got {bits!r}")
    return complex(c.points[c.bit_labels.index(bits)])


def symbol_to_bits(p, c: Constellation) -> str:
    """Map a constellation point back to its bit string."""
    if not c.bit_labels:
        raise ValueError("constellation carries no bit labels")
    i = int(np.argmin(np.abs(c.points - complex(p))))
    if abs(complex(c.points[i]) - complex(p)) > 1e-9:
        raise ValueError(f"{p!r} is not a constellation point")
    return c.bit_labels[i]


def hard_decide(a, c: Constellation):
    """Nearest constellation point by Euclidean distance.

    Returns (index, point); ties resolve to the lowest canonical index.
    Array inputs give arrays of indices and points of the same shape.
    """
    arr = np.asarray(a, dtype=np.complex128)
    dr = arr.real[..., None] - c.points.real
    di = arr.imag[..., None] - c.points.imag
    idx = np.argmin(dr * dr + di * di, axis=-1)
    if arr.ndim == 0:
        i = int(idx)
        return i, complex(c.points[i])
    return idx, c.points[idx]


def label_bits(c: Constellation) -> np.ndarray:
    """Bit labels as a (M, bits) uint8 array aligned with the point order."""
    return np.array([[int(ch) for ch in lab] for lab in c.bit_labels], dtype=np.uint8)


def label_index_lut(c: Constellation) -> np.ndarray:
    """Lookup from MSB-first bit-label value to point index."""
    nb = len(c.bit_labels[0])
    lut = np.empty(1 << nb, dtype=np.intp)
    for i, lab in enumerate(c.bit_labels):
        lut[int(lab, 2)] = i
    return lut
