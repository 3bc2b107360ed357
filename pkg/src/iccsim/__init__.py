"""Link-level Monte Carlo simulator for nested-lattice dirty-paper
integrated communication and computing over a SIMO uplink."""

__version__ = "0.1.0"

from .lattice import (
    LatticeConfig,
    Constellation,
    mod_lattice,
    quantize_fine,
    build_constellations,
    bits_to_symbol,
    symbol_to_bits,
    hard_decide,
)
from .transmitter import Frame, encode_symbol, build_frame, measure_tx_power, enumerate_tx_power
from .channel import ChannelRealization, draw_channel, transmit, snr_to_noise_var
from .receiver import (
    DetectionResult,
    lmmse_estimate,
    decode_data_slot,
    ml_computing_estimate,
    evaluate_function,
    detect_frame,
)
from .baseline import (
    BaselineFrame,
    BaselineDetection,
    baseline_encode,
    baseline_detect_data,
    baseline_estimate_function,
    baseline_detect_frame,
)
from .metrics import MetricsRecord, record_block, merge
from .harness import SimConfig, run_sweep, emit_results
from .errors import ConfigError, CapacityError

__all__ = [
    "LatticeConfig",
    "Constellation",
    "mod_lattice",
    "quantize_fine",
    "build_constellations",
    "bits_to_symbol",
    "symbol_to_bits",
    "hard_decide",
    "Frame",
    "encode_symbol",
    "build_frame",
    "measure_tx_power",
    "enumerate_tx_power",
    "ChannelRealization",
    "draw_channel",
    "transmit",
    "snr_to_noise_var",
    "DetectionResult",
    "lmmse_estimate",
    "decode_data_slot",
    "ml_computing_estimate",
    "evaluate_function",
    "detect_frame",
    "BaselineFrame",
    "BaselineDetection",
    "baseline_encode",
    "baseline_detect_data",
    "baseline_estimate_function",
    "baseline_detect_frame",
    "MetricsRecord",
    "record_block",
    "merge",
    "SimConfig",
    "run_sweep",
    "emit_results",
    "ConfigError",
    "CapacityError",
]
