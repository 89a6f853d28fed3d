"""ASK, FSK and BPSK modem simulation over AWGN and bit-flip channels."""
from ._backend import BACKEND
from .channels import AwgnSpec, BscSpec, apply_awgn, apply_bsc, noise_sigma_for_ebn0
from .demodulators import (
    DecisionTrace,
    correlate_bit,
    demod_ask,
    demod_bpsk,
    demod_fsk,
    demodulate,
)
from .metrics import (
    BerResult,
    SweepPoint,
    bit_error_rate,
    q_function,
    run_sweep,
    snr_from_powers,
    theoretical_ber,
)
from .modulators import Scheme, modulate, modulate_ask, modulate_bpsk, modulate_fsk
from .rng import RandomSource, generate_bits
from .signal import ModemConfig, Waveform, mean_power, ratio_to_db

__all__ = [
    "BACKEND", "AwgnSpec", "BscSpec", "apply_awgn", "apply_bsc", "noise_sigma_for_ebn0",
    "DecisionTrace", "correlate_bit", "demod_ask", "demod_bpsk", "demod_fsk", "demodulate",
    "BerResult", "SweepPoint", "bit_error_rate", "q_function", "run_sweep", "snr_from_powers",
    "theoretical_ber", "Scheme", "modulate", "modulate_ask", "modulate_bpsk", "modulate_fsk",
    "RandomSource", "generate_bits", "ModemConfig", "Waveform", "mean_power", "ratio_to_db",
]
