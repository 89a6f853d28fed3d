"""AWGN and binary symmetric channels."""
import math
from dataclasses import dataclass

import numpy as np

from .signal import Waveform, as_bits, db_to_ratio, mean_power


@dataclass(frozen=True)
class AwgnSpec:
    """Noise level as a target Eb/N0 (dB) or an explicit per-sample sigma; exactly one."""

    ebn0_db: float | None = None
    noise_sigma: float | None = None

    def __post_init__(self):
        if (self.ebn0_db is None) == (self.noise_sigma is None):
            raise ValueError("AwgnSpec needs exactly one of ebn0_db or noise_sigma")
        if self.noise_sigma is not None and not self.noise_sigma >= 0:
            raise ValueError("noise_sigma must be non-negative")
        if self.ebn0_db is not None and math.isnan(self.ebn0_db):
            raise ValueError("ebn0_db must be a number")


@dataclass(frozen=True)
class BscSpec:
    error_rate: float

    def __post_init__(self):
        if not 0.0 <= self.error_rate <= 1.0:
            raise ValueError("error rate must lie in [0, 1]")


def noise_sigma_from_power(power, cfg, ebn0_db):
    if not power > 0:
        raise ValueError("no signal energy")
    eb = power / cfg.bit_rate_hz
    n0 = eb / db_to_ratio(ebn0_db)
    return math.sqrt(n0 * cfg.sample_rate_hz / 2.0)


def noise_sigma_for_ebn0(w, cfg, ebn0_db):
    """Per-sample sigma giving the requested Eb/N0, using the measured energy per bit.

    With noise of two-sided density N0/2 sampled at fs the per-sample
    variance is N0 * fs / 2.
    """
    return noise_sigma_from_power(mean_power(w), cfg, ebn0_db)


def apply_awgn(w, spec, cfg, rng):
    if spec.noise_sigma is not None:
        sigma = spec.noise_sigma
    else:
        sigma = noise_sigma_for_ebn0(w, cfg, spec.ebn0_db)
    if sigma == 0:
        return w
    return Waveform(w.sample_rate_hz, rng.add_normal(w.samples, sigma))


def apply_bsc(bits, spec, rng):
    b = as_bits(bits)
    flips = rng.uniform(len(b)) < spec.error_rate
    return b ^ flips.astype(np.uint8)
