"""Cosine-carrier ASK, FSK and BPSK modulators.

All carriers run on the absolute stream clock: sample ``i`` of the stream
sits at ``t = i / fs`` and every oscillator is evaluated there, never
restarted at bit boundaries. ``bit_offset`` places the first bit later on
that clock, which lets long streams be generated in chunks.
"""
import enum

import numpy as np

from .signal import Waveform, as_bits


class Scheme(enum.Enum):
    ASK = "ask"
    FSK = "fsk"
    BPSK = "bpsk"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            valid = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown scheme {name!r}; valid schemes: {valid}") from None

    def __str__(self):
        return self.value


def carrier(cfg, freq_hz, n_samples, phase_rad=0.0, sample_offset=0):
    """``A cos(2 pi f t + phase)`` sampled on the absolute clock."""
    fs = cfg.sample_rate_hz
    idx = np.arange(sample_offset, sample_offset + n_samples, dtype=np.float64)
    # reduce f*i modulo fs before scaling so phases stay exact far into the stream
    cycles = np.mod(freq_hz * idx, fs) / fs
    return cfg.amplitude * np.cos(2.0 * np.pi * cycles + phase_rad)


def is_bit_periodic(cfg, freq_hz):
    """True when one bit holds a whole number of carrier cycles."""
    return float(freq_hz / cfg.bit_rate_hz).is_integer()


def bit_carrier(cfg, freq_hz, n_bits, phase_rad=0.0, bit_offset=0):
    """Carrier laid out as an ``(n_bits, samples_per_bit)`` array.

    With whole cycles per bit every row is the same, so one row is computed
    and broadcast (a read-only view).
    """
    spb = cfg.samples_per_bit
    if is_bit_periodic(cfg, freq_hz):
        row = carrier(cfg, freq_hz, spb, phase_rad)
        return np.broadcast_to(row, (n_bits, spb))
    return carrier(cfg, freq_hz, n_bits * spb, phase_rad, bit_offset * spb).reshape(n_bits, spb)


def _prepare(bits):
    b = as_bits(bits)
    if len(b) == 0:
        raise ValueError("cannot modulate an empty bit stream")
    return b


def modulate_ask(bits, cfg, bit_offset=0):
    b = _prepare(bits)
    c = bit_carrier(cfg, cfg.carrier_freq_hz, len(b), bit_offset=bit_offset)
    return Waveform(cfg.sample_rate_hz, np.where(b[:, None] == 1, c, 0.0).ravel())


def modulate_fsk(bits, cfg, bit_offset=0):
    b = _prepare(bits)
    mark = bit_carrier(cfg, cfg.fsk_f1_hz, len(b), cfg.fsk_theta1_rad, bit_offset)
    space = bit_carrier(cfg, cfg.fsk_f2_hz, len(b), cfg.fsk_theta2_rad, bit_offset)
    return Waveform(cfg.sample_rate_hz, np.where(b[:, None] == 1, mark, space).ravel())


def modulate_bpsk(bits, cfg, bit_offset=0):
    b = _prepare(bits)
    m = 2.0 * b.astype(np.float64) - 1.0
    c = bit_carrier(cfg, cfg.carrier_freq_hz, len(b), bit_offset=bit_offset)
    return Waveform(cfg.sample_rate_hz, (m[:, None] * c).ravel())


_MODULATORS = {
    Scheme.ASK: modulate_ask,
    Scheme.FSK: modulate_fsk,
    Scheme.BPSK: modulate_bpsk,
}


def modulate(scheme, bits, cfg, bit_offset=0):
    return _MODULATORS[Scheme.parse(scheme)](bits, cfg, bit_offset)
