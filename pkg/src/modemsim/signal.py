"""Core value types, power/decibel helpers and file formats."""
import io
import math
from dataclasses import dataclass, field

import numpy as np


def as_bits(bits):
    """Coerce a '0'/'1' string or a 0/1 sequence into a uint8 array."""
    if isinstance(bits, str):
        text = bits.strip()
        if any(c not in "01" for c in text):
            raise ValueError("bit string may only contain '0' and '1'")
        return np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise ValueError("bits must be one-dimensional")
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise ValueError("bits must be 0 or 1")
    return arr.astype(np.uint8)


def bits_to_str(bits):
    return (as_bits(bits) + ord("0")).tobytes().decode("ascii")


@dataclass(frozen=True, eq=False)
class Waveform:
    """Uniformly sampled real signal. ``samples`` is stored read-only."""

    sample_rate_hz: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.sample_rate_hz > 0:
            raise ValueError("sample rate must be positive")
        s = np.array(self.samples, dtype=np.float64)
        if s.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not np.all(np.isfinite(s)):
            raise ValueError("samples must be finite")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def __len__(self):
        return len(self.samples)

    @property
    def duration(self):
        return len(self.samples) / self.sample_rate_hz

    def times(self):
        return np.arange(len(self.samples)) / self.sample_rate_hz

    def scaled(self, c):
        return Waveform(self.sample_rate_hz, c * self.samples)


@dataclass(frozen=True)
class ModemConfig:
    amplitude: float = 1.0
    carrier_freq_hz: float = 4.0
    fsk_f1_hz: float = 5.0
    fsk_f2_hz: float = 1.0
    fsk_theta1_rad: float = 0.0
    fsk_theta2_rad: float = 0.0
    bit_rate_hz: float = 1.0
    samples_per_bit: int = 64

    def __post_init__(self):
        if not self.amplitude > 0:
            raise ValueError("amplitude must be positive")
        for name in ("carrier_freq_hz", "fsk_f1_hz", "fsk_f2_hz", "bit_rate_hz"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if int(self.samples_per_bit) != self.samples_per_bit or self.samples_per_bit < 8:
            raise ValueError("samples_per_bit must be an integer >= 8")
        object.__setattr__(self, "samples_per_bit", int(self.samples_per_bit))
        if self.fsk_f1_hz == self.fsk_f2_hz:
            raise ValueError("degenerate FSK pair")
        # Nyquist with a 2x margin
        if self.samples_per_bit < 4.0 * self.max_carrier_hz / self.bit_rate_hz:
            raise ValueError("undersampled carrier")

    @property
    def max_carrier_hz(self):
        return max(self.carrier_freq_hz, self.fsk_f1_hz, self.fsk_f2_hz)

    @property
    def sample_rate_hz(self):
        return self.bit_rate_hz * self.samples_per_bit


def mean_power(w):
    s = w.samples if isinstance(w, Waveform) else np.asarray(w, dtype=np.float64)
    if len(s) == 0:
        raise ValueError("empty signal")
    return float(np.dot(s, s) / len(s))


def ratio_to_db(r):
    if not r > 0:
        raise ValueError("non-positive ratio")
    return 10.0 * math.log10(r)


def db_to_ratio(db):
    return 10.0 ** (db / 10.0)


# -- file formats -----------------------------------------------------------

def format_bits(bits):
    return bits_to_str(bits) + "\n"


def parse_bits(text):
    if text.endswith("\n"):
        text = text[:-1]
    if any(c not in "01" for c in text):
        raise ValueError("bits file may only contain '0' and '1'")
    return as_bits(text)


WAVEFORM_HEADER = "t_sec,amplitude"


def format_waveform(w):
    buf = io.StringIO()
    buf.write(WAVEFORM_HEADER + "\n")
    for t, a in zip(w.times().tolist(), w.samples.tolist()):
        buf.write(f"{t!r},{a!r}\n")
    return buf.getvalue()


def parse_waveform(text, sample_rate_hz=None):
    """Parse waveform CSV. Sample rate is inferred from the time column unless given."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != WAVEFORM_HEADER:
        raise ValueError(f"waveform CSV must start with header '{WAVEFORM_HEADER}'")
    rows = [ln.split(",") for ln in lines[1:] if ln.strip()]
    if any(len(r) != 2 for r in rows):
        raise ValueError("waveform CSV rows must have two fields")
    t = np.array([float(r[0]) for r in rows])
    a = np.array([float(r[1]) for r in rows])
    if sample_rate_hz is None:
        if len(t) < 2:
            raise ValueError("cannot infer sample rate from fewer than two samples")
        sample_rate_hz = (len(t) - 1) / (t[-1] - t[0])
    return Waveform(sample_rate_hz, a)
