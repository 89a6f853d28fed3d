"""Coherent correlation receivers.

The receiver knows carrier frequencies, phases and bit timing exactly.
Each bit block is correlated against locally generated reference carriers
on the same absolute clock as the modulator. Ties go to bit 1.
"""
import io
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .modulators import Scheme, bit_carrier
from .signal import Waveform


@dataclass(frozen=True, eq=False)
class DecisionTrace:
    """Per-bit statistics behind a demodulator's decisions.

    ASK and BPSK decide ``stat1 >= threshold``. FSK decides
    ``stat1 - stat2 >= threshold`` with ``threshold == 0``.
    """

    stat1: np.ndarray
    stat2: np.ndarray | None
    threshold: float
    decisions: np.ndarray

    def consistent(self):
        stat = self.stat1 if self.stat2 is None else self.stat1 - self.stat2
        return bool(np.array_equal((stat >= self.threshold).astype(np.uint8), self.decisions))

    def to_csv(self, bit_offset=0):
        buf = io.StringIO()
        buf.write("bit_index,stat1,stat2,threshold,decision\n")
        s2 = [""] * len(self.stat1) if self.stat2 is None else [repr(v) for v in self.stat2.tolist()]
        for i, (a, b, d) in enumerate(zip(self.stat1.tolist(), s2, self.decisions.tolist())):
            buf.write(f"{i + bit_offset},{a!r},{b},{self.threshold!r},{d}\n")
        return buf.getvalue()


def correlate_bit(segment, reference):
    """Unnormalised inner product of two equal-length slices."""
    seg = np.asarray(segment, dtype=np.float64)
    ref = np.asarray(reference, dtype=np.float64)
    if seg.shape != ref.shape or seg.ndim != 1:
        raise ValueError("segment and reference differ in length")
    if len(seg) == 0:
        raise ValueError("cannot correlate empty slices")
    return float(kernels.block_correlate(seg, ref, len(seg))[0])


def _samples(w, cfg):
    s = w.samples if isinstance(w, Waveform) else np.asarray(w, dtype=np.float64)
    if len(s) == 0 or len(s) % cfg.samples_per_bit:
        raise ValueError("length not bit-aligned")
    return s


def _block_stats(s, cfg, freq, phase, bit_offset):
    ref = bit_carrier(cfg, freq, len(s) // cfg.samples_per_bit, phase, bit_offset)
    # a broadcast reference is passed as its single row
    ref = ref[0] if ref.strides[0] == 0 else ref.ravel()
    return kernels.block_correlate(s, ref, cfg.samples_per_bit)


def demod_ask(w, cfg, bit_offset=0):
    """OOK correlator with the threshold at half the noiseless mark statistic."""
    s = _samples(w, cfg)
    stat = _block_stats(s, cfg, cfg.carrier_freq_hz, 0.0, bit_offset)
    tau = cfg.amplitude**2 * cfg.samples_per_bit / 4.0
    bits = (stat >= tau).astype(np.uint8)
    return bits, DecisionTrace(stat, None, tau, bits)


def demod_fsk(w, cfg, bit_offset=0):
    s = _samples(w, cfg)
    c1 = _block_stats(s, cfg, cfg.fsk_f1_hz, cfg.fsk_theta1_rad, bit_offset)
    c2 = _block_stats(s, cfg, cfg.fsk_f2_hz, cfg.fsk_theta2_rad, bit_offset)
    bits = (c1 - c2 >= 0.0).astype(np.uint8)
    return bits, DecisionTrace(c1, c2, 0.0, bits)


def demod_bpsk(w, cfg, bit_offset=0):
    s = _samples(w, cfg)
    stat = _block_stats(s, cfg, cfg.carrier_freq_hz, 0.0, bit_offset)
    bits = (stat >= 0.0).astype(np.uint8)
    return bits, DecisionTrace(stat, None, 0.0, bits)


_DEMODULATORS = {
    Scheme.ASK: demod_ask,
    Scheme.FSK: demod_fsk,
    Scheme.BPSK: demod_bpsk,
}


def demodulate(scheme, w, cfg, bit_offset=0):
    return _DEMODULATORS[Scheme.parse(scheme)](w, cfg, bit_offset)
