"""BER/SNR measurement, closed-form BER references and the Monte Carlo sweep."""
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import BscSpec, apply_bsc, noise_sigma_from_power
from .demodulators import demodulate
from .modulators import Scheme, modulate
from .rng import RandomSource, generate_bits
from .signal import as_bits, ratio_to_db

Z95 = 1.959963984540054

SWEEP_HEADER = "scheme,ebn0_db,error_rate_p,bits_sent,bit_errors,ber,ci_low,ci_high"

# stream keys for per-point random sources
_BITS, _BSC, _NOISE = 0, 1, 2
_SCHEME_KEYS = {Scheme.ASK: 0, Scheme.FSK: 1, Scheme.BPSK: 2}


@dataclass(frozen=True, eq=False)
class BerResult:
    total_bits: int
    error_bits: int
    ber: float
    error_positions: np.ndarray


def bit_error_rate(tx, rx):
    tx, rx = as_bits(tx), as_bits(rx)
    if len(tx) != len(rx):
        raise ValueError("streams differ in length")
    if len(tx) == 0:
        raise ValueError("cannot compute BER of empty streams")
    pos = np.flatnonzero(tx != rx)
    return BerResult(len(tx), len(pos), len(pos) / len(tx), pos)


def snr_from_powers(signal_power, noise_power):
    if not (signal_power > 0 and noise_power > 0):
        raise ValueError("powers must be positive")
    ratio = signal_power / noise_power
    return ratio, ratio_to_db(ratio)


def q_function(x):
    """Gaussian tail probability, Q(x) = erfc(x / sqrt 2) / 2."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def channel_ber(scheme, ebn0_db):
    """Coherent-detection BER without the pre-channel bit flips."""
    gamma = 10.0 ** (ebn0_db / 10.0)
    if Scheme.parse(scheme) is Scheme.BPSK:
        return q_function(math.sqrt(2.0 * gamma))
    # orthogonal FSK, and OOK measured at average energy per bit
    return q_function(math.sqrt(gamma))


def theoretical_ber(scheme, ebn0_db, error_rate=0.0):
    """End-to-end BER: a bit is wrong when exactly one of BSC flip / channel error occurs."""
    if not 0.0 <= error_rate <= 1.0:
        raise ValueError("error rate must lie in [0, 1]")
    q = channel_ber(scheme, ebn0_db)
    p = error_rate
    return p * (1.0 - q) + (1.0 - p) * q


def confidence_interval(errors, n, z=Z95):
    """Normal-approximation binomial interval widened by a 1/(2n) continuity term."""
    p = errors / n
    half = z * math.sqrt(p * (1.0 - p) / n) + 0.5 / n
    return max(0.0, p - half), min(1.0, p + half)


def binomial_band(p, n, z=3.0):
    """Half-width of the ``z``-sigma band of an n-trial binomial proportion around ``p``."""
    return z * math.sqrt(p * (1.0 - p) / n)


@dataclass(frozen=True)
class SweepPoint:
    scheme: Scheme
    ebn0_db: float
    error_rate: float
    bits_sent: int
    bit_errors: int
    ber: float
    ci_low: float
    ci_high: float

    def csv_row(self):
        return ",".join([
            self.scheme.value, repr(float(self.ebn0_db)), repr(float(self.error_rate)),
            str(self.bits_sent), str(self.bit_errors),
            repr(self.ber), repr(self.ci_low), repr(self.ci_high),
        ])


def _stream_power(scheme, bits, cfg, chunk):
    total = 0.0
    for lo in range(0, len(bits), chunk):
        s = modulate(scheme, bits[lo:lo + chunk], cfg, bit_offset=lo).samples
        total += float(np.dot(s, s))
    return total / (len(bits) * cfg.samples_per_bit)


def simulate_point(scheme, ebn0_db, error_rate, n_bits, cfg, rng, noiseless=False,
                   chunk_bits=1 << 14):
    """One Monte Carlo point; returns the error count against the pre-BSC bits.

    The noise level comes from the measured power of the whole transmitted
    stream. The stream is processed ``chunk_bits`` at a time, which does not
    change the result because every random draw is position-indexed.
    """
    scheme = Scheme.parse(scheme)
    chunk_bits += chunk_bits % 2  # keeps normal pairs aligned across chunks
    source = generate_bits(n_bits, rng.spawn(_BITS))
    sent = apply_bsc(source, BscSpec(error_rate), rng.spawn(_BSC))
    sigma = 0.0
    if not noiseless:
        power = _stream_power(scheme, sent, cfg, chunk_bits)
        sigma = noise_sigma_from_power(power, cfg, ebn0_db)
    noise = rng.spawn(_NOISE)
    errors = 0
    for lo in range(0, n_bits, chunk_bits):
        block = sent[lo:lo + chunk_bits]
        s = modulate(scheme, block, cfg, bit_offset=lo).samples
        if sigma > 0:
            s = noise.add_normal(s, sigma)
        decided, _ = demodulate(scheme, s, cfg, bit_offset=lo)
        errors += int(np.count_nonzero(decided != source[lo:lo + chunk_bits]))
    return errors


def run_sweep(scheme, grid, error_rate, bits_per_point, cfg, master_seed, noiseless=False,
              workers=1, chunk_bits=1 << 14):
    """BER against Eb/N0 for one scheme.

    Point ``i`` draws from ``RandomSource(master_seed).spawn(scheme, i)``, so
    results do not depend on ``workers`` or on evaluation order.
    """
    scheme = Scheme.parse(scheme)
    grid = [float(g) for g in grid]
    if not grid:
        raise ValueError("sweep grid is empty")
    if bits_per_point < 1:
        raise ValueError("bits_per_point must be at least 1")
    BscSpec(error_rate)
    master = RandomSource(master_seed)

    def one(i):
        rng = master.spawn(_SCHEME_KEYS[scheme], i)
        errors = simulate_point(scheme, grid[i], error_rate, bits_per_point, cfg, rng,
                                noiseless=noiseless, chunk_bits=chunk_bits)
        lo, hi = confidence_interval(errors, bits_per_point)
        return SweepPoint(scheme, grid[i], float(error_rate), bits_per_point, errors,
                          errors / bits_per_point, lo, hi)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, range(len(grid))))
    return [one(i) for i in range(len(grid))]


def format_sweep(points):
    buf = io.StringIO()
    buf.write(SWEEP_HEADER + "\n")
    for p in points:
        buf.write(p.csv_row() + "\n")
    return buf.getvalue()


def parse_sweep(text):
    lines = text.splitlines()
    if not lines or lines[0].strip() != SWEEP_HEADER:
        raise ValueError(f"sweep CSV must start with header '{SWEEP_HEADER}'")
    points = []
    for ln in lines[1:]:
        if not ln.strip():
            continue
        f = ln.split(",")
        if len(f) != 8:
            raise ValueError("sweep CSV rows must have eight fields")
        points.append(SweepPoint(Scheme.parse(f[0]), float(f[1]), float(f[2]), int(f[3]),
                                 int(f[4]), float(f[5]), float(f[6]), float(f[7])))
    return points
