"""Pure numpy implementations of the hot kernels.

Mirrors ``_kernels.pyx`` function for function. Integer outputs (words,
bits, uniforms) are bit-identical to the compiled path; normals can differ
in the last ulp because numpy's vectorised log/cos/sin are not libm.
"""
import numpy as np

GAMMA = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)

_TWO_PI = 2.0 * np.pi
_INV_2_53 = 1.0 / 9007199254740992.0
_CHUNK = 1 << 20


def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * MIX1
    z = (z ^ (z >> np.uint64(27))) * MIX2
    return z ^ (z >> np.uint64(31))


def splitmix64_words(seed, start, n):
    """Words ``start .. start+n-1`` of the SplitMix64 stream seeded with ``seed``."""
    n = int(n)
    out = np.empty(n, dtype=np.uint64)
    base = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    for lo in range(0, n, _CHUNK):
        hi = min(n, lo + _CHUNK)
        # counter index i maps to state seed + (i + 1) * GAMMA (mod 2**64)
        idx = np.arange(start + lo + 1, start + hi + 1, dtype=np.uint64)
        out[lo:hi] = _mix(base + idx * GAMMA)
    return out


def uniforms(seed, start, n):
    return (splitmix64_words(seed, start, n) >> np.uint64(11)).astype(np.float64) * _INV_2_53


def bits(seed, start, n):
    return (splitmix64_words(seed, start, n) >> np.uint64(63)).astype(np.uint8)


def _box_muller(words):
    # words holds (u1, u2) pairs; u1 is shifted into (0, 1] so log never sees 0
    u1 = ((words[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) * _INV_2_53
    u2 = (words[1::2] >> np.uint64(11)).astype(np.float64) * _INV_2_53
    r = np.sqrt(-2.0 * np.log(u1))
    theta = _TWO_PI * u2
    out = np.empty(2 * len(u1), dtype=np.float64)
    out[0::2] = r * np.cos(theta)
    out[1::2] = r * np.sin(theta)
    return out


def normals(seed, start, n):
    """``n`` standard normals starting at word ``start``; consumes ``2*ceil(n/2)`` words."""
    n = int(n)
    out = np.empty(n, dtype=np.float64)
    step = _CHUNK
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        m = hi - lo
        pairs = (m + 1) // 2
        words = splitmix64_words(seed, start + lo, 2 * pairs)
        out[lo:hi] = _box_muller(words)[:m]
    return out


def add_normals(x, sigma, seed, start):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    n = len(x)
    for lo in range(0, n, _CHUNK):
        hi = min(n, lo + _CHUNK)
        out[lo:hi] = x[lo:hi] + sigma * normals(seed, start + lo, hi - lo)
    return out


def block_correlate(x, ref, block):
    """Per-block inner products of ``x`` and ``ref`` (sequential summation).

    ``ref`` is either as long as ``x`` or a single block reused for every block.
    """
    x = np.asarray(x, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    nblocks = len(x) // block
    xb = x[: nblocks * block].reshape(nblocks, block)
    if len(ref) == block:
        prod = xb * ref[None, :]
    else:
        prod = xb * ref[: nblocks * block].reshape(nblocks, block)
    # left-to-right accumulation over columns matches the compiled loop exactly
    acc = np.zeros(nblocks, dtype=np.float64)
    for j in range(block):
        acc += prod[:, j]
    return acc
