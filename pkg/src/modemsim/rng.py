"""Seeded, portable random source.

Every draw comes from SplitMix64 used as a counter-based generator: word
``i`` of the stream for seed ``s`` is ``mix64(s + (i + 1) * 0x9E3779B97F4A7C15)``,
which is exactly the output sequence of the reference SplitMix64. Being
counter based, any slice of the stream can be computed independently, so
the kernels vectorise and chunked draws equal one large draw.

Derived values:

* uniform: top 53 bits of a word scaled to [0, 1)
* bit: top bit of a word
* normal: Box-Muller on consecutive word pairs, cosine branch first, then sine
"""
from ._backend import kernels

MASK64 = 0xFFFFFFFFFFFFFFFF
GAMMA = 0x9E3779B97F4A7C15
_SPAWN_MULT = 0xD1B54A32D192ED03


def mix64(z):
    """SplitMix64 finaliser on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class RandomSource:
    """Single-owner stream of random draws.

    ``position`` counts 64-bit words consumed so far. Normals are drawn in
    pairs, so a call for ``n`` normals advances by ``2 * ceil(n / 2)``.
    """

    def __init__(self, seed=0, position=0):
        if seed < 0 or seed > MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = int(seed)
        self.position = int(position)

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, position={self.position})"

    def spawn(self, *keys):
        """Independent child source keyed by integers; does not advance ``self``."""
        s = self.seed
        for key in keys:
            s = mix64(mix64(s + GAMMA) ^ (((int(key) + 1) * _SPAWN_MULT) & MASK64))
        return RandomSource(s)

    def _take(self, words):
        start = self.position
        self.position += words
        return start

    def words(self, n):
        return kernels.splitmix64_words(self.seed, self._take(n), n)

    def uniform(self, n):
        return kernels.uniforms(self.seed, self._take(n), n)

    def bits(self, n):
        return kernels.bits(self.seed, self._take(n), n)

    def normal(self, n):
        return kernels.normals(self.seed, self._take(2 * ((n + 1) // 2)), n)

    def add_normal(self, x, sigma):
        """Return ``x + sigma * z`` with ``z`` standard normal, one draw per element."""
        n = len(x)
        return kernels.add_normals(x, float(sigma), self.seed, self._take(2 * ((n + 1) // 2)))


def generate_bits(n, rng):
    """``n`` equiprobable bits drawn from ``rng``."""
    if n < 0:
        raise ValueError("bit count must be non-negative")
    return rng.bits(int(n))
