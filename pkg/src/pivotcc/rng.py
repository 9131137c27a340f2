"""Seeded random source built on SplitMix64.

SplitMix64 (Steele, Lea & Flood 2014) keeps a 64-bit state that advances by
the constant ``0x9E3779B97F4A7C15``; each output is the state passed through
the finalizer::

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

Output ``i`` (0-based) of a stream seeded with ``s`` is therefore
``mix(s + (i + 1) * gamma)``, which lets blocks of draws be produced with
vectorised uint64 arithmetic. Every derived quantity below (floats, bounded
integers, shuffles) is defined only in terms of this bit stream, so a seed
reproduces the same draws on any platform and numpy version.
"""

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1

_GAMMA = np.uint64(GAMMA)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _mix_scalar(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _mix_array(z):
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def splitmix64_block(seeds, start, count):
    """Outputs ``start .. start+count-1`` for each seed in ``seeds``.

    Returns a uint64 array of shape ``seeds.shape + (count,)``.
    """
    seeds = np.asarray(seeds, dtype=np.uint64)
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = seeds[..., None] + idx * _GAMMA
        return _mix_array(z)


def derive_seed(seed, index):
    """Child seed for sub-stream ``index`` of ``seed``."""
    return _mix_scalar((_mix_scalar((seed + GAMMA) & MASK64) ^ (index * 0xD1B54A32D192ED03)) & MASK64)


def u64_to_unit(x):
    """Map uint64 draws to doubles in [0, 1) using the top 53 bits."""
    return (np.asarray(x, dtype=np.uint64) >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


class RandomSource:
    """Single-owner deterministic random stream.

    Parameters
    ----------
    seed : int
        Any integer; reduced modulo 2**64.
    """

    def __init__(self, seed=0):
        self.seed = int(seed) & MASK64
        self._counter = 0

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, drawn={self._counter})"

    def next_u64(self, count=None):
        if count is None:
            self._counter += 1
            return _mix_scalar((self.seed + self._counter * GAMMA) & MASK64)
        out = splitmix64_block(self.seed, self._counter, count)
        self._counter += count
        return out

    def random(self, size=None):
        """Uniform doubles in [0, 1)."""
        if size is None:
            return (self.next_u64() >> 11) * (1.0 / (1 << 53))
        return u64_to_unit(self.next_u64(int(np.prod(size)))).reshape(size)

    def integer(self, bound):
        """Uniform integer in ``[0, bound)`` by rejection on the 64-bit draw."""
        if bound < 1:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def permutation(self, n):
        """Fisher-Yates shuffle of ``0..n-1`` (swap from the top down)."""
        order = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.integer(i + 1)
            order[i], order[j] = order[j], order[i]
        return np.array(order, dtype=np.int64)

    def sample_without_replacement(self, population, count):
        """``count`` distinct values from ``0..population-1`` (partial Fisher-Yates)."""
        if not 0 <= count <= population:
            raise ValueError("count must lie in [0, population]")
        pool = list(range(population))
        for i in range(count):
            j = i + self.integer(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return np.array(pool[:count], dtype=np.int64)

    def spawn(self, index):
        """Independent child source; does not advance this stream."""
        return RandomSource(derive_seed(self.seed, index))


def as_source(rng):
    """Accept a RandomSource, an int seed, or None (seed 0)."""
    if isinstance(rng, RandomSource):
        return rng
    return RandomSource(0 if rng is None else rng)
