"""Deterministic seeded PRNG: splitmix64 keying into xorshift128+.

The generator is reproducible bit-for-bit across platforms and Python
builds: all state is 64-bit integer arithmetic done with explicit masking,
and Gaussian variates come from Box-Muller on the 53-bit uniform outputs.
Substreams are a pure function of (seed, index), so parallel workloads can
hand one derived stream to each task without coordination.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    """splitmix64 finalizer: a 64-bit avalanche mix."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SeededRng:
    """xorshift128+ generator keyed from a 64-bit seed via splitmix64."""

    __slots__ = ("_s0", "_s1", "_gauss_cache")

    def __init__(self, seed: int, stream: int = 0):
        key = _mix64(_mix64(seed & _MASK64) + _GOLDEN * ((stream & _MASK64) + 1))
        self._s0 = _mix64(key + _GOLDEN)
        self._s1 = _mix64(key + 2 * _GOLDEN)
        if self._s0 == 0 and self._s1 == 0:
            self._s1 = _GOLDEN  # all-zero state is the one forbidden point
        self._gauss_cache: float | None = None

    def next_u64(self) -> int:
        s1 = self._s0
        s0 = self._s1
        result = (s0 + s1) & _MASK64
        self._s0 = s0
        s1 ^= (s1 << 23) & _MASK64
        self._s1 = s1 ^ s0 ^ (s1 >> 18) ^ (s0 >> 5)
        return result

    def uniform(self) -> float:
        """Uniform draw in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def gaussian(self) -> float:
        """Standard normal draw (Box-Muller, pairs cached)."""
        if self._gauss_cache is not None:
            g = self._gauss_cache
            self._gauss_cache = None
            return g
        # u1 in (0, 1] so the log is finite
        u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53
        u2 = (self.next_u64() >> 11) * 2.0**-53
        r = math.sqrt(-2.0 * math.log(u1))
        angle = 2.0 * math.pi * u2
        self._gauss_cache = r * math.sin(angle)
        return r * math.cos(angle)


def rng_substream(seed: int, index: int) -> SeededRng:
    """Derive an independent stream; pure function of (seed, index)."""
    return SeededRng(seed, stream=index)
