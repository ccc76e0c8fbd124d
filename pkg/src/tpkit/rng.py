"""Keyed SplitMix64 streams.

Draw ``i`` of stream ``(seed, stream)`` is ``mix64(key + (i + 1) * GAMMA)``
modulo 2**64, where ``key = mix64(mix64(seed) ^ stream)``.  Every draw is
addressable by its index, so results never depend on call order across
streams.  Integers in ``[lo, hi]`` use the high 64 bits of
``draw * (hi - lo + 1)``.
"""

from __future__ import annotations

from fractions import Fraction

MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class Stream:
    def __init__(self, seed: int, stream: int = 0):
        self.seed = seed
        self.stream = stream
        self.key = mix64(mix64(seed & MASK) ^ (stream & MASK))
        self.index = 0

    def draw(self) -> int:
        self.index += 1
        return mix64(self.key + self.index * GAMMA)

    def integer(self, lo: int, hi: int) -> int:
        if hi < lo:
            raise ValueError("empty range")
        return lo + ((self.draw() * (hi - lo + 1)) >> 64)

    def rational(self, magnitude: int) -> Fraction:
        """``p/q`` with numerator then denominator uniform in ``[1, magnitude]``."""
        p = self.integer(1, magnitude)
        q = self.integer(1, magnitude)
        return Fraction(p, q)

    def choice(self, items):
        return items[self.integer(0, len(items) - 1)]

    def sample(self, population, k: int) -> list:
        """``k`` distinct items, by a partial Fisher-Yates shuffle."""
        pool = list(population)
        for i in range(k):
            j = self.integer(i, len(pool) - 1)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def child(self, stream: int) -> "Stream":
        return Stream(mix64(self.key ^ GAMMA), stream)
