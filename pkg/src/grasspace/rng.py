"""Seeded 64-bit mixing generator (splitmix64).

All randomized constructions in the package draw from this stream so that
identical seeds give byte-identical results on every platform.  Constants
are the standard splitmix64 ones:

    increment 0x9E3779B97F4A7C15
    mix 1     0xBF58476D1CE4E5B9
    mix 2     0x94D049BB133111EB

``below(n)`` reduces by plain modulo; the tiny bias is irrelevant at the
sizes used here and keeps the stream easy to reproduce in other languages.
"""

_MASK = (1 << 64) - 1

INCREMENT = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + INCREMENT) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & _MASK
        z = ((z ^ (z >> 27)) * MIX2) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish draw from range(n)."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n
