"""Deterministic random fixtures.

SplitMix64 is used for everything random in the package: it is tiny, fully
specified (Steele-Lea-Flood mixing constants below), and trivially portable,
so a (seed, fixture count) pair reproduces the same rational fixtures on any
platform or implementation.
"""

from fractions import Fraction

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & _MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo, hi):
        """Uniform-ish integer in [lo, hi] via modular reduction."""
        return lo + self.next_u64() % (hi - lo + 1)

    def fraction(self, lo=-9, hi=9, dmax=9):
        return Fraction(self.randint(lo, hi), self.randint(1, dmax))

    def nonzero_fraction(self, lo=-9, hi=9, dmax=9):
        while True:
            f = self.fraction(lo, hi, dmax)
            if f != 0:
                return f
