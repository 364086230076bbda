"""SplitMix64 generator used for every seeded instance in the package.

Reference recurrence (all arithmetic mod 2**64)::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

A uniform double in [0, 1) is ``(next() >> 11) * 2**-53``; uniform(lo, hi) is
``lo + (hi - lo) * u``. Matrices are filled in row-major order.
"""

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        if seed < 0 or seed > _MASK:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = int(seed)

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def uniform(self, lo=0.0, hi=1.0, shape=None):
        if shape is None:
            return lo + (hi - lo) * self.random()
        count = int(np.prod(shape))
        vals = [lo + (hi - lo) * self.random() for _ in range(count)]
        return np.array(vals, dtype=float).reshape(shape)

    def integers(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi) by modular reduction (bias is negligible for small ranges)."""
        if hi <= lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo)
