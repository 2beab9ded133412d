"""Counter-based SplitMix64.

Draw ``t`` of the stream with base seed ``s`` is ``mix(s + (t + 1) * GAMMA)``,
which is exactly the ``t``-th output of the reference SplitMix64 generator
seeded with ``s``. Any draw can therefore be computed without generating
the ones before it.
"""

from __future__ import annotations

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1

__all__ = ["GAMMA", "splitmix64", "SplitMix64", "draws", "derive_seed"]


def splitmix64(x: int) -> int:
    """The SplitMix64 finaliser applied to a 64-bit integer."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential view of the stream, mostly useful for reference vectors."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return splitmix64(self.state)


def draws(base: int, start: int, count: int) -> np.ndarray:
    """Draws ``start .. start+count-1`` of stream ``base`` as a ``uint64`` array."""
    ctr = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(base & MASK64) + ctr * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    return z


def derive_seed(base: int, index: int) -> int:
    """Independent per-trial seed: draw ``index`` of stream ``base``."""
    return splitmix64((base + (index + 1) * GAMMA) & MASK64)
