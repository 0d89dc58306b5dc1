"""Deterministic random numbers from the splitmix64 generator.

splitmix64 (Steele, Lea & Flood 2014) mixes an affine counter, so the
i-th output is a closed-form function of (seed, i) and whole blocks can
be produced with vectorized uint64 arithmetic.  Statistical quality needs
here are minimal; what matters is that a corpus regenerates bit-identically
from its seed, on any machine, in any order of token processing.
"""

from __future__ import annotations

import math

import numpy as np

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def derive_seed(seed: int, *keys: int) -> int:
    """Independent child seed for (seed, keys), e.g. per corpus token."""
    s = seed & _MASK
    for k in keys:
        s = _mix((s + _GAMMA + (k & _MASK)) & _MASK)
    return s


class SplitMix64:
    """Sequential splitmix64 stream with uniform and normal draws."""

    def __init__(self, seed: int):
        self._counter = 0
        self._seed = seed & _MASK

    def next_u64(self) -> int:
        self._counter += 1
        return _mix((self._seed + self._counter * _GAMMA) & _MASK)

    def uniform(self) -> float:
        """Uniform in (0, 1]."""
        return (self.next_u64() >> 11) * 2.0**-53 + 2.0**-53

    def normal(self, mean: float = 0.0, sd: float = 1.0) -> float:
        # Box-Muller, one value per pair (keeps the stream position simple)
        u1 = self.uniform()
        u2 = self.uniform()
        z = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
        return mean + sd * z

    def truncated_normal(self, mean: float, sd: float, floor: float) -> float:
        """Normal draw rejected below ``floor`` (redraw)."""
        for _ in range(1000):
            v = self.normal(mean, sd)
            if v >= floor:
                return v
        raise RuntimeError("truncated normal rejection did not terminate")

    def uniforms(self, n: int) -> np.ndarray:
        """Block of n uniforms in (0, 1], identical to n uniform() calls."""
        idx = np.arange(self._counter + 1, self._counter + n + 1, dtype=np.uint64)
        self._counter += n
        with np.errstate(over="ignore"):
            z = np.uint64(self._seed) + idx * np.uint64(_GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
            z = z ^ (z >> np.uint64(31))
        return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53 + 2.0**-53

    def normals(self, n: int) -> np.ndarray:
        """Block of n standard normals, identical to n normal() calls."""
        u = self.uniforms(2 * n)
        u1, u2 = u[0::2], u[1::2]
        return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
