"""Seeding discipline for every randomized routine in the package.

All randomness flows through numpy's Philox generator (counter-based,
64-bit). Derived seeds come from a splitmix64 chain so that streams
indexed by (seed, i) or (seed, i, j) are independent and stable: the
stream for index i does not depend on how many other indices exist.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    # standard splitmix64 finalizer; full-avalanche on 64 bits
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def mix(seed: int, *indices: int) -> int:
    """Derive a child seed from a master seed and one or more indices."""
    h = splitmix64(seed & _MASK)
    for v in indices:
        h = splitmix64(h ^ (v & _MASK))
    return h


def generator(seed: int) -> np.random.Generator:
    """Philox generator for a 64-bit seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed & _MASK)))
