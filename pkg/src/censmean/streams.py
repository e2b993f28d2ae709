"""Reproducible random streams for parallel simulation.

Streams are keyed by an integer path (seed, component, component, ...) and
backed by the counter-based Philox bit generator, so any worker can
reconstruct its own stream from the key alone.  Results never depend on
which thread or process draws first.
"""

import numpy as np

_MASK64 = (1 << 64) - 1


def substream(seed: int, *path: int) -> np.random.Generator:
    """Return an independent generator keyed by ``(seed, *path)``.

    The same key always yields the same stream; distinct keys yield
    streams that are independent for simulation purposes.
    """
    entropy = [int(seed) & _MASK64] + [int(p) & _MASK64 for p in path]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def scaled_key(value: float) -> int:
    """Map a small positive real (a tail index, a proportion) to a stream key."""
    return int(round(value * 1_000_000))
