"""Splittable, counter-based randomness.

Every stochastic routine in the package draws from a Philox generator keyed
by ``(seed, *path)`` through ``numpy``'s ``SeedSequence`` spawn mechanism.
Paths are small integer tuples such as ``(point_index, trial_index)``; two
distinct paths give statistically independent, bitwise-reproducible streams,
so trials can run in any order or on any number of workers without changing
results. Within one stream the draw position plays the role of the
measurement index.
"""

from __future__ import annotations

import numpy as np


def philox_generator(seed: int, *path: int) -> np.random.Generator:
    """Return the Philox stream for ``(seed, *path)``."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(path))
    return np.random.Generator(np.random.Philox(key=ss.generate_state(2, np.uint64)))
