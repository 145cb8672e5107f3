"""Seeded random streams.

Every stream is a ``numpy.random.Generator`` over PCG64.  A child stream is
derived from a 64-bit master seed and an integer path via
``SeedSequence(master_seed, spawn_key=path)``, so replication ``i`` of an
experiment always sees the same bits no matter how replications are
scheduled across workers.

Stream paths used by the library:

* ``(0,)``  degree sampling for ``degrees`` and ``generate``
* ``(1,)``  pairing / simplification for ``generate``
* ``(2, i)`` replication ``i`` of an experiment
"""

from __future__ import annotations

import numpy as np

SEED_MAX = 2**64 - 1

DEGREES_STREAM = (0,)
PAIRING_STREAM = (1,)
REPLICATION_STREAM = 2


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int | None = None) -> np.random.Generator:
    """PCG64 generator; ``None`` draws fresh OS entropy."""
    if seed is None:
        return np.random.Generator(np.random.PCG64())
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


def derive_rng(master_seed: int, *path: int) -> np.random.Generator:
    """Independent child stream identified by ``path`` under ``master_seed``."""
    ss = np.random.SeedSequence(check_seed(master_seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.PCG64(ss))


def replication_rng(master_seed: int, rep: int) -> np.random.Generator:
    return derive_rng(master_seed, REPLICATION_STREAM, rep)
