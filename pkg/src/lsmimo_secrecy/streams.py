"""Seeded random streams.

Every stream is a PCG64 generator keyed by ``SeedSequence(seed, spawn_key=key)``,
so ``(seed, key)`` alone fixes its output. Workers of one Monte Carlo run use
keys ``(0, k)``; sweep points use ``(1, series, point)``.
"""

import os

import numpy as np

from .errors import ParameterError

SEED_ENV_VAR = "LSMIMO_SECRECY_SEED"
DEFAULT_SEED = 20140


def default_seed():
    """Seed from ``$LSMIMO_SECRECY_SEED`` if set, else a fixed constant."""
    value = os.environ.get(SEED_ENV_VAR)
    if value is None or value.strip() == "":
        return DEFAULT_SEED
    try:
        return int(value)
    except ValueError:
        raise ParameterError(SEED_ENV_VAR, f"expected an integer, got {value!r}") from None


def make_rng(seed, *key):
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def worker_rngs(seed, workers):
    return [make_rng(seed, 0, k) for k in range(workers)]


def point_seed(seed, *key):
    """Derive a child integer seed for a sub-task, e.g. one sweep point."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(1,) + tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
