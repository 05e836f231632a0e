"""Deterministic RNG stream derivation.

Every experiment in this package draws randomness from a single master seed.
Independent components (trials, challenger vs. adversary, sides of an attack)
get their own generator derived from (master seed, path), so results never
depend on scheduling or on how many worker threads ran the trials.
"""
from __future__ import annotations

import zlib

import numpy as np


def _path_word(part: object) -> int:
    """Map one path component to a stable 32-bit word."""
    if isinstance(part, bool):
        return int(part)
    if isinstance(part, (int, np.integer)):
        if part < 0:
            raise ValueError("stream path integers must be non-negative")
        return int(part) & 0xFFFFFFFF
    if isinstance(part, str):
        return zlib.crc32(part.encode("utf-8"))
    raise TypeError(f"unsupported stream path component: {part!r}")


def stream(master_seed: int, *path: object) -> np.random.Generator:
    """Derive a named child generator from the master seed.

    The same (seed, path) always yields the same generator, on any host and
    under any parallel schedule.
    """
    key = tuple(_path_word(p) for p in path)
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=key))
