"""
Seeded random streams.

Every stochastic call takes an explicit integer seed. Parallel replications
derive independent streams from (base_seed, tags...) instead of sharing one
generator, so results do not depend on scheduling.
"""
import hashlib

import numpy as np


def _part_to_int(part: int | str) -> int:
    if isinstance(part, str):
        digest = hashlib.sha256(part.encode("utf-8")).digest()
        return int.from_bytes(digest[:8], "little")
    if part < 0:
        raise ValueError(f"seed parts must be non-negative, got {part}")
    return int(part)


def derive_seed(base_seed: int, *parts: int | str) -> np.random.SeedSequence:
    """Seed sequence for a named sub-task, e.g. (seed, "eig-toy", "nmc", m, rep)."""
    return np.random.SeedSequence([_part_to_int(base_seed), *(_part_to_int(p) for p in parts)])


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.default_rng(_part_to_int(seed))
