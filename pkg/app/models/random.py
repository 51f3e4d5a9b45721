"""Seeded random streams.

Every sampled quantity is a function of ``(master, stream)``: the pair seeds a
Philox counter-based generator, and each sampling stage draws from its own
spawned child so stages never share a stream.
"""

import hashlib
from typing import List, Union

import numpy as np

from ..schemas.params import Seed

SeedLike = Union[Seed, int, np.random.Generator]


def make_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, Seed):
        sequence = np.random.SeedSequence(seed.master, spawn_key=(seed.stream,))
    else:
        sequence = np.random.SeedSequence(int(seed))
    return np.random.Generator(np.random.Philox(sequence))


def spawn(rng: np.random.Generator, count: int) -> List[np.random.Generator]:
    return rng.spawn(count)


def stream_for(cell_id: str, trial: int) -> int:
    """Stable 64-bit stream index for one trial of one sweep cell."""
    digest = hashlib.blake2b(f"{cell_id}/{trial}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")
