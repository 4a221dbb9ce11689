"""Seeded random streams.

Every draw comes from numpy's PCG64 seeded through
``SeedSequence(seed, spawn_key=(stream_id, *sub))``, so a (seed, stream_id,
sub-key) triple fixes the sequence on every platform numpy supports.
Chunked computations use the chunk index as sub-key; results therefore do
not depend on how chunks are distributed over workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

CHUNK_SIZE = 1 << 16
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class SeededStream:
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not (0 <= self.seed <= _U64 and 0 <= self.stream_id <= _U64):
            raise ValueError("seed and stream_id must be unsigned 64-bit integers")

    def generator(self, *sub: int) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, *sub))
        return np.random.Generator(np.random.PCG64(ss))

    def to_dict(self) -> dict:
        return {"seed": self.seed, "stream_id": self.stream_id}


def as_stream(seed_or_stream, stream_id: int = 0) -> SeededStream:
    if isinstance(seed_or_stream, SeededStream):
        return seed_or_stream
    return SeededStream(int(seed_or_stream), stream_id)


def chunks(n: int, size: int = CHUNK_SIZE):
    """Yield (chunk_index, chunk_length) covering ``n`` items."""
    for j, start in enumerate(range(0, n, size)):
        yield j, min(size, n - start)
