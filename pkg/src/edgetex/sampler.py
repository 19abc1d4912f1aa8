"""Seeded uniform sampling of edge pixels without replacement.

Random numbers come from NumPy's PCG64 bit generator seeded through
``SeedSequence``; only its raw 64-bit output stream is consumed, and bounded
integers are drawn with an exact rejection step.  Both are stable across
platforms and NumPy releases, which is what makes sampled point sets
reproducible byte for byte.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from edgetex.edge_map import EdgeMap

DEFAULT_N_POINTS = 32
_TWO64 = 1 << 64
_MASK64 = _TWO64 - 1


@dataclass(frozen=True)
class PointSet:
    points: tuple[tuple[int, int], ...]
    seed: int
    requested_n: int

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(-1, 2)


class RawStream:
    """Uniform integers from the raw PCG64 output."""

    def __init__(self, seed: int):
        self._bitgen = np.random.PCG64(seed & _MASK64)

    def next_u64(self) -> int:
        return int(self._bitgen.random_raw())

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = _TWO64 - (_TWO64 % bound)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound


def derive_seed(seed: int, frame: int, track_id) -> int:
    """Per-(frame, track) seed: first 8 bytes of BLAKE2b over ``"seed:frame:track_id"``."""
    key = f"{int(seed) & _MASK64}:{int(frame)}:{track_id}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")


def sample_edge_points(edge_map: EdgeMap, n: int = DEFAULT_N_POINTS, seed: int = 0) -> PointSet:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    # row-major enumeration of mask pixels
    flat = np.flatnonzero(edge_map.mask).tolist()
    k = min(n, len(flat))
    stream = RawStream(seed)
    m = len(flat)
    # partial Fisher-Yates: the first k slots end up a uniform k-subset in uniform order
    for i in range(k):
        j = i + stream.below(m - i)
        flat[i], flat[j] = flat[j], flat[i]
    width = edge_map.width
    points = tuple((idx % width, idx // width) for idx in flat[:k])
    return PointSet(points=points, seed=int(seed) & _MASK64, requested_n=n)
