"""Counter-based, splittable random streams.

Every random draw in this package comes from a stream addressed by
``(master seed, purpose tag, *indices)``.  Streams are independent Philox
generators: the 128-bit Philox key is derived from the seed and the purpose
tag, and the stream indices are placed in the high words of the 256-bit
Philox counter.  Two streams with different addresses never overlap (a
single stream would have to consume 2^128 blocks to run into its
neighbour), and results are identical no matter how many worker threads
consume the streams or in which order.
"""

from __future__ import annotations

import hashlib
import struct

import numpy as np

__all__ = ["substream"]

_KEY_CACHE: dict[tuple[int, str], tuple[int, int]] = {}

# Counter words 0..1 are left for the stream's own draw counter; words 2..3
# hold up to four 32-bit user indices (two per word, high word first).
_MAX_INDICES = 4

# Constructing Philox from a key skips its seeding path but still gathers OS
# entropy for the internal seed sequence, which dominates the cost in tight
# replicate loops.  Instead, build from one cached SeedSequence and overwrite
# the counter/key state; this is bit-identical to direct construction.
_BASE_SEED_SEQUENCE = np.random.SeedSequence(0)


def _philox_key(seed: int, purpose: str) -> tuple[int, int]:
    cached = _KEY_CACHE.get((seed, purpose))
    if cached is not None:
        return cached
    digest = hashlib.sha256(struct.pack("<q", seed) + purpose.encode("utf-8")).digest()
    key = int.from_bytes(digest[:16], "little")
    words = (key & 0xFFFFFFFFFFFFFFFF, key >> 64)
    _KEY_CACHE[(seed, purpose)] = words
    return words


def substream(seed: int, purpose: str, *indices: int) -> np.random.Generator:
    """Return the generator addressed by ``(seed, purpose, *indices)``.

    Up to four indices, each in ``[0, 2**32)``.  Within one purpose tag,
    distinct index tuples of equal length address distinct, non-overlapping
    streams.
    """
    if len(indices) > _MAX_INDICES:
        raise ValueError("too many stream indices")
    counter = [0, 0, 0, 0]
    for j, ix in enumerate(indices):
        if not 0 <= ix < 2**32:
            raise ValueError("stream indices must lie in [0, 2**32)")
        word, half = divmod(j, 2)
        counter[3 - word] |= ix << (32 * half)
    bit_gen = np.random.Philox(_BASE_SEED_SEQUENCE)
    state = bit_gen.state
    state["state"]["counter"][:] = counter
    state["state"]["key"][:] = _philox_key(seed, purpose)
    state["buffer_pos"] = 4
    state["has_uint32"] = 0
    state["uinteger"] = 0
    bit_gen.state = state
    return np.random.Generator(bit_gen)
