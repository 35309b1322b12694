"""Seed management: one master seed, independent named substreams.

Every random draw in the package flows from a single per-invocation seed.
Each draw site is identified by a path of names/indices; the path is hashed
into the key of a counter-based bit generator (Philox), so introducing a new
draw site never perturbs the streams of existing ones.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["substream", "derive_seed"]

_MASK64 = (1 << 64) - 1


def _site_words(site: tuple[object, ...]) -> tuple[int, ...]:
    tag = "/".join(repr(part) for part in site)
    digest = hashlib.sha256(tag.encode("utf-8")).digest()
    return tuple(int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4))


def substream(seed: int, *site: object) -> np.random.Generator:
    """Return an independent generator for the draw site named by ``site``.

    The same ``(seed, site)`` pair always yields the same stream; distinct
    sites yield statistically independent streams.
    """
    sequence = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=_site_words(site))
    return np.random.Generator(np.random.Philox(sequence))


def derive_seed(seed: int, *site: object) -> int:
    """Derive a plain integer seed for APIs that take one."""
    return int(substream(seed, *site).integers(0, 2**63))
