"""Seeded, stream-separated random generators.

A (seed, stream) pair always maps to the same ``numpy.random.Generator``;
different streams are statistically independent (SeedSequence spawn keys).
"""
import hashlib
import json

import numpy as np


def make_rng(seed: int, stream: int = 0, *sub: int) -> np.random.Generator:
    """Generator for (seed, stream); extra ``sub`` indices address independent
    sub-streams (e.g. one per factor of a product law)."""
    key = (int(stream),) + tuple(int(x) for x in sub)
    ss = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=key)
    return np.random.Generator(np.random.PCG64(ss))


def params_hash(params) -> str:
    """Short stable hash of a JSON-able parameter record."""
    blob = json.dumps(params, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
