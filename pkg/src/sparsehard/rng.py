"""Seedable, splittable randomness with a documented normal transform.

Every randomized routine in the package derives independent substreams
from (seed, index...) via numpy's SeedSequence spawn keys, so results do
not depend on execution order or worker count. Normal variates are
produced by an explicit Box-Muller transform on the generator's uniform
doubles; that transform, not the generator's native normal sampler, is
the reproducibility contract.
"""

from __future__ import annotations

import numpy as np


def substream(seed: int, *path: int) -> np.random.Generator:
    """Independent PCG64 generator for the given (seed, path) key."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.PCG64(ss))


def standard_normals(gen: np.random.Generator, n: int) -> np.ndarray:
    """n i.i.d. N(0,1) draws via Box-Muller.

    Consumes ceil(n/2) pairs of uniforms (u1, u2); u1 is mapped into
    (0, 1] as 1 - random() so the log is always finite. The k-th pair
    yields z_{2k} = sqrt(-2 ln u1) cos(2 pi u2) and
    z_{2k+1} = sqrt(-2 ln u1) sin(2 pi u2); the trailing draw is dropped
    when n is odd.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return np.zeros(0)
    pairs = (n + 1) // 2
    u1 = 1.0 - gen.random(pairs)
    u2 = gen.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    out = np.empty(2 * pairs)
    out[0::2] = radius * np.cos(angle)
    out[1::2] = radius * np.sin(angle)
    return out[:n]


def rademacher(gen: np.random.Generator, shape) -> np.ndarray:
    """Uniform ±1 array of the given shape."""
    return 2.0 * gen.integers(0, 2, size=shape).astype(float) - 1.0


def random_bits(gen: np.random.Generator, n: int) -> np.ndarray:
    """Uniform 0/1 vector of length n (dtype uint8)."""
    return gen.integers(0, 2, size=n, dtype=np.uint8)
