"""Counter-based random draws for reproducible Monte-Carlo sampling.

Every draw is a pure function of ``(seed, stream, counter)``, so samples can
be generated in any order or partition and still agree bit for bit.  All
arithmetic is modulo 2**64::

    mix64(z) = splitmix64 finaliser:
        z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
        z ^= z >> 27; z *= 0x94D049BB133111EB
        z ^= z >> 31
    key      = mix64(seed ^ mix64(stream + G))
    draw     = mix64(key + (counter + 1) * G)        G = 0x9E3779B97F4A7C15

A draw becomes an index in ``[0, size)`` as
``min(floor((draw >> 11) * 2**-53 * size), size - 1)`` evaluated in IEEE
double precision.  The experiment module uses the sample number as the stream
and the tuple position as the counter.

This module is the scalar reference; the vectorised versions live in
``kernels.counter_indices``.
"""

from __future__ import annotations

import math

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def draw(seed: int, stream: int, counter: int) -> int:
    key = mix64((seed & MASK) ^ mix64(stream + GOLDEN))
    return mix64(key + (counter + 1) * GOLDEN)


def to_index(u: int, size: int) -> int:
    idx = math.floor(float(u >> 11) * (1.0 / 9007199254740992.0) * size)
    return min(idx, size - 1)


def uniform_index(seed: int, stream: int, counter: int, size: int) -> int:
    return to_index(draw(seed, stream, counter), size)
