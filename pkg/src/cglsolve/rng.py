"""Deterministic counter-based random numbers for initial data.

Reproducibility across platforms and library versions matters more than
statistical sophistication here, so the generator is pinned down exactly:
value i of the stream is splitmix64 applied to seed + (i+1) * golden gamma,
mapped to a uniform in (0, 1] by taking the top 53 bits, and consecutive
uniform pairs feed the Box-Muller transform. Any (seed, index) pair always
yields the same double, independent of how many values are drawn.
"""

import numpy as np

__all__ = ["uniforms", "standard_normals", "normal_tensor"]

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_TWO53 = float(1 << 53)


def _mix(seed, counters):
    z = np.uint64(seed) + (counters + np.uint64(1)) * _GAMMA
    z = z ^ (z >> np.uint64(30))
    z = z * _MIX1
    z = z ^ (z >> np.uint64(27))
    z = z * _MIX2
    return z ^ (z >> np.uint64(31))


def _check_seed(seed):
    if not isinstance(seed, (int, np.integer)):
        raise ValueError("seed must be an integer")
    if not 0 <= int(seed) < 2 ** 64:
        raise ValueError("seed must fit in 64 bits")
    return int(seed)


def uniforms(seed, count, start=0):
    """Doubles in (0, 1] from counter positions start..start+count-1."""
    seed = _check_seed(seed)
    counters = np.arange(start, start + count, dtype=np.uint64)
    bits = _mix(seed, counters) >> np.uint64(11)
    return (bits.astype(np.float64) + 1.0) / _TWO53


def standard_normals(seed, count):
    """Standard normals; value i depends only on (seed, i)."""
    pairs = (count + 1) // 2
    u = uniforms(seed, 2 * pairs)
    u1 = u[0::2]
    u2 = u[1::2]
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    out = np.empty(2 * pairs)
    out[0::2] = radius * np.cos(angle)
    out[1::2] = radius * np.sin(angle)
    return out[:count]


def normal_tensor(seed, shape):
    """Standard-normal tensor, filled first-index-fastest."""
    shape = tuple(int(n) for n in shape)
    total = int(np.prod(shape))
    return standard_normals(seed, total).reshape(shape, order="F")
