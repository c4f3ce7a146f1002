"""Deterministic random streams.

Two generators cover every random choice in the package:

* point sampling uses NumPy's Philox bit generator (counter based,
  4x64-bit, 10 rounds), keyed directly by the caller's seed;
* per-pair and per-vertex edge draws use the SplitMix64 finalizer
  (Steele, Lea, Flood 2014), applied statelessly to a 64-bit key, so a
  draw depends only on (seed, key) and never on evaluation order.

Both algorithms are published and platform independent, which keeps
trial seeds reproducible across machines. The scalar and vector paths
implement the identical mixing function.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_U53 = 1.0 / (1 << 53)


def mix64_int(z: int) -> int:
    """SplitMix64 finalizer on one 64-bit integer."""
    z = (z + _GAMMA) & _MASK
    z = ((z ^ (z >> 30)) * _M1) & _MASK
    z = ((z ^ (z >> 27)) * _M2) & _MASK
    return z ^ (z >> 31)


def mix64(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer on a uint64 array."""
    z = z.astype(np.uint64, copy=True)
    with np.errstate(over="ignore"):
        z += np.uint64(_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
        z ^= z >> np.uint64(31)
    return z


def keyed_uint64(seed: int, keys) -> "np.ndarray | int":
    """Stateless 64-bit word per key: mix(mix(seed) ^ mix(key)).

    Double mixing decorrelates structured keys (pair codes, vertex
    indices) from structured seeds. Scalar keys take the integer path,
    arrays the vectorized one; both agree bit for bit.
    """
    s = mix64_int(seed & _MASK)
    if isinstance(keys, (int, np.integer)):
        return mix64_int(s ^ mix64_int(int(keys) & _MASK))
    return mix64(np.uint64(s) ^ mix64(keys))


def keyed_uniform(seed: int, keys) -> "np.ndarray | float":
    """Uniform double in [0, 1) per key, from the top 53 bits."""
    w = keyed_uint64(seed, keys)
    if isinstance(w, int):
        return (w >> 11) * _U53
    return (w >> np.uint64(11)).astype(np.float64) * _U53


class KeyedStream:
    """Sequential SplitMix64 stream for one (seed, key) substream.

    Walks the SplitMix64 state by the golden-ratio increment, so the
    i-th draw of a substream is a pure function of (seed, key, i).
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int, key: int):
        self._state = keyed_uint64(seed, int(key))

    def next_uint64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return mix64_int(self._state)

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound). bound must be >= 1."""
        if bound < 1:
            raise ValueError("bound must be >= 1")
        return self.next_uint64() % bound


def philox(seed: int) -> np.random.Generator:
    """Generator backed by Philox4x64-10 keyed by `seed`."""
    return np.random.Generator(np.random.Philox(key=np.uint64(seed & _MASK)))
