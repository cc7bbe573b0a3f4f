"""Reproducible, splittable pseudorandom streams for trajectory sampling.

Every trajectory owns a private counter-based stream identified by
``(master_seed, stream_id)``.  A stream is a pure function: the j-th 64-bit
word is ``mix64(key + (j+1)*GOLDEN)`` where ``key`` derives from the seed
pair, so any draw can be regenerated at random access without shared state.
The compiled kernel and the numpy fallback hard-code the same constants and
must stay bit-for-bit in sync with this module.

Sign components of the lattice step are taken from single bits of a stream
word (never from floating-point comparisons), and uniforms use the top 53
bits, so results are identical across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1

#: Odd increment of the splitmix64 sequence (2**64 / golden ratio).
GOLDEN = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB

_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53


def mix64(z: int) -> int:
    """splitmix64 finalizer: avalanche all 64 bits of ``z``."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MULT1) & _MASK64
    z = ((z ^ (z >> 27)) * _MULT2) & _MASK64
    return z ^ (z >> 31)


def stream_key(master_seed: int, stream_id: int) -> int:
    """Derive the 64-bit key of stream ``stream_id`` under ``master_seed``.

    Pure function of its arguments; distinct ids give keys at avalanched,
    effectively random offsets of the underlying full-period sequence.
    """
    return mix64((mix64(master_seed) + ((stream_id + 1) * GOLDEN)) & _MASK64)


def raw_word(key: int, counter: int) -> int:
    """Return the ``counter``-th 64-bit word of the stream with ``key``."""
    return mix64((key + ((counter + 1) * GOLDEN)) & _MASK64)


@dataclass(frozen=True)
class SeedSpec:
    """Master seed plus the per-trajectory stream index."""

    master_seed: int
    stream_id: int

    def __post_init__(self) -> None:
        for name in ("master_seed", "stream_id"):
            v = getattr(self, name)
            if not 0 <= v < 1 << 64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {v}")

    def key(self) -> int:
        return stream_key(self.master_seed, self.stream_id)


class RandomStream:
    """Sequential view of one counter-based stream; owns its draw counter."""

    __slots__ = ("key", "counter")

    def __init__(self, key: int):
        self.key = key & _MASK64
        self.counter = 0

    def next_word(self) -> int:
        w = raw_word(self.key, self.counter)
        self.counter += 1
        return w

    def uniform(self) -> float:
        """One draw, uniform on [0, 1) from the top 53 bits of a word."""
        return (self.next_word() >> 11) * _INV_2_53


def derive_stream(seed: SeedSpec) -> RandomStream:
    """Materialize the stream for ``seed``; pure in (master_seed, stream_id)."""
    return RandomStream(seed.key())


def rademacher_step(stream: RandomStream, d: int) -> np.ndarray:
    """Vector of ``d`` independent components, each +1/2 or -1/2.

    Consumes exactly ``d`` draws; component i is the sign bit of draw i.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    out = np.empty(d)
    for i in range(d):
        out[i] = 0.5 if stream.next_word() >> 63 else -0.5
    return out


def bernoulli(stream: RandomStream, p: float) -> bool:
    """True with probability ``p``; consumes one draw.

    Endpoints are exact: p=1 is always true and p=0 always false, because
    uniforms live on [0, 1).
    """
    if not -1e-12 <= p <= 1.0 + 1e-12:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    p = min(max(p, 0.0), 1.0)
    return stream.uniform() < p


# -- vectorized companions (used by the numpy kernel backend) ---------------

_GOLDEN_U64 = np.uint64(GOLDEN)
_MULT1_U64 = np.uint64(_MULT1)
_MULT2_U64 = np.uint64(_MULT2)


def mix64_array(z: np.ndarray) -> np.ndarray:
    """Vectorized :func:`mix64` over a uint64 array."""
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= _MULT1_U64
    z ^= z >> np.uint64(27)
    z *= _MULT2_U64
    z ^= z >> np.uint64(31)
    return z


def stream_keys(master_seed: int, stream_ids: np.ndarray) -> np.ndarray:
    """Vectorized :func:`stream_key` for an array of stream ids."""
    ids = stream_ids.astype(np.uint64, copy=False)
    base = np.uint64(mix64(master_seed))
    return mix64_array(base + (ids + np.uint64(1)) * _GOLDEN_U64)


def words_at(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Vectorized :func:`raw_word`: one word per (key, counter) pair."""
    k = keys.astype(np.uint64, copy=False)
    c = counters.astype(np.uint64, copy=False)
    return mix64_array(k + (c + np.uint64(1)) * _GOLDEN_U64)


def uniform_from_words(words: np.ndarray) -> np.ndarray:
    return (words >> np.uint64(11)).astype(np.float64) * _INV_2_53


def signs_from_words(words: np.ndarray) -> np.ndarray:
    """Map the top bit of each word to +1/2 (bit set) or -1/2."""
    return np.where((words >> np.uint64(63)).astype(bool), 0.5, -0.5)
