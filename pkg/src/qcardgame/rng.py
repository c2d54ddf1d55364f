"""SplitMix64 random streams with per-round substreams.

Every Monte Carlo round ``i`` owns a generator seeded with
``round_seed(seed, i) = mix64(seed ^ mix64(i))``, where ``mix64`` is the
SplitMix64 finalizer::

    z = (x + 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    return z ^ (z >> 31)

The generator itself is plain SplitMix64: each draw adds the golden gamma
0x9E3779B97F4A7C15 to the state and returns the finalized state. Floats are
``(u >> 11) * 2**-53``; bounded integers use rejection on the top of the
64-bit range so there is no modulo bias. All of this is small enough to port
bit-for-bit to another language.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix64(x: int) -> int:
    return _finalize((x + GAMMA) & MASK64)


def round_seed(seed: int, index: int) -> int:
    """Seed of the substream used by round ``index`` of a run seeded ``seed``."""
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return mix64(seed ^ mix64(index & MASK64))


class SplitMix64:
    """Minimal deterministic stream; counts its draws for reproducibility checks."""

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64
        self.draws = 0

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        self.draws += 1
        return _finalize(self.state)

    def random(self) -> float:
        """Uniform float in [0, 1). One draw."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        """Uniform integer in [0, n). Usually one draw; rejects the biased tail."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    @classmethod
    def for_round(cls, seed: int, index: int) -> "SplitMix64":
        return cls(round_seed(seed, index))
