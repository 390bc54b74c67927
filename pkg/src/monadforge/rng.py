"""Counter-based deterministic randomness.

Sampling in this package (search campaigns, witness hunts, property tests) is
keyed by a (seed, lane...) tuple and a draw counter, so any draw is a pure
function of those integers.  Reordering unrelated draws, adding trials, or
re-running on another platform never changes a previously keyed stream.

The mixing function is the splitmix64 finalizer; streams are derived by
folding each lane component into the key with one mixing round.
"""

from __future__ import annotations

from fractions import Fraction

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= _MASK
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


class CounterRng:
    """Deterministic stream keyed by (seed, *lane); the counter is the draw index."""

    __slots__ = ("key", "counter")

    def __init__(self, seed: int, *lane: int):
        key = _mix64(seed + _GOLDEN)
        for part in lane:
            key = _mix64(key ^ _mix64(part + _GOLDEN))
        self.key = key
        self.counter = 0

    def child(self, *lane: int) -> "CounterRng":
        """Independent stream for a sub-task; does not advance this one."""
        sub = CounterRng(0)
        key = self.key
        for part in lane:
            key = _mix64(key ^ _mix64(part + _GOLDEN))
        sub.key = key
        return sub

    def next_u64(self) -> int:
        v = _mix64(self.key ^ _mix64(self.counter * _GOLDEN + 1))
        self.counter += 1
        return v

    def int_between(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] inclusive.

        Modulo bias is below 2**-50 for every range used here (ranges are
        tiny against 2**64) and is irrelevant for seed-pinned streams.
        """
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.next_u64() % (hi - lo + 1)

    def nonzero_int_between(self, lo: int, hi: int) -> int:
        while True:
            v = self.int_between(lo, hi)
            if v != 0:
                return v

    def fraction(self, bound: int = 9, den_bound: int = 1) -> Fraction:
        """Random small rational; den_bound=1 keeps draws integral."""
        num = self.int_between(-bound, bound)
        den = self.int_between(1, den_bound) if den_bound > 1 else 1
        return Fraction(num, den)

    def choice(self, seq):
        if not seq:
            raise ValueError("choice from empty sequence")
        return seq[self.next_u64() % len(seq)]


def digest_lane(text: str) -> int:
    """Stable 64-bit lane id for keying streams off serialized content."""
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = (h ^ byte) * 0x100000001B3 & _MASK
    return h
