"""SplitMix64, the generator behind every seeded instance.

Version 1 of the stream:

    state <- state + 0x9E3779B97F4A7C15            (mod 2^64)
    z <- (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB
    output z ^ (z >> 31)

``below(bound)`` rejects raw outputs under (2^64 - bound) mod bound and
returns the rest mod bound, so the stream consumed per draw is part of the
contract.  ``bits(width)`` concatenates 64-bit outputs low word first.
Derived streams (``fork``) seed a fresh generator from the next output.
"""

from __future__ import annotations

from typing import MutableSequence, Sequence, TypeVar

PRNG_VERSION = 1
MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

T = TypeVar("T")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound > 1 << 64:
            return self.bits((bound - 1).bit_length()) % bound
        threshold = ((1 << 64) - bound) % bound
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % bound

    def bits(self, width: int) -> int:
        value, shift = 0, 0
        while shift < width:
            value |= self.next_u64() << shift
            shift += 64
        return value & ((1 << width) - 1)

    def chance(self, numerator: int, denominator: int) -> bool:
        return self.below(denominator) < numerator

    def choice(self, items: Sequence[T]) -> T:
        return items[self.below(len(items))]

    def shuffle(self, items: MutableSequence) -> None:
        """Fisher-Yates from the top index down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, items: Sequence[T], count: int) -> list[T]:
        pool = list(items)
        self.shuffle(pool)
        return pool[:count]

    def fork(self) -> SplitMix64:
        return SplitMix64(self.next_u64())
