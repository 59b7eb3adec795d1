"""Fixed-width bit vectors and integer packing helpers.

Bit order is LSB-first everywhere: bit 0 of a vector is its least
significant bit, and when several fields are packed into one integer the
first field occupies the lowest bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class BitVec:
    value: int
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise ValueError(f"negative width {self.width}")
        if self.value < 0 or self.value >> self.width:
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> BitVec:
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1, True, False):
                raise ValueError(f"bit {i} is {b!r}")
            value |= int(b) << i
        return cls(value, len(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.width))

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.width:
            raise IndexError(i)
        return (self.value >> i) & 1

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __len__(self) -> int:
        return self.width

    def concat(self, *others: BitVec) -> BitVec:
        """Append ``others`` above this vector's bits."""
        value, width = self.value, self.width
        for o in others:
            value |= o.value << width
            width += o.width
        return BitVec(value, width)

    def split(self, widths: Sequence[int]) -> list[BitVec]:
        if sum(widths) != self.width:
            raise ValueError(f"field widths {list(widths)} do not sum to {self.width}")
        out, shift = [], 0
        for w in widths:
            out.append(BitVec((self.value >> shift) & ((1 << w) - 1), w))
            shift += w
        return out


def pack(values: Iterable[int], width: int) -> int:
    """Pack equal-width fields into one integer, first field lowest."""
    out, shift = 0, 0
    limit = 1 << width
    for v in values:
        if not 0 <= v < limit:
            raise ValueError(f"field {v} does not fit in {width} bits")
        out |= v << shift
        shift += width
    return out


def unpack(value: int, width: int, count: int) -> list[int]:
    mask = (1 << width) - 1
    return [(value >> (i * width)) & mask for i in range(count)]


def ceil_log2(x: int) -> int:
    """Smallest b with 2**b >= x (0 for x <= 1)."""
    if x <= 1:
        return 0
    return (x - 1).bit_length()


def is_power_of_two(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


def next_power_of_two(x: int) -> int:
    return 1 << ceil_log2(x)


def width_for_count(count: int) -> int:
    """Bits needed to encode the integers 0..count-1 (at least 1)."""
    return max(1, ceil_log2(count))
