"""Exact bit-level primitives: bit vectors, 6-bit words, and their operators.

All state arithmetic in the digest runs on 6-bit unsigned words. Index 0 of a
:class:`BitString` is the leftmost (first-written) bit, and every text
rendering is most-significant-bit first, so worked examples like
``rotate_left(011001, 2) == 100101`` read exactly as printed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union, overload

WORD_BITS = 6
WORD_MASK = (1 << WORD_BITS) - 1  # 0b111111


class BitString:
    """Immutable ordered vector of bits.

    Index 0 is the leftmost bit; ``to_text``/``from_text`` round-trip exactly.
    """

    __slots__ = ("_bits",)

    def __init__(self, bits: Iterable[int]):
        bits = tuple(bits)
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit values must be 0 or 1, got {b!r}")
        self._bits = bits

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        if any(c not in "01" for c in text):
            raise ValueError(f"not a binary string: {text!r}")
        return cls(int(c) for c in text)

    @classmethod
    def from_int(cls, value: int, width: int) -> "BitString":
        """Most-significant-bit-first rendering of ``value`` in ``width`` bits."""
        if value < 0 or value >= (1 << width):
            raise ValueError(f"value {value} does not fit in {width} bits")
        return cls((value >> (width - 1 - i)) & 1 for i in range(width))

    def to_text(self) -> str:
        return "".join("01"[b] for b in self._bits)

    def to_int(self) -> int:
        """Value of the bits read most-significant-bit first."""
        v = 0
        for b in self._bits:
            v = (v << 1) | b
        return v

    def __len__(self) -> int:
        return len(self._bits)

    @overload
    def __getitem__(self, index: int) -> int: ...

    @overload
    def __getitem__(self, index: slice) -> "BitString": ...

    def __getitem__(self, index: Union[int, slice]):
        if isinstance(index, slice):
            return BitString(self._bits[index])
        return self._bits[index]

    def __iter__(self) -> Iterator[int]:
        return iter(self._bits)

    def __add__(self, other: "BitString") -> "BitString":
        if not isinstance(other, BitString):
            return NotImplemented
        return BitString(self._bits + other._bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self._bits == other._bits

    def __hash__(self) -> int:
        return hash(self._bits)

    def __repr__(self) -> str:
        return f"BitString({self.to_text()!r})"


@dataclass(frozen=True, slots=True)
class Word6:
    """6-bit unsigned word; all arithmetic wraps modulo 64."""

    value: int

    def __post_init__(self):
        if not 0 <= self.value <= WORD_MASK:
            raise ValueError(f"Word6 value out of range [0, 63]: {self.value}")

    @classmethod
    def from_text(cls, text: str) -> "Word6":
        if len(text) != WORD_BITS:
            raise ValueError(f"Word6 text must be exactly 6 characters: {text!r}")
        return cls(BitString.from_text(text).to_int())

    @classmethod
    def from_bits(cls, bits: BitString) -> "Word6":
        if len(bits) != WORD_BITS:
            raise ValueError(f"Word6 needs exactly 6 bits, got {len(bits)}")
        return cls(bits.to_int())

    def to_text(self) -> str:
        return format(self.value, "06b")

    def to_bits(self) -> BitString:
        return BitString.from_int(self.value, WORD_BITS)


# Integer-level kernels. These are the single source of truth for the word
# operators; the typed wrappers below and the digest hot path both use them.

def not6(x: int) -> int:
    return ~x & WORD_MASK


def and6(x: int, y: int) -> int:
    return x & y


def or6(x: int, y: int) -> int:
    return x | y


def xor6(x: int, y: int) -> int:
    return x ^ y


def rol6(x: int, n: int) -> int:
    """Left circular shift by ``n`` positions; ``n`` is reduced modulo 6."""
    n %= WORD_BITS
    return ((x << n) | (x >> (WORD_BITS - n))) & WORD_MASK if n else x


def add6(x: int, y: int) -> int:
    """Addition with any carry beyond the top bit discarded (mod 64)."""
    return (x + y) & WORD_MASK


def f6(x: int, y: int, z: int) -> int:
    return (x & y) | (~x & WORD_MASK & z)


def g6(x: int, y: int, z: int) -> int:
    return (x & z) | (y & (~z & WORD_MASK))


def h6(x: int, y: int, z: int) -> int:
    return x ^ y ^ z


def i6(x: int, y: int, z: int) -> int:
    return y ^ (x | (~z & WORD_MASK))


# Word6-typed operators.

def bitwise_not(x: Word6) -> Word6:
    return Word6(not6(x.value))


def bitwise_and(x: Word6, y: Word6) -> Word6:
    return Word6(and6(x.value, y.value))


def bitwise_or(x: Word6, y: Word6) -> Word6:
    return Word6(or6(x.value, y.value))


def bitwise_xor(x: Word6, y: Word6) -> Word6:
    return Word6(xor6(x.value, y.value))


def rotate_left(x: Word6, n: int) -> Word6:
    if n < 0:
        raise ValueError("shift count must be non-negative")
    return Word6(rol6(x.value, n))


def mod_add(x: Word6, y: Word6) -> Word6:
    return Word6(add6(x.value, y.value))


def logical_f(x: Word6, y: Word6, z: Word6) -> Word6:
    """F(X, Y, Z) = (X AND Y) OR (NOT(X) AND Z)."""
    return Word6(f6(x.value, y.value, z.value))


def logical_g(x: Word6, y: Word6, z: Word6) -> Word6:
    """G(X, Y, Z) = (X AND Z) OR (Y AND NOT(Z)).

    The middle term is read with an explicit AND, matching the classic MD5
    G function this operator set mirrors.
    """
    return Word6(g6(x.value, y.value, z.value))


def logical_h(x: Word6, y: Word6, z: Word6) -> Word6:
    """H(X, Y, Z) = X XOR Y XOR Z."""
    return Word6(h6(x.value, y.value, z.value))


def logical_i(x: Word6, y: Word6, z: Word6) -> Word6:
    """I(X, Y, Z) = Y XOR (X OR NOT(Z))."""
    return Word6(i6(x.value, y.value, z.value))
