"""Compact 24-bit message digest over 96-bit blocks, and its name rendering.

The pipeline: encode a nucleotide sequence at 6 bits per character, pad to a
multiple of 96 bits with a 16-bit length trailer, fold a 64-operation
compression over the blocks, then map the final four-word state into a
three-letter/two-digit code drawn from a 1,757,600-slot namespace.

The character encoder is a named, versioned strategy: names generated under
different encoders are not comparable, so the encoder id travels in library
files and report headers.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bits import BitString, Word6, add6, f6, g6, h6, i6, rol6
from .errors import (
    BlockSizeError,
    MessageTooLongError,
    NameParseError,
    SequenceAlphabetError,
    SequenceTooLongError,
)
from .nucleotides import ALPHABET

BLOCK_BITS = 96
WORDS_PER_BLOCK = 16
LENGTH_FIELD_BITS = 16
MAX_MESSAGE_BITS = 1 << LENGTH_FIELD_BITS

ALPHABET_SIZE = 26
NAMESPACE_SIZE = ALPHABET_SIZE**3 * 100  # 1,757,600

MAX_SEQUENCE_LENGTH = 60
WARN_SEQUENCE_LENGTH = 40


class LongSequenceWarning(UserWarning):
    """The digest is tuned for short sequences; above 40 nt quality is untested."""


@dataclass(frozen=True)
class SequenceEncoder:
    """Named strategy mapping nucleotide characters to 6-bit codes."""

    id: str
    codes: dict[str, int]

    def encode_char(self, c: str) -> int:
        return self.codes[c]


# Default: the low six bits of each character's ASCII value
# (A -> 000001, C -> 000011, G -> 000111, U -> 010101).
DEFAULT_ENCODER = SequenceEncoder(
    id="ascii-low6-v1",
    codes={c: ord(c) & 0x3F for c in ALPHABET},
)

ENCODERS = {DEFAULT_ENCODER.id: DEFAULT_ENCODER}


@dataclass(frozen=True)
class DigestState:
    """The four 6-bit process words; a|b|c|d concatenated is the 24-bit state."""

    a: Word6
    b: Word6
    c: Word6
    d: Word6

    @classmethod
    def initial(cls) -> "DigestState":
        return cls(Word6(0b000000), Word6(0b010000), Word6(0b100000), Word6(0b110000))

    def words(self) -> tuple[int, int, int, int]:
        return (self.a.value, self.b.value, self.c.value, self.d.value)

    def to_bits(self) -> BitString:
        return self.a.to_bits() + self.b.to_bits() + self.c.to_bits() + self.d.to_bits()


# T[i] is the integer part of 64 * abs(sin(i)), i in radians, for i = 1..64.
SINE_TABLE = tuple(int(64 * abs(math.sin(i))) for i in range(1, 65))

# The 64 scheduled operations, row for row. Each entry is
# (w, x, y, z, xid, shift, tid): state-slot roles (0=a, 1=b, 2=c, 3=d), the
# block-word index, the rotation count, and the 1-based sine-table index.
# Rotation counts above 6 are reduced modulo 6 when applied.
ROUND_SCHEDULE = (
    # round 1 (F)
    (0, 1, 2, 3, 0, 7, 1),
    (3, 0, 1, 2, 1, 12, 2),
    (2, 3, 0, 1, 2, 17, 3),
    (1, 2, 3, 0, 3, 22, 4),
    (0, 1, 2, 3, 4, 7, 5),
    (3, 0, 1, 2, 5, 12, 6),
    (2, 3, 0, 1, 6, 17, 7),
    (1, 2, 3, 0, 7, 22, 8),
    (0, 1, 2, 3, 8, 7, 9),
    (3, 0, 1, 2, 9, 12, 10),
    (2, 3, 0, 1, 10, 17, 11),
    (1, 2, 3, 0, 11, 22, 12),
    (0, 1, 2, 3, 12, 7, 13),
    (3, 0, 1, 2, 13, 12, 14),
    (2, 3, 0, 1, 14, 17, 15),
    (1, 2, 3, 0, 15, 22, 16),
    # round 2 (G)
    (0, 1, 2, 3, 1, 5, 17),
    (3, 0, 1, 2, 6, 9, 18),
    (2, 3, 0, 1, 11, 14, 19),
    (1, 2, 3, 0, 0, 20, 20),
    (0, 1, 2, 3, 5, 5, 21),
    (3, 0, 1, 2, 10, 9, 22),
    (2, 3, 0, 1, 15, 14, 23),
    (1, 2, 3, 0, 4, 20, 24),
    (0, 1, 2, 3, 9, 5, 25),
    (3, 0, 1, 2, 14, 9, 26),
    (2, 3, 0, 1, 3, 14, 27),
    (1, 2, 3, 0, 8, 20, 28),
    (0, 1, 2, 3, 13, 5, 29),
    (3, 0, 1, 2, 2, 9, 30),
    (2, 3, 0, 1, 7, 14, 31),
    (1, 2, 3, 0, 12, 20, 32),
    # round 3 (H)
    (0, 1, 2, 3, 5, 4, 33),
    (3, 0, 1, 2, 8, 11, 34),
    (2, 3, 0, 1, 11, 16, 35),
    (1, 2, 3, 0, 14, 23, 36),
    (0, 1, 2, 3, 1, 4, 37),
    (3, 0, 1, 2, 4, 11, 38),
    (2, 3, 0, 1, 7, 16, 39),
    (1, 2, 3, 0, 10, 23, 40),
    (0, 1, 2, 3, 13, 4, 41),
    (3, 0, 1, 2, 0, 11, 42),
    (2, 3, 0, 1, 3, 16, 43),
    (1, 2, 3, 0, 6, 23, 44),
    (0, 1, 2, 3, 9, 4, 45),
    (3, 0, 1, 2, 12, 11, 46),
    (2, 3, 0, 1, 15, 16, 47),
    (1, 2, 3, 0, 2, 23, 48),
    # round 4 (I)
    (0, 1, 2, 3, 0, 6, 49),
    (3, 0, 1, 2, 7, 10, 50),
    (2, 3, 0, 1, 14, 15, 51),
    (1, 2, 3, 0, 5, 21, 52),
    (0, 1, 2, 3, 12, 6, 53),
    (3, 0, 1, 2, 3, 10, 54),
    (2, 3, 0, 1, 10, 15, 55),
    (1, 2, 3, 0, 1, 21, 56),
    (0, 1, 2, 3, 8, 6, 57),
    (3, 0, 1, 2, 15, 10, 58),
    (2, 3, 0, 1, 6, 15, 59),
    (1, 2, 3, 0, 13, 21, 60),
    (0, 1, 2, 3, 4, 6, 61),
    (3, 0, 1, 2, 11, 10, 62),
    (2, 3, 0, 1, 2, 15, 63),
    (1, 2, 3, 0, 9, 21, 64),
)

_ROUND_FUNCTIONS = (f6, g6, h6, i6)

# Flattened schedule for the scalar hot path: (fn, w, x, y, z, xid, shift, T value).
_STEPS = tuple(
    (_ROUND_FUNCTIONS[step // 16], w, x, y, z, xid, sb, SINE_TABLE[tid - 1])
    for step, (w, x, y, z, xid, sb, tid) in enumerate(ROUND_SCHEDULE)
)


def encode_sequence(seq: str, encoder: SequenceEncoder = DEFAULT_ENCODER) -> BitString:
    """Encode a normalized sequence at 6 bits per character, in order."""
    if not seq:
        raise SequenceAlphabetError("empty sequence")
    bits: list[int] = []
    for c in seq:
        code = encoder.codes.get(c)
        if code is None:
            raise SequenceAlphabetError(
                f"character {c!r} not encodable; normalize to A/C/G/U first"
            )
        bits.extend((code >> (5 - i)) & 1 for i in range(6))
    return BitString(bits)


def pad_message(m: BitString) -> BitString:
    """Append '1', zeros to reach 80 mod 96, then the 16-bit original length.

    The '1' is always appended, so padding is never empty; the result length
    is a multiple of 96.
    """
    n = len(m)
    if n < 1:
        raise ValueError("cannot pad an empty message")
    if n >= MAX_MESSAGE_BITS:
        raise MessageTooLongError(
            f"message of {n} bits does not fit the 16-bit length field"
        )
    zeros = (80 - (n + 1)) % BLOCK_BITS
    return m + BitString([1] + [0] * zeros) + BitString.from_int(n, LENGTH_FIELD_BITS)


def _compress_words(state: tuple[int, int, int, int], x: Sequence[int]) -> tuple[int, int, int, int]:
    """One block of the compression on plain ints (hot path)."""
    s = list(state)
    for fn, w, xi, yi, zi, xid, sb, t in _STEPS:
        s[w] = add6(s[xi], rol6(add6(add6(s[w], fn(s[xi], s[yi], s[zi])), add6(x[xid], t)), sb))
    return (
        add6(s[0], state[0]),
        add6(s[1], state[1]),
        add6(s[2], state[2]),
        add6(s[3], state[3]),
    )


def split_blocks(padded: BitString) -> list[BitString]:
    if len(padded) % BLOCK_BITS != 0:
        raise BlockSizeError(f"padded length {len(padded)} is not a multiple of 96")
    return [padded[i : i + BLOCK_BITS] for i in range(0, len(padded), BLOCK_BITS)]


def block_words(block: BitString) -> tuple[int, ...]:
    """Split a 96-bit block into sixteen 6-bit words, left to right."""
    if len(block) != BLOCK_BITS:
        raise BlockSizeError(f"block must be exactly 96 bits, got {len(block)}")
    return tuple(block[i : i + 6].to_int() for i in range(0, BLOCK_BITS, 6))


def compress_block(state: DigestState, block: BitString) -> DigestState:
    """Apply the 64 scheduled operations, then add the saved state back word-wise."""
    out = _compress_words(state.words(), block_words(block))
    return DigestState(Word6(out[0]), Word6(out[1]), Word6(out[2]), Word6(out[3]))


def digest(seq: str, encoder: SequenceEncoder = DEFAULT_ENCODER) -> BitString:
    """24-bit digest of a normalized sequence: encode, pad, compress, concatenate."""
    if len(seq) > MAX_SEQUENCE_LENGTH:
        raise SequenceTooLongError(
            f"sequence of {len(seq)} nt exceeds the {MAX_SEQUENCE_LENGTH} nt limit"
        )
    if len(seq) > WARN_SEQUENCE_LENGTH:
        warnings.warn(
            f"sequence of {len(seq)} nt is above {WARN_SEQUENCE_LENGTH} nt; "
            "the digest is tuned for shorter inputs",
            LongSequenceWarning,
            stacklevel=2,
        )
    padded = pad_message(encode_sequence(seq, encoder))
    words = DigestState.initial().words()
    w = [padded[i : i + 6].to_int() for i in range(0, len(padded), 6)]
    for start in range(0, len(w), WORDS_PER_BLOCK):
        words = _compress_words(words, w[start : start + WORDS_PER_BLOCK])
    return DigestState(*(Word6(v) for v in words)).to_bits()


@dataclass(frozen=True)
class NameCode:
    """Three letters (A-Z as 0-25) plus a two-digit field in [0, 99]."""

    letters: tuple[int, int, int]
    digits: int

    def __post_init__(self):
        for v in self.letters:
            if not 0 <= v < ALPHABET_SIZE:
                raise ValueError(f"letter index out of range: {v}")
        if not 0 <= self.digits < 100:
            raise ValueError(f"digit field out of range: {self.digits}")

    @classmethod
    def from_value(cls, value: int) -> "NameCode":
        if not 0 <= value < NAMESPACE_SIZE:
            raise ValueError(f"value out of namespace range: {value}")
        l1, rest = divmod(value, ALPHABET_SIZE * ALPHABET_SIZE * 100)
        l2, rest = divmod(rest, ALPHABET_SIZE * 100)
        l3, digits = divmod(rest, 100)
        return cls((l1, l2, l3), digits)

    @property
    def value(self) -> int:
        l1, l2, l3 = self.letters
        return ((l1 * ALPHABET_SIZE + l2) * ALPHABET_SIZE + l3) * 100 + self.digits

    def render(self) -> str:
        """First letter uppercase, next two lowercase, digits without a leading zero."""
        l1, l2, l3 = self.letters
        return f"{chr(65 + l1)}{chr(97 + l2)}{chr(97 + l3)}{self.digits}"

    _PATTERN = re.compile(r"^([A-Z])([a-z]{2})(0|[1-9][0-9]?)$")

    @classmethod
    def parse(cls, text: str) -> "NameCode":
        m = cls._PATTERN.match(text)
        if m is None:
            raise NameParseError(f"not a valid name code: {text!r}")
        upper, lower, digits = m.groups()
        return cls(
            (ord(upper) - 65, ord(lower[0]) - 97, ord(lower[1]) - 97),
            int(digits),
        )

    def __str__(self) -> str:
        return self.render()


def state_number(final: BitString) -> int:
    """Integer reading of the 24-bit state: bit i (0 = start of word a) has weight 2^i."""
    if len(final) != 24:
        raise ValueError(f"final state must be 24 bits, got {len(final)}")
    return sum(b << i for i, b in enumerate(final))


def state_to_name(final: BitString) -> NameCode:
    return NameCode.from_value(state_number(final) % NAMESPACE_SIZE)


def name_field(seq: str, encoder: SequenceEncoder = DEFAULT_ENCODER) -> NameCode:
    """Digest a normalized sequence and render the namespace code."""
    return state_to_name(digest(seq, encoder))


# Vectorized batch path. Used by the statistical reports; must agree exactly
# with the scalar digest (covered by tests).

_REV6 = np.array([int(format(v, "06b")[::-1], 2) for v in range(64)], dtype=np.int64)
_WORD_BITS_TABLE = np.array(
    [[(v >> (5 - i)) & 1 for i in range(6)] for v in range(64)], dtype=np.uint8
)
_BIT_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)


def sequences_to_codes(seqs: Iterable[str]) -> np.ndarray:
    """(n, L) array of alphabet indices for equal-length normalized sequences."""
    table = {c: i for i, c in enumerate(ALPHABET)}
    rows = [[table[c] for c in s] for s in seqs]
    lengths = {len(r) for r in rows}
    if len(lengths) != 1:
        raise ValueError("batch digest requires equal-length sequences")
    return np.array(rows, dtype=np.uint8)


def digest_numbers(codes: np.ndarray, encoder: SequenceEncoder = DEFAULT_ENCODER) -> np.ndarray:
    """State numbers for a batch of equal-length sequences.

    ``codes`` holds alphabet indices (0=A, 1=C, 2=G, 3=U), one row per
    sequence. Returns the 24-bit state number of each row's digest.
    """
    n, length = codes.shape
    if length > MAX_SEQUENCE_LENGTH:
        raise SequenceTooLongError(f"{length} nt exceeds the {MAX_SEQUENCE_LENGTH} nt limit")
    nt_words = np.array([encoder.codes[c] for c in ALPHABET], dtype=np.uint8)

    msg_bits = 6 * length
    zeros = (80 - (msg_bits + 1)) % BLOCK_BITS
    total_bits = msg_bits + 1 + zeros + LENGTH_FIELD_BITS

    bits = np.zeros((n, total_bits), dtype=np.uint8)
    bits[:, :msg_bits] = _WORD_BITS_TABLE[nt_words[codes]].reshape(n, msg_bits)
    bits[:, msg_bits] = 1
    length_field = np.array(
        [(msg_bits >> (15 - i)) & 1 for i in range(16)], dtype=np.uint8
    )
    bits[:, -LENGTH_FIELD_BITS:] = length_field

    words = bits.reshape(n, total_bits // 6, 6).dot(_BIT_WEIGHTS).astype(np.int64)

    state = [np.full(n, v, dtype=np.int64) for v in DigestState.initial().words()]
    vec_fns = (
        lambda x, y, z: (x & y) | (~x & 63 & z),
        lambda x, y, z: (x & z) | (y & (~z & 63)),
        lambda x, y, z: x ^ y ^ z,
        lambda x, y, z: y ^ (x | (~z & 63)),
    )
    for start in range(0, words.shape[1], WORDS_PER_BLOCK):
        block = words[:, start : start + WORDS_PER_BLOCK]
        saved = [s.copy() for s in state]
        for step, (w, xi, yi, zi, xid, sb, tid) in enumerate(ROUND_SCHEDULE):
            fn = vec_fns[step // 16]
            t = (state[w] + fn(state[xi], state[yi], state[zi]) + block[:, xid] + SINE_TABLE[tid - 1]) & 63
            r = sb % 6
            if r:
                t = ((t << r) | (t >> (6 - r))) & 63
            state[w] = (state[xi] + t) & 63
        state = [(s + sv) & 63 for s, sv in zip(state, saved)]

    a, b, c, d = state
    return _REV6[a] + (_REV6[b] << 6) + (_REV6[c] << 12) + (_REV6[d] << 18)
