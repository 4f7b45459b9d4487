"""Nucleotide alphabet helpers: normalization and hexamer enumeration."""

from __future__ import annotations

import itertools

from .errors import SequenceAlphabetError

ALPHABET = "ACGU"
HEXAMER_LENGTH = 6
NUM_HEXAMERS = 4 ** HEXAMER_LENGTH  # 4096

_NORMALIZE = str.maketrans("acgutT", "ACGUUU")
_VALID = frozenset(ALPHABET)


def normalize_sequence(seq: str) -> str:
    """Uppercase, map T to U, and reject anything outside the nucleotide alphabet.

    DNA-alphabet submissions are common, so T/t are accepted and folded to U.
    """
    if not isinstance(seq, str):
        raise SequenceAlphabetError(f"expected a string, got {type(seq).__name__}")
    out = seq.translate(_NORMALIZE)
    if not out:
        raise SequenceAlphabetError("empty sequence")
    bad = set(out) - _VALID
    if bad:
        raise SequenceAlphabetError(
            f"invalid characters {sorted(bad)!r}; expected only A/C/G/U (or T)"
        )
    return out


def all_hexamers() -> tuple[str, ...]:
    """All 4096 hexamers over ACGU in lexicographic order (A < C < G < U)."""
    return _ALL_HEXAMERS


_ALL_HEXAMERS = tuple(
    "".join(p) for p in itertools.product(ALPHABET, repeat=HEXAMER_LENGTH)
)

_HEXAMER_INDEX = {h: i for i, h in enumerate(_ALL_HEXAMERS)}


def hexamer_index(h: str) -> int:
    """Lexicographic rank of a hexamer; raises for non-hexamers."""
    h = normalize_sequence(h)
    if len(h) != HEXAMER_LENGTH:
        raise SequenceAlphabetError(f"expected a 6-mer, got {len(h)} characters")
    return _HEXAMER_INDEX[h]
