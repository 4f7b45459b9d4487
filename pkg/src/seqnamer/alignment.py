"""Local-alignment sequence identity between hexamers.

Identity is defined as the number of matched positions in a best local
alignment divided by the hexamer length (6), so identical hexamers score 1.0
and hexamers with no positive-scoring local alignment score 0.0. When several
alignments reach the optimal score, the one with the most matches defines the
identity; this makes the value a pure function of the pair, independent of
traceback order.

Scoring is a named, versioned configuration recorded in library file headers;
the default mirrors the common nucleotide defaults (match +5, mismatch -4,
linear gap -8).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import SequenceAlphabetError
from .nucleotides import HEXAMER_LENGTH, all_hexamers, normalize_sequence

# Keys encode (score, matches) pairs as score * MATCH_BASE + matches so that a
# single integer max is the lexicographic max. Matches never exceed 6 < 8.
_MATCH_BASE = 8


@dataclass(frozen=True)
class AlignmentScoring:
    id: str
    match: int
    mismatch: int
    gap: int


DEFAULT_SCORING = AlignmentScoring(id="sw-nuc-m5x4g8-v1", match=5, mismatch=-4, gap=-8)

SCORINGS = {DEFAULT_SCORING.id: DEFAULT_SCORING}


def _check_hexamer(h: str) -> str:
    h = normalize_sequence(h)
    if len(h) != HEXAMER_LENGTH:
        raise SequenceAlphabetError(f"expected a hexamer, got {len(h)} characters")
    return h


def local_align_best(
    s1: Sequence[str], s2: Sequence[str], scoring: AlignmentScoring = DEFAULT_SCORING
) -> tuple[int, int]:
    """Best (score, matches) over all local alignments, lexicographically.

    The zero-score empty alignment is always available, so the score is
    never negative.
    """
    n1, n2 = len(s1), len(s2)
    diag_key = [
        [
            (scoring.match if a == b else scoring.mismatch) * _MATCH_BASE
            + (1 if a == b else 0)
            for b in s2
        ]
        for a in s1
    ]
    gap_key = scoring.gap * _MATCH_BASE
    best = 0
    prev = [0] * (n2 + 1)
    for i in range(1, n1 + 1):
        cur = [0] * (n2 + 1)
        row_diag = diag_key[i - 1]
        for j in range(1, n2 + 1):
            k = max(
                0,
                prev[j - 1] + row_diag[j - 1],
                prev[j] + gap_key,
                cur[j - 1] + gap_key,
            )
            cur[j] = k
            if k > best:
                best = k
        prev = cur
    return best // _MATCH_BASE, best % _MATCH_BASE


def local_align_identity(
    h1: str, h2: str, scoring: AlignmentScoring = DEFAULT_SCORING
) -> float:
    """Fraction of matched positions (over 6) in a best local alignment of two hexamers."""
    h1 = _check_hexamer(h1)
    h2 = _check_hexamer(h2)
    _, matches = local_align_best(h1, h2, scoring)
    return matches / HEXAMER_LENGTH


def build_match_counts(
    hexamers: Sequence[str] | None = None,
    scoring: AlignmentScoring = DEFAULT_SCORING,
    chunk: int = 512,
    verbose: bool = False,
) -> np.ndarray:
    """Matched-position counts for every hexamer pair, as an (n, n) uint8 array.

    Vectorized version of :func:`local_align_best`; the two paths are
    interchangeable and tests hold them equal.
    """
    if hexamers is None:
        hexamers = all_hexamers()
    n = len(hexamers)
    codes = np.array([[ord(c) for c in h] for h in hexamers], dtype=np.int16)
    L = codes.shape[1]

    diag_match = np.int16(scoring.match * _MATCH_BASE + 1)
    diag_mismatch = np.int16(scoring.mismatch * _MATCH_BASE)
    gap_key = np.int16(scoring.gap * _MATCH_BASE)

    out = np.empty((n, n), dtype=np.uint8)
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        rows = codes[start:stop]  # (m, L)
        m = rows.shape[0]
        best = np.zeros((m, n), dtype=np.int16)
        prev = np.zeros((L + 1, m, n), dtype=np.int16)
        cur = np.zeros_like(prev)
        for i in range(1, L + 1):
            cur[0] = 0
            for j in range(1, L + 1):
                eq = rows[:, i - 1 : i] == codes[None, :, j - 1]  # (m, n)
                diag = prev[j - 1] + np.where(eq, diag_match, diag_mismatch)
                up = prev[j] + gap_key
                left = cur[j - 1] + gap_key
                cell = np.maximum(np.maximum(diag, up), left)
                np.maximum(cell, 0, out=cell)
                cur[j] = cell
                np.maximum(best, cell, out=best)
            prev, cur = cur, prev
        out[start:stop] = (best % _MATCH_BASE).astype(np.uint8)
        if verbose:
            print(f"similarity matrix: rows {stop}/{n}", flush=True)
    return out


def build_similarity_matrix(
    hexamers: Sequence[str] | None = None,
    scoring: AlignmentScoring = DEFAULT_SCORING,
    verbose: bool = False,
) -> np.ndarray:
    """Symmetric (n, n) float64 matrix of pairwise identities in [0, 1]."""
    counts = build_match_counts(hexamers, scoring, verbose=verbose)
    return counts.astype(np.float64) / HEXAMER_LENGTH


def distance_matrix(similarity: np.ndarray) -> np.ndarray:
    """Distance = 1 - identity."""
    return 1.0 - similarity
