"""Local alignment identity: oracles, goldens, and matrix consistency."""

import random
from functools import lru_cache

import numpy as np
import pytest

from seqnamer.alignment import (
    DEFAULT_SCORING,
    AlignmentScoring,
    build_match_counts,
    build_similarity_matrix,
    distance_matrix,
    local_align_best,
    local_align_identity,
)
from seqnamer.errors import SequenceAlphabetError
from seqnamer.nucleotides import all_hexamers


def suffix_oracle(s1, s2, scoring=DEFAULT_SCORING):
    """Best (score, matches) over all local alignments, via a suffix-anchored
    memoized recursion (mirror formulation of the production DP)."""

    @lru_cache(maxsize=None)
    def go(i, j):
        best = (0, 0)
        if i < len(s1) and j < len(s2):
            eq = s1[i] == s2[j]
            sc, mt = go(i + 1, j + 1)
            cand = (
                sc + (scoring.match if eq else scoring.mismatch),
                mt + (1 if eq else 0),
            )
            best = max(best, cand)
        if i < len(s1):
            sc, mt = go(i + 1, j)
            best = max(best, (sc + scoring.gap, mt))
        if j < len(s2):
            sc, mt = go(i, j + 1)
            best = max(best, (sc + scoring.gap, mt))
        return best

    return max(go(i, j) for i in range(len(s1) + 1) for j in range(len(s2) + 1))


def enumerate_all_paths(s1, s2, scoring=DEFAULT_SCORING):
    """Literal enumeration of every alignment path (small inputs only)."""
    best = (0, 0)
    n1, n2 = len(s1), len(s2)

    def walk(i, j, score, matches):
        nonlocal best
        best = max(best, (score, matches))
        if i < n1 and j < n2:
            eq = s1[i] == s2[j]
            walk(
                i + 1,
                j + 1,
                score + (scoring.match if eq else scoring.mismatch),
                matches + (1 if eq else 0),
            )
        if i < n1:
            walk(i + 1, j, score + scoring.gap, matches)
        if j < n2:
            walk(i, j + 1, score + scoring.gap, matches)

    for i in range(n1 + 1):
        for j in range(n2 + 1):
            walk(i, j, 0, 0)
    return best


class TestIdentityGoldens:
    def test_self_identity(self):
        for h in ("AAAAAA", "ACGUAC", "UUUUUU", "GCGCGC"):
            assert local_align_identity(h, h) == 1.0

    def test_disjoint_alphabets_score_zero(self):
        assert local_align_identity("AAAAAA", "CCCCCC") == 0.0

    def test_single_mismatch(self):
        assert local_align_identity("AAAAAA", "AAAAAC") == pytest.approx(5 / 6)
        assert suffix_oracle("AAAAAA", "AAAAAC") == (25, 5)

    def test_accepts_dna_style_input(self):
        assert local_align_identity("AAAAAT", "AAAAAU") == 1.0

    @pytest.mark.parametrize("bad", ["AAAAA", "AAAAAAA", "AXGUAC", ""])
    def test_rejects_non_hexamers(self, bad):
        with pytest.raises(SequenceAlphabetError):
            local_align_identity(bad, "ACGUAC")


class TestAgainstOracles:
    def test_random_hexamer_pairs_match_suffix_oracle(self):
        rng = random.Random(31)
        hx = all_hexamers()
        for _ in range(300):
            a, b = rng.choice(hx), rng.choice(hx)
            assert local_align_best(a, b) == suffix_oracle(a, b), (a, b)

    def test_short_strings_match_full_enumeration(self):
        rng = random.Random(32)
        for _ in range(30):
            a = "".join(rng.choice("ACGU") for _ in range(rng.randint(1, 4)))
            b = "".join(rng.choice("ACGU") for _ in range(rng.randint(1, 4)))
            expected = enumerate_all_paths(a, b)
            assert local_align_best(a, b) == expected, (a, b)
            assert suffix_oracle(a, b) == expected, (a, b)

    def test_one_hexamer_pair_against_full_enumeration(self):
        a, b = "ACGUAC", "CGUACG"
        assert local_align_best(a, b) == enumerate_all_paths(a, b)

    def test_symmetry(self):
        rng = random.Random(33)
        hx = all_hexamers()
        for _ in range(100):
            a, b = rng.choice(hx), rng.choice(hx)
            assert local_align_best(a, b) == local_align_best(b, a)


class TestSimilarityMatrix:
    SUBSET = 48

    def _subset(self):
        rng = random.Random(34)
        return rng.sample(all_hexamers(), self.SUBSET)

    def test_matches_scalar_recompute(self):
        sub = self._subset()
        counts = build_match_counts(sub)
        for i, a in enumerate(sub):
            for j, b in enumerate(sub):
                assert counts[i, j] == local_align_best(a, b)[1]

    def test_chunking_does_not_change_results(self):
        sub = self._subset()
        assert np.array_equal(
            build_match_counts(sub, chunk=7), build_match_counts(sub, chunk=512)
        )

    def test_similarity_properties(self):
        sub = self._subset()
        sim = build_similarity_matrix(sub)
        assert np.array_equal(sim, sim.T)
        assert np.all(np.diag(sim) == 1.0)
        assert sim.min() >= 0.0 and sim.max() <= 1.0

    def test_distance_is_one_minus_identity(self):
        sub = self._subset()
        sim = build_similarity_matrix(sub)
        d = distance_matrix(sim)
        assert np.allclose(d, 1.0 - sim)
        assert np.all(np.diag(d) == 0.0)


class TestScoringConfig:
    def test_default_is_named_and_versioned(self):
        assert DEFAULT_SCORING.id == "sw-nuc-m5x4g8-v1"
        assert (DEFAULT_SCORING.match, DEFAULT_SCORING.mismatch, DEFAULT_SCORING.gap) == (
            5,
            -4,
            -8,
        )

    def test_alternative_scoring_changes_results(self):
        strict = AlignmentScoring(id="test", match=1, mismatch=-10, gap=-10)
        score, matches = local_align_best("ACGUAC", "AGGUAC", strict)
        assert matches == 4  # contiguous GUAC run only
        assert local_align_best("ACGUAC", "AGGUAC")[1] == 5
