"""Clustering and leaf ordering against brute-force references."""

import itertools
import random

import numpy as np
import pytest

from seqnamer.clustering import (
    Dendrogram,
    Merge,
    average_linkage_cluster,
    leaf_order_cost,
    optimal_leaf_order,
)
from seqnamer.errors import ClusteringInputError


def random_distance_matrix(rng, n, ties=False):
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.choice([0.2, 0.5, 0.8]) if ties else round(rng.random(), 3)
            d[i, j] = d[j, i] = v
    return d


def brute_average_linkage(d):
    """Reference agglomeration recomputing every mean linkage from scratch."""
    n = len(d)
    clusters = {i: [i] for i in range(n)}
    merges = []
    next_id = n
    while len(clusters) > 1:
        best = None
        for a, b in itertools.combinations(sorted(clusters), 2):
            total = 0.0
            for p in clusters[a]:
                for q in clusters[b]:
                    total += d[p][q]
            mean = total / (len(clusters[a]) * len(clusters[b]))
            key = (mean, a, b)
            if best is None or key < best:
                best = key
        mean, a, b = best
        merges.append((a, b, mean, len(clusters[a]) + len(clusters[b])))
        clusters[next_id] = clusters.pop(a) + clusters.pop(b)
        next_id += 1
    return merges


def exhaustive_min_flip_cost(tree, d):
    """Minimum adjacent-leaf cost over all 2^(n-1) child orientations."""
    n = tree.n_leaves
    best = None
    for flips in itertools.product((False, True), repeat=len(tree.merges)):

        def expand(node):
            if node < n:
                return [node]
            left, right = tree.children(node)
            if flips[node - n]:
                left, right = right, left
            return expand(left) + expand(right)

        cost = leaf_order_cost(expand(tree.root), d)
        if best is None or cost < best:
            best = cost
    return best


class TestAverageLinkage:
    def test_two_points(self):
        d = np.array([[0.0, 0.3], [0.3, 0.0]])
        tree = average_linkage_cluster(d)
        assert tree.merges == (Merge(0, 1, 0.3, 2),)

    def test_four_point_hand_instance(self):
        d = np.full((4, 4), 0.9)
        np.fill_diagonal(d, 0.0)
        d[0, 1] = d[1, 0] = 0.1
        d[2, 3] = d[3, 2] = 0.2
        tree = average_linkage_cluster(d)
        got = [(m.left, m.right, m.height) for m in tree.merges]
        assert got == [(0, 1, 0.1), (2, 3, 0.2), (4, 5, 0.9)]

    def test_all_ties_break_lexicographically(self):
        d = np.full((4, 4), 0.5)
        np.fill_diagonal(d, 0.0)
        tree = average_linkage_cluster(d)
        got = [(m.left, m.right) for m in tree.merges]
        assert got == [(0, 1), (2, 3), (4, 5)]

    @pytest.mark.parametrize("ties", [False, True])
    def test_merge_sequence_matches_brute_force(self, ties):
        rng = random.Random(41 if ties else 42)
        for _ in range(60):
            n = rng.randint(2, 7)
            d = random_distance_matrix(rng, n, ties=ties)
            tree = average_linkage_cluster(d)
            ref = brute_average_linkage(d.tolist())
            assert len(tree.merges) == len(ref)
            for got, (a, b, h, size) in zip(tree.merges, ref):
                assert (got.left, got.right, got.size) == (a, b, size)
                assert got.height == pytest.approx(h, abs=1e-12)

    def test_heights_non_decreasing(self):
        rng = random.Random(43)
        for _ in range(30):
            n = rng.randint(2, 12)
            tree = average_linkage_cluster(random_distance_matrix(rng, n))
            heights = [m.height for m in tree.merges]
            assert heights == sorted(heights)
            tree.validate()

    def test_single_leaf(self):
        tree = average_linkage_cluster(np.zeros((1, 1)))
        assert tree.n_leaves == 1 and tree.merges == ()
        assert tree.natural_leaf_order() == [0]

    def test_rejects_non_square(self):
        with pytest.raises(ClusteringInputError):
            average_linkage_cluster(np.zeros((2, 3)))

    def test_rejects_asymmetric(self):
        d = np.array([[0.0, 0.1], [0.2, 0.0]])
        with pytest.raises(ClusteringInputError):
            average_linkage_cluster(d)

    def test_rejects_nonzero_diagonal(self):
        d = np.array([[0.1, 0.2], [0.2, 0.0]])
        with pytest.raises(ClusteringInputError):
            average_linkage_cluster(d)

    def test_deterministic(self):
        rng = random.Random(44)
        d = random_distance_matrix(rng, 9)
        assert average_linkage_cluster(d) == average_linkage_cluster(d)


class TestDendrogram:
    def test_leaf_cover_and_children(self):
        d = np.full((3, 3), 0.5)
        np.fill_diagonal(d, 0.0)
        tree = average_linkage_cluster(d)
        assert sorted(tree.natural_leaf_order()) == [0, 1, 2]
        # first merge is (0, 1) -> node 3; the root then joins leaf 2 with it
        assert tree.children(tree.root) == (2, 3)

    def test_validate_catches_bad_leaf_cover(self):
        bad = Dendrogram(3, (Merge(0, 1, 0.1, 2), Merge(0, 3, 0.2, 3)))
        with pytest.raises(ValueError):
            bad.validate()

    def test_validate_catches_height_inversion(self):
        bad = Dendrogram(3, (Merge(0, 1, 0.5, 2), Merge(2, 3, 0.1, 3)))
        with pytest.raises(ValueError):
            bad.validate()


class TestOptimalLeafOrder:
    def test_two_leaves_lexicographic(self):
        d = np.array([[0.0, 0.7], [0.7, 0.0]])
        tree = average_linkage_cluster(d)
        assert optimal_leaf_order(tree, d) == [0, 1]

    def test_cost_equals_exhaustive_minimum(self):
        rng = random.Random(45)
        for _ in range(40):
            n = rng.randint(2, 10)
            d = random_distance_matrix(rng, n)
            tree = average_linkage_cluster(d)
            order = optimal_leaf_order(tree, d)
            assert sorted(order) == list(range(n))
            assert leaf_order_cost(order, d) == pytest.approx(
                exhaustive_min_flip_cost(tree, d), abs=1e-12
            )

    def test_cost_with_tied_distances(self):
        rng = random.Random(46)
        for _ in range(20):
            n = rng.randint(2, 9)
            d = random_distance_matrix(rng, n, ties=True)
            tree = average_linkage_cluster(d)
            order = optimal_leaf_order(tree, d)
            assert leaf_order_cost(order, d) == pytest.approx(
                exhaustive_min_flip_cost(tree, d), abs=1e-12
            )

    def test_never_worse_than_natural_order(self):
        rng = random.Random(47)
        for _ in range(25):
            n = rng.randint(2, 14)
            d = random_distance_matrix(rng, n)
            tree = average_linkage_cluster(d)
            ordered = leaf_order_cost(optimal_leaf_order(tree, d), d)
            natural = leaf_order_cost(tree.natural_leaf_order(), d)
            assert ordered <= natural + 1e-12

    def test_reversal_cost_invariance(self):
        # the adjacency sum is reversal-invariant (up to summation rounding)
        rng = random.Random(48)
        d = random_distance_matrix(rng, 8)
        tree = average_linkage_cluster(d)
        order = optimal_leaf_order(tree, d)
        assert leaf_order_cost(order, d) == pytest.approx(
            leaf_order_cost(order[::-1], d), rel=1e-12
        )

    def test_deterministic(self):
        rng = random.Random(49)
        d = random_distance_matrix(rng, 11, ties=True)
        tree = average_linkage_cluster(d)
        assert optimal_leaf_order(tree, d) == optimal_leaf_order(tree, d)

    def test_single_leaf(self):
        tree = average_linkage_cluster(np.zeros((1, 1)))
        assert optimal_leaf_order(tree, np.zeros((1, 1))) == [0]

    def test_shape_mismatch_rejected(self):
        d = np.zeros((3, 3))
        tree = average_linkage_cluster(np.zeros((2, 2)))
        with pytest.raises(ClusteringInputError):
            optimal_leaf_order(tree, d)
