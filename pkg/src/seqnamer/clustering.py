"""Average-linkage hierarchical clustering and optimal leaf ordering.

Both passes are written for bit-reproducible output: all candidate scans run
in a fixed order and every tie is broken on cluster/leaf indices, so two
builds over the same input produce identical trees and identical leaf orders.
"""

from __future__ import annotations

import sys
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ClusteringInputError


@dataclass(frozen=True)
class Merge:
    """One agglomeration step: child node ids, merge height, merged size."""

    left: int
    right: int
    height: float
    size: int


@dataclass(frozen=True)
class Dendrogram:
    """Merge tree over ``n_leaves`` observations.

    Node ids follow the usual convention: ids below ``n_leaves`` are leaves,
    and id ``n_leaves + t`` is the cluster created by ``merges[t]``.
    """

    n_leaves: int
    merges: tuple[Merge, ...]

    @property
    def root(self) -> int:
        return self.n_leaves + len(self.merges) - 1 if self.merges else 0

    def children(self, node: int) -> tuple[int, int]:
        m = self.merges[node - self.n_leaves]
        return m.left, m.right

    def leaves_of(self, node: int) -> list[int]:
        """Leaf ids under ``node`` in left-to-right subtree order (iterative)."""
        out: list[int] = []
        stack = [node]
        while stack:
            x = stack.pop()
            if x < self.n_leaves:
                out.append(x)
            else:
                left, right = self.children(x)
                stack.append(right)
                stack.append(left)
        return out

    def natural_leaf_order(self) -> list[int]:
        return self.leaves_of(self.root)

    def validate(self, height_tol: float = 1e-9) -> None:
        """Check leaf coverage and height monotonicity along root paths."""
        leaves = self.natural_leaf_order()
        if sorted(leaves) != list(range(self.n_leaves)):
            raise ValueError("dendrogram does not cover every leaf exactly once")
        for t, m in enumerate(self.merges):
            for child in (m.left, m.right):
                if child >= self.n_leaves:
                    child_h = self.merges[child - self.n_leaves].height
                    if m.height < child_h - height_tol * max(1.0, abs(child_h)):
                        raise ValueError(
                            f"merge {t} at height {m.height} below child height {child_h}"
                        )


def _check_distance_matrix(dist: np.ndarray) -> np.ndarray:
    d = np.asarray(dist, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ClusteringInputError(f"distance matrix must be square, got shape {d.shape}")
    if not np.array_equal(d, d.T):
        raise ClusteringInputError("distance matrix must be symmetric")
    if np.any(np.diag(d) != 0.0):
        raise ClusteringInputError("distance matrix must have a zero diagonal")
    return d


def average_linkage_cluster(dist: np.ndarray, verbose: bool = False) -> Dendrogram:
    """UPGMA agglomeration with index-lexicographic tie-breaking.

    At every step the pair of clusters with the smallest mean inter-cluster
    distance is merged; among exactly tied pairs the one with the smallest
    (lower id, higher id) wins. Leaves are ids 0..n-1 and the cluster made by
    step t gets id n + t.
    """
    d = _check_distance_matrix(dist)
    n = d.shape[0]
    if n == 0:
        raise ClusteringInputError("cannot cluster an empty matrix")
    merges: list[Merge] = []
    if n == 1:
        return Dendrogram(1, ())

    m = d.copy()
    np.fill_diagonal(m, np.inf)
    ids = np.arange(n, dtype=np.int64)
    sizes = np.ones(n, dtype=np.float64)
    last_height = -np.inf

    for step in range(n - 1):
        v = m.min()
        rows, cols = np.nonzero(m == v)
        pair_keys = np.minimum(ids[rows], ids[cols]) * (2 * n) + np.maximum(
            ids[rows], ids[cols]
        )
        best = int(np.argmin(pair_keys))
        pi, pj = int(rows[best]), int(cols[best])
        if ids[pi] > ids[pj]:
            pi, pj = pj, pi

        if v < last_height:
            warnings.warn(
                f"average-linkage height inversion at step {step}: {v} < {last_height}"
            )
        last_height = v

        new_size = sizes[pi] + sizes[pj]
        merges.append(Merge(int(ids[pi]), int(ids[pj]), float(v), int(new_size)))

        merged_row = (sizes[pi] * m[pi, :] + sizes[pj] * m[pj, :]) / new_size
        m[pi, :] = merged_row
        m[:, pi] = merged_row
        m[pi, pi] = np.inf
        m[pj, :] = np.inf
        m[:, pj] = np.inf
        sizes[pi] = new_size
        sizes[pj] = 0.0
        ids[pi] = n + step
        if verbose and (step + 1) % 256 == 0:
            print(f"clustering: merge {step + 1}/{n - 1}", flush=True)

    return Dendrogram(n, tuple(merges))


def leaf_order_cost(order: Sequence[int], dist: np.ndarray) -> float:
    """Sum of distances between adjacent leaves."""
    d = np.asarray(dist, dtype=np.float64)
    o = np.asarray(order, dtype=np.int64)
    return float(d[o[:-1], o[1:]].sum())


def _postorder(tree: Dendrogram) -> list[int]:
    """Internal node ids in children-before-parent order (iterative)."""
    out: list[int] = []
    stack: list[tuple[int, bool]] = [(tree.root, False)]
    while stack:
        node, expanded = stack.pop()
        if node < tree.n_leaves:
            continue
        if expanded:
            out.append(node)
        else:
            stack.append((node, True))
            left, right = tree.children(node)
            stack.append((right, False))
            stack.append((left, False))
    return out


def optimal_leaf_order(
    tree: Dendrogram, dist: np.ndarray, verbose: bool = False
) -> list[int]:
    """Leaf order minimizing total adjacent-leaf distance over all child flips.

    Subtree-pair dynamic programming: for every internal node and every
    (leftmost, rightmost) leaf pair drawn from opposite children, the minimal
    cost of arranging the subtree between those endpoints is tabulated
    bottom-up, then the order is reconstructed top-down. Ties are resolved
    toward smaller leaf ids (smallest endpoint pair at the root, smallest
    junction pair at every split).
    """
    d = np.asarray(dist, dtype=np.float64)
    n = tree.n_leaves
    if d.shape != (n, n):
        raise ClusteringInputError(
            f"distance matrix shape {d.shape} does not match {n} leaves"
        )
    if n == 1:
        return [0]

    order_nodes = _postorder(tree)
    leaves: dict[int, np.ndarray] = {}
    blocks: dict[int, np.ndarray] = {}  # node -> (|left leaves| x |right leaves|) costs

    def square_table(node: int) -> np.ndarray:
        """Endpoint-cost table over (leaves, leaves) with +inf on invalid pairs."""
        if node < n:
            return np.zeros((1, 1))
        left, right = tree.children(node)
        a, b = len(leaves[left]), len(leaves[right])
        sq = np.full((a + b, a + b), np.inf)
        sq[:a, a:] = blocks[node]
        sq[a:, :a] = blocks[node].T
        return sq

    for node in order_nodes:
        left, right = tree.children(node)
        for child in (left, right):
            if child < n:
                leaves[child] = np.array([child], dtype=np.int64)
        la, lb = leaves[left], leaves[right]
        sq_l = square_table(left)
        sq_r = square_table(right)
        d_lr = d[np.ix_(la, lb)]

        # min-plus products: t[p, m] = min_k sq_l[p, k] + d_lr[k, m]
        t = np.full((len(la), len(lb)), np.inf)
        for k in range(len(la)):
            np.minimum(t, sq_l[:, k : k + 1] + d_lr[k, :], out=t)
        block = np.full((len(la), len(lb)), np.inf)
        for mth in range(len(lb)):
            np.minimum(block, t[:, mth : mth + 1] + sq_r[mth, :], out=block)

        leaves[node] = np.concatenate([la, lb])
        blocks[node] = block
        if verbose and len(leaves[node]) % 512 == 0:
            print(f"leaf ordering: node size {len(leaves[node])}/{n}", flush=True)

    # Root endpoints: smallest (start, end) leaf-id pair among minimum-cost
    # placements, considering both orientations.
    root = tree.root
    root_block = blocks[root]
    best_cost = root_block.min()
    la, lb = leaves[tree.children(root)[0]], leaves[tree.children(root)[1]]
    rows, cols = np.nonzero(root_block == best_cost)
    candidates = []
    for p, q in zip(rows, cols):
        i, j = int(la[p]), int(lb[q])
        candidates.append((i, j))
        candidates.append((j, i))
    start, end = min(candidates)

    out: list[int] = []

    def build(node: int, i: int, j: int) -> list[int]:
        if node < n:
            return [node]
        left, right = tree.children(node)
        la, lb = leaves[left], leaves[right]
        pos_a = {int(x): idx for idx, x in enumerate(la)}
        pos_b = {int(x): idx for idx, x in enumerate(lb)}
        if i in pos_b and j in pos_a:
            return build(node, j, i)[::-1]
        p, q = pos_a[i], pos_b[j]
        target = blocks[node][p, q]
        sq_l = square_table(left)
        sq_r = square_table(right)
        d_lr = d[np.ix_(la, lb)]
        # Same association order as the forward pass, so equality is exact.
        cand = (sq_l[p, :, None] + d_lr) + sq_r[:, q][None, :]
        ks, ms = np.nonzero(cand == target)
        k, mth = min(
            ((int(la[kk]), int(lb[mm])) for kk, mm in zip(ks, ms)),
        )
        left_part = build(left, i, k)
        right_part = build(right, mth, j)
        return left_part + right_part

    # Recursion depth equals tree depth; lift the limit for degenerate chains.
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 2 * n + 100))
    try:
        out = build(root, start, end)
    finally:
        sys.setrecursionlimit(old_limit)
    return out
