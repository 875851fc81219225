"""Colexicographic ranking/unranking of k-subsets (combinatorial number system).

Ranks of subsets of [0, m) are a prefix of the ranks for [0, m+1), so the
same rank stays valid when the vertex set grows.
"""

from __future__ import annotations

from math import comb

import numpy as np


def validate_subset(vertices, n: int | None = None) -> tuple[int, ...]:
    """Check that ``vertices`` is a strictly increasing subset of [0, n)."""
    vs = tuple(int(v) for v in vertices)
    if not vs:
        raise ValueError("empty face")
    if any(b <= a for a, b in zip(vs, vs[1:])):
        raise ValueError(f"vertices must be strictly increasing: {vs}")
    if vs[0] < 0:
        raise ValueError(f"negative vertex in {vs}")
    if n is not None and vs[-1] >= n:
        raise ValueError(f"vertex {vs[-1]} out of range [0, {n})")
    return vs


def rank_subset(vertices, n: int | None = None) -> int:
    """Colex rank of a strictly increasing subset of [0, n)."""
    vs = validate_subset(vertices, n)
    return sum(comb(v, j + 1) for j, v in enumerate(vs))


def unrank_subset(rank: int, k: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`rank_subset` for k-subsets of [0, n)."""
    if not 0 <= rank < comb(n, k):
        raise ValueError(f"rank {rank} out of range [0, C({n},{k}))")
    out = [0] * k
    r = rank
    m = n
    for j in range(k, 0, -1):
        # largest m with C(m, j) <= r, found by binary search
        lo = j - 1
        while lo < m:
            mid = (lo + m + 1) // 2
            if comb(mid, j) <= r:
                lo = mid
            else:
                m = mid - 1
        r -= comb(m, j)
        out[j - 1] = m
    return tuple(out)


def binom_table(n: int, k_max: int) -> np.ndarray:
    """Table ``T[v, j] = C(v, j)`` for v <= n, j <= k_max (int64)."""
    t = np.zeros((n + 1, k_max + 1), dtype=np.int64)
    t[:, 0] = 1
    for v in range(1, n + 1):
        for j in range(1, k_max + 1):
            t[v, j] = t[v - 1, j] + t[v - 1, j - 1]
    return t


def rank_rows(faces: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Vectorized colex ranks for an (m, k) array of sorted vertex rows."""
    k = faces.shape[1]
    ranks = np.zeros(len(faces), dtype=np.int64)
    for j in range(k):
        ranks += table[faces[:, j], j + 1]
    return ranks


def subface_rank_rows(faces: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Ranks of the k facets of each face in an (m, k) array of vertex rows.

    Column i of the result holds the rank of the facet obtained by dropping
    vertex i, matching the orientation convention of the boundary matrix.
    """
    m, k = faces.shape
    out = np.zeros((m, k), dtype=np.int64)
    # prefix[:, i] = sum_{j<i} C(v_j, j+1), suffix[:, i] = sum_{j>i} C(v_j, j)
    prefix = np.zeros((m, k + 1), dtype=np.int64)
    suffix = np.zeros((m, k + 1), dtype=np.int64)
    for j in range(k):
        prefix[:, j + 1] = prefix[:, j] + table[faces[:, j], j + 1]
    for j in range(k - 1, -1, -1):
        suffix[:, j] = suffix[:, j + 1] + table[faces[:, j], j]
    for i in range(k):
        out[:, i] = prefix[:, i] + suffix[:, i + 1]
    return out
