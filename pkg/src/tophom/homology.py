"""Boundary matrix over GF(p), top homology, and incremental column reduction."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .combinatorics import rank_subset, validate_subset
from .complexes import Complex
from .gf2 import GF2ColumnReducer


def _check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class BoundaryMatrix:
    """Sparse f_{d-1} x f_d boundary matrix; rows are colex (d-1)-face ranks.

    Entry ((sigma without v_i), sigma) is (-1)^i for the ascending vertex
    orientation, reduced mod p.
    """

    n: int
    d: int
    p: int
    col_faces: np.ndarray  # (m, d+1) vertex rows, one per column
    row_indices: np.ndarray  # (m, d+1) subface ranks; column i drops vertex i

    @property
    def shape(self) -> tuple[int, int]:
        return (comb(self.n, self.d), len(self.col_faces))

    def column_entries(self, j: int) -> list[tuple[int, int]]:
        """(row, value) pairs of column j, value in GF(p)."""
        return [
            (int(r), (-1) ** i % self.p) for i, r in enumerate(self.row_indices[j])
        ]

    def to_dense(self) -> np.ndarray:
        rows, cols = self.shape
        m = np.zeros((rows, cols), dtype=np.int64)
        for j in range(cols):
            for r, v in self.column_entries(j):
                m[r, j] = v
        return m

    def dump_triplets(self) -> str:
        """Debug dump: one 'row col value' line per nonzero."""
        lines = []
        for j in range(self.shape[1]):
            for r, v in self.column_entries(j):
                lines.append(f"{r} {j} {v}")
        return "\n".join(lines)


def boundary_matrix(x: Complex, p: int = 2) -> BoundaryMatrix:
    """The d-boundary matrix of x over GF(p)."""
    p = _check_prime(p)
    return BoundaryMatrix(x.n, x.d, p, x.face_vertices(), x.subface_ranks())


class GFpColumnReducer:
    """Incremental column reduction over GF(p), odd p; dense numpy columns.

    Same contract as the GF(2) backends but ``push`` takes (rows, values)
    and ``used`` pairs each slot with the coefficient that was subtracted.
    """

    def __init__(self, n_rows: int, p: int):
        self.n_rows = int(n_rows)
        self.p = _check_prime(p)
        self._pivot_by_row: dict[int, int] = {}
        self._cols: list[np.ndarray] = []

    @property
    def n_pivots(self) -> int:
        return len(self._cols)

    def push(self, rows, values) -> tuple[bool, list[tuple[int, int]]]:
        p = self.p
        col = np.zeros(self.n_rows, dtype=np.int64)
        for r, v in zip(rows, values):
            col[r] = (col[r] + v) % p
        used: list[tuple[int, int]] = []
        while True:
            nz = np.nonzero(col)[0]
            if len(nz) == 0:
                return False, used
            low = int(nz[0])
            slot = self._pivot_by_row.get(low)
            if slot is None:
                self._pivot_by_row[low] = len(self._cols)
                self._cols.append(col)
                return True, used
            piv = self._cols[slot]
            coeff = int(col[low]) * pow(int(piv[low]), -1, p) % p
            col = (col - coeff * piv) % p
            used.append((slot, coeff))


@dataclass(frozen=True)
class PushResult:
    independent: bool
    support: tuple[tuple[int, ...], ...] | None = None


class Reducer:
    """Incremental face-by-face reduction with first-cycle support extraction.

    Combination records over the pushed columns are kept until the first
    dependent column is found; that column's record is the support of a
    nonzero right-kernel vector. After the first cycle, further pushes still
    update the rank but report ``support=None``.
    """

    def __init__(self, n: int, d: int, p: int = 2):
        self.n = n
        self.d = d
        self.p = _check_prime(p)
        n_rows = comb(n, d)
        if self.p == 2:
            self._backend = GF2ColumnReducer(n_rows)
        else:
            self._backend = GFpColumnReducer(n_rows, self.p)
        self._pushed: list[tuple[int, ...]] = []
        self._pushed_ranks: set[int] = set()
        self._combos: list | None = []  # aligned with pivot slots
        self._cycle_found = False

    @property
    def rank(self) -> int:
        return self._backend.n_pivots

    @property
    def num_pushed(self) -> int:
        return len(self._pushed)

    def push_face(self, face) -> PushResult:
        vs = validate_subset(face, self.n)
        if len(vs) != self.d + 1:
            raise ValueError(f"expected a d-face with {self.d + 1} vertices")
        frank = rank_subset(vs)
        if frank in self._pushed_ranks:
            raise ValueError(f"face {vs} pushed twice")
        self._pushed_ranks.add(frank)
        j = len(self._pushed)
        self._pushed.append(vs)

        rows = [rank_subset(vs[:i] + vs[i + 1 :]) for i in range(self.d + 1)]
        if self.p == 2:
            independent, used = self._backend.push(rows)
            if self._combos is None:
                return PushResult(independent)
            combo = 1 << j
            for slot in used:
                combo ^= self._combos[slot]
            if independent:
                self._combos.append(combo)
                return PushResult(True)
            support = tuple(
                self._pushed[i] for i in range(j + 1) if (combo >> i) & 1
            )
        else:
            values = [(-1) ** i % self.p for i in range(self.d + 1)]
            independent, used = self._backend.push(rows, values)
            if self._combos is None:
                return PushResult(independent)
            combo = {j: 1}
            for slot, coeff in used:
                for i, ci in self._combos[slot].items():
                    combo[i] = (combo.get(i, 0) - coeff * ci) % self.p
            combo = {i: ci for i, ci in combo.items() if ci}
            if independent:
                self._combos.append(combo)
                return PushResult(True)
            support = tuple(self._pushed[i] for i in sorted(combo))

        self._cycle_found = True
        self._combos = None  # records only needed up to the first dependency
        return PushResult(False, support)


def batch_rank(x: Complex, p: int = 2) -> int:
    """Rank of the boundary matrix via incremental reduction of all columns."""
    p = _check_prime(p)
    sub = x.subface_ranks()
    if p == 2:
        backend = GF2ColumnReducer(comb(x.n, x.d))
        for j in range(x.num_faces):
            backend.push([int(r) for r in sub[j]])
        return backend.n_pivots
    backend = GFpColumnReducer(comb(x.n, x.d), p)
    values = [(-1) ** i % p for i in range(x.d + 1)]
    for j in range(x.num_faces):
        backend.push([int(r) for r in sub[j]], values)
    return backend.n_pivots


def h_d(x: Complex, p: int = 2) -> int:
    """dim H_d(X; GF(p)) = f_d - rank of the boundary matrix."""
    return x.num_faces - batch_rank(x, p)


def is_simplex_boundary(support) -> bool:
    """True iff the support is the full boundary of a (d+1)-simplex."""
    faces = [tuple(f) for f in support]
    if not faces:
        raise ValueError("empty support")
    d = len(faces[0]) - 1
    verts = sorted(set(v for f in faces for v in f))
    if len(verts) != d + 2 or len(faces) != d + 2:
        return False
    return set(faces) == set(combinations(verts, d + 1))


def vertex_support(support) -> int:
    """Number of distinct vertices across the support faces."""
    return len(set(v for f in support for v in f))
