"""Random d-complexes with full (d-1)-skeleton, stored as present d-faces."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .combinatorics import (
    binom_table,
    rank_rows,
    rank_subset,
    subface_rank_rows,
    unrank_subset,
    validate_subset,
)


@dataclass(frozen=True)
class Complex:
    """d-dimensional complex on n vertices; the (d-1)-skeleton is implicitly full.

    ``face_ranks`` holds the colex ranks of the present d-faces, sorted.
    Instances are immutable and safe to share across concurrent readers.
    """

    n: int
    d: int
    face_ranks: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.d < 1 or self.n < self.d:
            raise ValueError(f"need n >= d >= 1, got n={self.n}, d={self.d}")
        ranks = np.asarray(self.face_ranks, dtype=np.int64)
        ranks = np.unique(ranks)
        if len(ranks) and (ranks[0] < 0 or ranks[-1] >= comb(self.n, self.d + 1)):
            raise ValueError("face rank out of range")
        object.__setattr__(self, "face_ranks", ranks)

    @property
    def num_faces(self) -> int:
        return len(self.face_ranks)

    @property
    def max_faces(self) -> int:
        return comb(self.n, self.d + 1)

    @property
    def num_subfaces(self) -> int:
        """f_{d-1}: always C(n, d), the skeleton is full."""
        return comb(self.n, self.d)

    def has_face(self, face) -> bool:
        r = rank_subset(validate_subset(face, self.n))
        i = np.searchsorted(self.face_ranks, r)
        return i < len(self.face_ranks) and self.face_ranks[i] == r

    def face_vertices(self) -> np.ndarray:
        """(m, d+1) array of face vertex rows, in rank order."""
        if "verts" not in self._cache:
            vs = np.array(
                [unrank_subset(int(r), self.d + 1, self.n) for r in self.face_ranks],
                dtype=np.int64,
            ).reshape(self.num_faces, self.d + 1)
            self._cache["verts"] = vs
        return self._cache["verts"]

    def subface_ranks(self) -> np.ndarray:
        """(m, d+1) ranks of each face's facets; column i drops vertex i."""
        if "subranks" not in self._cache:
            table = binom_table(self.n, self.d + 1)
            self._cache["subranks"] = subface_rank_rows(self.face_vertices(), table)
        return self._cache["subranks"]

    def faces(self):
        """Iterate present d-faces as sorted vertex tuples."""
        for row in self.face_vertices():
            yield tuple(int(v) for v in row)

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "d": self.d, "faces": [list(f) for f in self.faces()]}
        )

    @classmethod
    def from_json(cls, text: str) -> "Complex":
        obj = json.loads(text)
        return from_faces(obj["n"], obj["d"], obj["faces"])


def from_faces(n: int, d: int, faces) -> Complex:
    """Build a complex from an iterable of d-face vertex tuples."""
    ranks = [rank_subset(validate_subset(f, n)) for f in faces]
    for f in faces:
        if len(tuple(f)) != d + 1:
            raise ValueError(f"face {tuple(f)} is not a d-face for d={d}")
    return Complex(n, d, np.array(ranks, dtype=np.int64))


def sample_complex(n: int, d: int, c: float, seed) -> Complex:
    """Draw X ~ X_d(n, p) with p = c/n; each d-face kept independently.

    ``seed`` may be an int or a numpy Generator; equal seeds give
    bit-identical complexes.
    """
    if n <= d:
        raise ValueError(f"need n > d, got n={n}, d={d}")
    if c < 0 or c > n:
        raise ValueError(f"need 0 <= c <= n, got c={c}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    p = c / n
    m = comb(n, d + 1)
    count = int(rng.binomial(m, p))
    ranks = rng.choice(m, size=count, replace=False)
    return Complex(n, d, np.sort(ranks.astype(np.int64)))


def degree(x: Complex, tau) -> int:
    """Number of present d-faces containing the (d-1)-face tau."""
    return len(cofaces(x, tau))


def cofaces(x: Complex, tau) -> list[tuple[int, ...]]:
    """The present d-faces containing tau, as sorted vertex tuples."""
    vs = validate_subset(tau, x.n)
    if len(vs) != x.d:
        raise ValueError(f"expected a (d-1)-face with {x.d} vertices, got {vs}")
    vset = set(vs)
    out = []
    for v in range(x.n):
        if v in vset:
            continue
        cand = tuple(sorted(vs + (v,)))
        if x.has_face(cand):
            out.append(cand)
    return out


def coface_map(x: Complex) -> dict[int, list[int]]:
    """Map (d-1)-face rank -> indices (into face_ranks) of its cofaces."""
    sub = x.subface_ranks()
    out: dict[int, list[int]] = {}
    m, k = sub.shape
    flat = sub.ravel()
    for idx in range(flat.shape[0]):
        out.setdefault(int(flat[idx]), []).append(idx // k)
    return out
