"""Rooted d-trees with Poisson(c) offspring, and Monte Carlo gamma estimates.

Trees are materialized as ordinary complexes over freshly allocated vertex
indices so the generic collapse engine applies unchanged. The gamma
estimator instead evaluates the root-isolation verdict lazily, branch by
branch, which is distribution-identical and much cheaper (unexplored
branches are independent of the verdict).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, exp

import numpy as np

from .collapse import theta_collapse
from .complexes import Complex, from_faces
from .theory import gamma_recurrence


class UniformStream:
    """Buffered uniforms from a numpy Generator (cuts per-draw overhead)."""

    def __init__(self, rng: np.random.Generator, block: int = 8192):
        self._rng = rng
        self._block = block
        self._buf = rng.random(block)
        self._pos = 0

    def next(self) -> float:
        if self._pos == len(self._buf):
            self._buf = self._rng.random(self._block)
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        return u


def poisson_inversion(c: float, u: float) -> int:
    """Poisson(c) by CDF inversion; exact and platform-reproducible for c <= ~30."""
    if c < 0:
        raise ValueError("c must be >= 0")
    if c == 0:
        return 0
    pmf = exp(-c)
    cdf = pmf
    j = 0
    while u >= cdf:
        j += 1
        pmf *= c / j
        cdf += pmf
        if j > 10_000:  # cdf exhausted by floating-point roundoff
            break
    return j


@dataclass
class TreeNode:
    """One (d-1)-face of the tree; children[i] is the list of d sibling
    subface nodes of the i-th coface hanging below this face."""

    vertices: tuple[int, ...]
    children: list


@dataclass
class BranchingTree:
    d: int
    k: int
    root: tuple[int, ...]
    complex: Complex
    layers: list[list[tuple[int, ...]]]  # (d-1)-faces by distance from the root
    root_node: TreeNode

    @property
    def num_faces(self) -> int:
        return self.complex.num_faces

    @property
    def num_vertices(self) -> int:
        return self.complex.n


def sample_tree(d: int, k: int, c: float, rng) -> BranchingTree:
    """Draw a rooted d-tree of radius <= k; each frontier (d-1)-face receives
    Poisson(c) new d-faces, each a fresh vertex joined onto it."""
    if k < 0:
        raise ValueError("k must be >= 0")
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    stream = UniformStream(rng)
    root = tuple(range(d))
    root_node = TreeNode(root, [])
    counter = d
    faces: list[tuple[int, ...]] = []
    layers: list[list[tuple[int, ...]]] = [[root]]
    frontier = [root_node]
    for _ in range(k):
        next_frontier: list[TreeNode] = []
        new_layer: list[tuple[int, ...]] = []
        for node in frontier:
            j = poisson_inversion(c, stream.next())
            for _ in range(j):
                v = counter
                counter += 1
                face = tuple(sorted(node.vertices + (v,)))
                faces.append(face)
                siblings = []
                for drop in node.vertices:
                    sib = tuple(sorted(set(face) - {drop}))
                    sib_node = TreeNode(sib, [])
                    siblings.append(sib_node)
                    next_frontier.append(sib_node)
                    new_layer.append(sib)
                node.children.append(siblings)
        frontier = next_frontier
        if new_layer:
            layers.append(new_layer)
    x = from_faces(max(counter, d), d, faces)
    return BranchingTree(d, k, root, x, layers, root_node)


def root_isolated_phase(tree: BranchingTree, max_phases: int | None = None) -> int | None:
    """Phase at which the root becomes isolated under root-collapse, or None.

    Phase 0 means the root is isolated in the starting complex.
    """
    trace = theta_collapse(tree.complex, tree.root, max_phases=max_phases)
    return trace.theta_isolated_phase


def root_generation(tree: BranchingTree, k: int):
    """Classify the root: ('isolated', phase) with phase <= k, or
    ('survives', None) if it keeps positive degree past phase k."""
    phase = root_isolated_phase(tree, max_phases=k)
    if phase is not None and phase <= k:
        return ("isolated", phase)
    return ("survives", None)


def isolated_before_on_tree(node: TreeNode, r: int) -> bool:
    """Exact root-isolation verdict on a materialized tree: the root is
    isolated before phase r iff under each coface some sibling subface is
    isolated before phase r-1 in its own subtree."""
    if r <= 0:
        return False
    return all(
        any(isolated_before_on_tree(sib, r - 1) for sib in siblings)
        for siblings in node.children
    )


def _sampled_verdict(d: int, c: float, r: int, stream: UniformStream) -> bool:
    # Lazy version of isolated_before_on_tree: offspring are drawn only when
    # the verdict still depends on them (branches are independent).
    if r <= 0:
        return False
    j = poisson_inversion(c, stream.next())
    for _ in range(j):
        if not any(_sampled_verdict(d, c, r - 1, stream) for _ in range(d)):
            return False
    return True


def estimate_gamma(
    d: int, c: float, r: int, samples: int, seed
) -> tuple[float, float]:
    """Monte Carlo estimate of gamma_r(d, c) with its binomial standard error.

    Samples are drawn in fixed-size chunks with seeds derived from ``seed``,
    so the estimate is independent of how chunks are scheduled.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    chunk = 4096
    hits = 0
    done = 0
    index = 0
    while done < samples:
        take = min(chunk, samples - done)
        rng = np.random.default_rng([int(seed) & (2**63 - 1), index])
        stream = UniformStream(rng)
        for _ in range(take):
            hits += _sampled_verdict(d, c, r, stream)
        done += take
        index += 1
    est = hits / samples
    se = (est * (1 - est) / samples) ** 0.5
    return est, se


def gamma_estimate_rows(d, c_values, r_max, samples, seed) -> list[dict]:
    """CSV-ready rows (d, c, r, samples, estimate, std_error, theory_value)."""
    rows = []
    for ci, c in enumerate(c_values):
        theory = gamma_recurrence(d, c, r_max)
        for r in range(r_max + 1):
            est, se = estimate_gamma(d, c, r, samples, seed=(int(seed) + 7919 * ci + r))
            rows.append(
                {
                    "d": d,
                    "c": c,
                    "r": r,
                    "samples": samples,
                    "estimate": est,
                    "std_error": se,
                    "theory_value": float(theory[r]),
                }
            )
    return rows
