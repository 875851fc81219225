"""Phased elementary collapsing, generation labels, and the zeta/s statistics.

A phase snapshots the currently free (d-1)-faces, scans them in ascending
colex order (optionally a seeded shuffle), collapses each face that is
still free and skips faces that became isolated meanwhile. The free list
is refreshed only at phase boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .combinatorics import rank_subset, validate_subset
from .complexes import Complex

ISOLATED_AT_START = "isolated-at-start"
ALIVE = "alive"


@dataclass(frozen=True)
class CollapseTrace:
    """Immutable record of one collapsing run.

    ``zeta_by_phase[i]`` counts the zero rows of the boundary matrix of the
    complex after phase i: (d-1)-faces isolated at the start plus those
    isolated by other faces' collapses. Collapsed (d-1)-faces are removed
    rows, not zero rows; ``zeta_with_removed`` adds them back.
    """

    n: int
    d: int
    f_d_initial: int
    pairs_by_phase: tuple  # per phase: tuple of (subface_rank, dface_rank)
    gen_dface: dict
    gen_subface: dict  # phase at which a positive-degree (d-1)-face left play
    collapsed_subfaces: frozenset
    touched_subfaces: frozenset  # (d-1)-faces of positive degree in X
    zeta_by_phase: tuple
    face_ranks: np.ndarray = field(repr=False)
    theta: int | None = None
    theta_isolated_phase: int | None = None

    @property
    def k_stop(self) -> int:
        return len(self.pairs_by_phase)

    @property
    def f_subfaces(self) -> int:
        return comb(self.n, self.d)

    @property
    def c0_count(self) -> int:
        return self.f_subfaces - len(self.touched_subfaces)

    @property
    def zeta_star(self) -> int:
        return self.zeta_by_phase[-1]

    def zeta(self, i: int) -> int:
        if i < 0:
            raise ValueError("phase index must be >= 0")
        return self.zeta_by_phase[min(i, self.k_stop)]

    def collapsed_through(self, i: int) -> int:
        return sum(len(p) for p in self.pairs_by_phase[: min(i, self.k_stop)])

    def zeta_with_removed(self, i: int) -> int:
        """Zero rows plus rows removed by collapse, after phase i."""
        return self.zeta(i) + self.collapsed_through(i)

    def s(self, i: int) -> int:
        """s_i = f_d(R_i) - f_{d-1}(R_i) + zeta_i; positive certifies H_d != 0."""
        removed = self.collapsed_through(i)
        return (self.f_d_initial - removed) - (self.f_subfaces - removed) + self.zeta(i)

    @property
    def s_star(self) -> int:
        return self.s(self.k_stop)

    def generation_of(self, face):
        vs = validate_subset(face, self.n)
        r = rank_subset(vs)
        if len(vs) == self.d + 1:
            if r in self.gen_dface:
                return self.gen_dface[r]
            i = np.searchsorted(self.face_ranks, r)
            if i < len(self.face_ranks) and self.face_ranks[i] == r:
                return ALIVE
            raise ValueError(f"d-face {vs} not in the complex")
        if len(vs) == self.d:
            if r in self.gen_subface:
                return self.gen_subface[r]
            return ALIVE if r in self.touched_subfaces else ISOLATED_AT_START
        raise ValueError(f"face {vs} is neither a d-face nor a (d-1)-face")

    def remaining_complex(self, i: int | None = None) -> Complex:
        """The complex R_i (d-faces only; collapsed rows carry no rank)."""
        if i is None:
            i = self.k_stop
        gone = {
            fr for phase in self.pairs_by_phase[: min(i, self.k_stop)] for _, fr in phase
        }
        keep = np.array(
            [r for r in self.face_ranks if int(r) not in gone], dtype=np.int64
        )
        return Complex(self.n, self.d, keep)

    def summary(self) -> dict:
        gen_hist_d: dict[str, int] = {}
        for g in self.gen_dface.values():
            gen_hist_d[str(g)] = gen_hist_d.get(str(g), 0) + 1
        gen_hist_s: dict[str, int] = {}
        for r in self.gen_subface:
            key = "collapsed" if r in self.collapsed_subfaces else "isolated"
            label = f"{key}:{self.gen_subface[r]}"
            gen_hist_s[label] = gen_hist_s.get(label, 0) + 1
        return {
            "f_d": self.f_d_initial,
            "f_d-1": self.f_subfaces,
            "zeta_star": self.zeta_star,
            "s_star": self.s_star,
            "phases_run": self.k_stop,
            "generation_histogram": {"d": gen_hist_d, "d-1": gen_hist_s},
        }


def _collapse(
    x: Complex,
    theta_rank: int | None,
    max_phases: int | None,
    order_rng: np.random.Generator | None,
) -> CollapseTrace:
    sub = x.subface_ranks()
    face_ranks = x.face_ranks
    m = x.num_faces

    cofaces: dict[int, list[int]] = {}
    flat = sub.ravel()
    width = x.d + 1
    for idx in range(len(flat)):
        cofaces.setdefault(int(flat[idx]), []).append(idx // width)
    deg = {r: len(lst) for r, lst in cofaces.items()}
    alive = np.ones(m, dtype=bool)

    free_now = {r for r, dg in deg.items() if dg == 1 and r != theta_rank}
    theta_isolated_phase = None
    if theta_rank is not None and deg.get(theta_rank, 0) == 0:
        theta_isolated_phase = 0

    gen_dface: dict[int, int] = {}
    gen_subface: dict[int, int] = {}
    collapsed_subs: set[int] = set()
    pairs_by_phase: list[tuple] = []
    zeta0 = comb(x.n, x.d) - len(deg)
    zeta_by_phase = [zeta0]
    zeta = zeta0

    phase = 0
    while free_now and (max_phases is None or phase < max_phases):
        phase += 1
        order = sorted(free_now)
        if order_rng is not None:
            order_rng.shuffle(order)
        pairs = []
        for tau in order:
            if deg[tau] != 1 or tau in collapsed_subs:
                continue  # became isolated earlier in this phase
            sigma_idx = next(i for i in cofaces[tau] if alive[i])
            alive[sigma_idx] = False
            gen_dface[int(face_ranks[sigma_idx])] = phase
            collapsed_subs.add(tau)
            gen_subface[tau] = phase
            free_now.discard(tau)
            pairs.append((tau, int(face_ranks[sigma_idx])))
            for u in sub[sigma_idx]:
                u = int(u)
                if u == tau:
                    continue
                deg[u] -= 1
                if deg[u] == 1:
                    if u != theta_rank:
                        free_now.add(u)
                elif deg[u] == 0:
                    free_now.discard(u)
                    gen_subface[u] = phase
                    zeta += 1
                    if u == theta_rank:
                        theta_isolated_phase = phase
        pairs_by_phase.append(tuple(pairs))
        zeta_by_phase.append(zeta)

    return CollapseTrace(
        n=x.n,
        d=x.d,
        f_d_initial=m,
        pairs_by_phase=tuple(pairs_by_phase),
        gen_dface=gen_dface,
        gen_subface=gen_subface,
        collapsed_subfaces=frozenset(collapsed_subs),
        touched_subfaces=frozenset(deg),
        zeta_by_phase=tuple(zeta_by_phase),
        face_ranks=face_ranks,
        theta=theta_rank,
        theta_isolated_phase=theta_isolated_phase,
    )


def run_phases(
    x: Complex,
    max_phases: int | None = None,
    order_seed: int | None = None,
) -> CollapseTrace:
    """Collapse in phases until stable (or ``max_phases``); deterministic.

    ``order_seed`` replaces the colex scan order inside each phase with a
    seeded shuffle, for order-independence experiments.
    """
    rng = None if order_seed is None else np.random.default_rng(order_seed)
    return _collapse(x, None, max_phases, rng)


def theta_collapse(
    x: Complex,
    theta,
    max_phases: int | None = None,
    order_seed: int | None = None,
) -> CollapseTrace:
    """Phased collapsing in which ``theta`` is never collapsed, even if free."""
    vs = validate_subset(theta, x.n)
    if len(vs) != x.d:
        raise ValueError(f"theta must be a (d-1)-face with {x.d} vertices")
    rng = None if order_seed is None else np.random.default_rng(order_seed)
    return _collapse(x, rank_subset(vs), max_phases, rng)


def s_statistic(trace: CollapseTrace, i: int) -> int:
    """s_i from a trace; raises if i is outside [0, k_stop]."""
    if not 0 <= i <= trace.k_stop:
        raise ValueError(f"phase {i} out of range [0, {trace.k_stop}]")
    return trace.s(i)


def zeta_perturbation(x: Complex, sigma, k_star: int) -> tuple[int, bool]:
    """|zeta_*(X+sigma) - zeta_*(X)| after k_star phases, and whether it
    respects the (d+1)*d^k_star Lipschitz bound."""
    vs = validate_subset(sigma, x.n)
    if len(vs) != x.d + 1:
        raise ValueError("sigma must be a d-face")
    r = rank_subset(vs)
    if x.has_face(vs):
        raise ValueError(f"sigma {vs} already present")
    x2 = Complex(x.n, x.d, np.append(x.face_ranks, r))
    t1 = run_phases(x, max_phases=k_star)
    t2 = run_phases(x2, max_phases=k_star)
    diff = abs(t2.zeta(k_star) - t1.zeta(k_star))
    return diff, diff <= (x.d + 1) * x.d**k_star
