"""Monte Carlo drivers: first-cycle process, threshold scans, tree-vs-theory.

Trials are pure functions of (config, trial index): per-trial seeds come
from a fixed splitmix64 mix of the master seed and the index, so results
are identical for any worker count and platform.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from .collapse import run_phases
from .complexes import Complex, sample_complex
from .homology import Reducer, h_d, is_simplex_boundary, vertex_support
from .theory import gamma_recurrence, select_k_star
from .trees import estimate_gamma

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """The splitmix64 finalizer; a fixed, published 64-bit integer hash."""
    x = (x + _GOLDEN) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def derive_seed(master_seed: int, index: int) -> int:
    """Per-trial seed: splitmix64 of the master seed advanced index+1 times
    along the golden-ratio sequence."""
    return splitmix64((int(master_seed) + _GOLDEN * (int(index) + 1)) & _MASK)


def fmt_float(x: float) -> str:
    """17 significant digits: round-trips any double."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class FirstCycleRecord:
    n: int
    d: int
    seed: int
    trial: int
    m_first: int  # d-faces present when the first cycle appears
    kind: str  # "simplex-boundary" | "giant"
    support_size: int
    vertex_support: int
    c_hat: float  # m_first * n / C(n, d+1)

    def to_json(self) -> str:
        rec = asdict(self)
        rec["c_hat"] = fmt_float(self.c_hat)
        return json.dumps(rec, sort_keys=True)


def run_process(n: int, d: int, seed: int, trial: int = 0) -> FirstCycleRecord:
    """Add uniformly shuffled d-faces one at a time; stop at the first cycle.

    The face list is permuted up front; the first dependent boundary column
    yields the cycle support.
    """
    if n <= d + 1:
        raise ValueError("need n > d+1")
    total = comb(n, d + 1)
    rng = np.random.default_rng(int(seed) & (2**63 - 1))
    order = rng.permutation(total)
    reducer = Reducer(n, d)
    from .combinatorics import unrank_subset

    for i, r in enumerate(order):
        face = unrank_subset(int(r), d + 1, n)
        res = reducer.push_face(face)
        if not res.independent:
            m_first = i + 1
            simplex = is_simplex_boundary(res.support)
            return FirstCycleRecord(
                n=n,
                d=d,
                seed=int(seed),
                trial=trial,
                m_first=m_first,
                kind="simplex-boundary" if simplex else "giant",
                support_size=len(res.support),
                vertex_support=vertex_support(res.support),
                c_hat=m_first * n / total,
            )
    raise RuntimeError("no cycle found; C(n,d+1) <= C(n,d)?")


def _process_trial(args) -> FirstCycleRecord:
    n, d, master_seed, trial = args
    return run_process(n, d, derive_seed(master_seed, trial), trial)


@dataclass
class TrialBatch:
    config: dict
    records: list
    aggregates: dict


def _pool_map(func, args, threads: int):
    if threads <= 1:
        return [func(a) for a in args]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, args, chunksize=max(1, len(args) // (4 * threads))))


def _chat_stats(records, prefix: str, agg: dict) -> None:
    if not records:
        return
    chats = np.array([r.c_hat for r in records])
    agg[f"c_hat_mean_{prefix}"] = float(chats.mean())
    std = float(chats.std(ddof=1)) if len(records) > 1 else 0.0
    agg[f"c_hat_std_{prefix}"] = std
    agg[f"c_hat_se_mean_{prefix}"] = std / len(records) ** 0.5


def process_experiment(
    n: int, d: int, trials: int, master_seed: int, threads: int = 1
) -> TrialBatch:
    """Repeat the first-cycle process and condition the c_hat statistics on
    giant first cycles.

    At desk scale the non-simplex-boundary population is itself mixed:
    boundaries of small spheres (constant-size supports) occur alongside
    extensive cycles. Statistics are therefore reported twice, over all
    giant-kind trials and over the extensive ones (vertex support > n/2);
    the latter is the population behind the threshold estimates.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    args = [(n, d, master_seed, t) for t in range(trials)]
    records = sorted(_pool_map(_process_trial, args, threads), key=lambda r: r.trial)
    giants = [r for r in records if r.kind == "giant"]
    extensive = [r for r in giants if r.vertex_support > n / 2]
    agg: dict = {
        "trials": trials,
        "giant_count": len(giants),
        "simplex_boundary_count": trials - len(giants),
        "extensive_giant_count": len(extensive),
    }
    _chat_stats(giants, "giant", agg)
    _chat_stats(extensive, "extensive", agg)
    if giants:
        hist: dict[str, int] = {}
        for r in giants:
            hist[str(r.vertex_support)] = hist.get(str(r.vertex_support), 0) + 1
        agg["vertex_support_histogram"] = hist
        agg["full_vertex_support_fraction_giant"] = float(
            np.mean([r.vertex_support == n for r in giants])
        )
    if extensive:
        agg["full_vertex_support_fraction_extensive"] = float(
            np.mean([r.vertex_support == n for r in extensive])
        )
    return TrialBatch(
        config={"n": n, "d": d, "trials": trials, "master_seed": int(master_seed)},
        records=records,
        aggregates=agg,
    )


def _scan_trial(args):
    n, d, c, master_seed, trial, k_star, with_homology, p = args
    x = sample_complex(n, d, c, derive_seed(master_seed, trial))
    trace = run_phases(x, max_phases=k_star)
    s = trace.s_star
    hd = h_d(x, p) if with_homology else None
    return trial, s, hd


def threshold_scan(
    n: int,
    d: int,
    c_grid,
    trials: int,
    master_seed: int,
    p: int = 2,
    threads: int = 1,
    with_homology: bool | None = None,
    k_star_cap: int = 50,
) -> list[dict]:
    """Per grid density: fraction of trials with s_* > 0 and with h_d > 0,
    and the mean s_* / C(n, d).

    ``with_homology=None`` computes h_d only when the complex is small
    enough for exact rank to be cheap (C(n, d+1) <= 20000).
    """
    if with_homology is None:
        with_homology = comb(n, d + 1) <= 20_000
    rows = []
    for ci, c in enumerate(c_grid):
        k_star = min(select_k_star(d, c), k_star_cap) if c > 0 else 1
        base = derive_seed(master_seed, 10_000_019 * ci)
        args = [
            (n, d, c, base, t, k_star, with_homology, p) for t in range(trials)
        ]
        results = sorted(_pool_map(_scan_trial, args, threads))
        svals = np.array([s for _, s, _ in results], dtype=float)
        row = {
            "c": c,
            "trials": trials,
            "frac_s_positive": float(np.mean(svals > 0)),
            "mean_s_density": float(svals.mean() / comb(n, d)),
            "frac_h_positive": (
                float(np.mean([hd > 0 for _, _, hd in results]))
                if with_homology
                else ""
            ),
        }
        rows.append(row)
    return rows


def _neighborhood_faces(cof_map, sub_of_face, start_rank: int, layers: int):
    """Face indices of the radius-``layers`` neighborhood of a (d-1)-face."""
    seen_faces: set[int] = set()
    frontier = {start_rank}
    for _ in range(layers):
        new_faces = set()
        for sr in frontier:
            for fi in cof_map.get(sr, ()):
                if fi not in seen_faces:
                    new_faces.add(fi)
        if not new_faces:
            break
        seen_faces |= new_faces
        frontier = {int(u) for fi in new_faces for u in sub_of_face[fi]}
    return seen_faces


def direct_gamma_estimate(
    x: Complex, r: int, faces_to_sample: int, seed: int
) -> tuple[float, float]:
    """X-side estimate of gamma_r: the fraction of (d-1)-faces that become
    isolated within r-1 phases of tau-collapsing.

    The verdict only depends on the radius-r neighborhood, which is
    extracted and tau-collapsed per sampled face.
    """
    from .collapse import theta_collapse
    from .combinatorics import unrank_subset
    from .complexes import coface_map

    cof = coface_map(x)
    sub = x.subface_ranks()
    rng = np.random.default_rng(int(seed) & (2**63 - 1))
    total = comb(x.n, x.d)
    taus = rng.choice(total, size=min(faces_to_sample, total), replace=False)
    hits = 0
    for t in taus:
        t = int(t)
        face_idxs = _neighborhood_faces(cof, sub, t, r)
        nb = Complex(x.n, x.d, x.face_ranks[sorted(face_idxs)])
        tau = unrank_subset(t, x.d, x.n)
        trace = theta_collapse(nb, tau, max_phases=r - 1 if r > 0 else 0)
        hits += trace.theta_isolated_phase is not None
    m = len(taus)
    est = hits / m
    return est, (est * (1 - est) / m) ** 0.5


def gw_validation(
    d: int,
    c_grid,
    r_max: int,
    samples: int,
    master_seed: int,
    n_direct: int = 500,
    direct_faces: int = 2000,
    threads: int = 1,
) -> list[dict]:
    """Two-sided evidence per (d, c, r): tree Monte Carlo and direct
    X_d(n, c/n) measurement against the recurrence values."""
    rows = []
    for ci, c in enumerate(c_grid):
        theory = gamma_recurrence(d, c, r_max)
        x = sample_complex(n_direct, d, c, derive_seed(master_seed, 7_000_003 * ci))
        for r in range(1, r_max + 1):
            tree_est, tree_se = estimate_gamma(
                d, c, r, samples, seed=derive_seed(master_seed, 1_000_003 * ci + r)
            )
            dir_est, dir_se = direct_gamma_estimate(
                x, r, direct_faces, seed=derive_seed(master_seed, 3_000_017 * ci + r)
            )
            rows.append(
                {
                    "d": d,
                    "c": c,
                    "r": r,
                    "samples": samples,
                    "tree_estimate": tree_est,
                    "tree_std_error": tree_se,
                    "direct_n": n_direct,
                    "direct_faces": direct_faces,
                    "direct_estimate": dir_est,
                    "direct_std_error": dir_se,
                    "theory_gamma": float(theory[r]),
                }
            )
    return rows
