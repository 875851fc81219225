from math import comb

import numpy as np
import pytest

from tophom.collapse import (
    ALIVE,
    ISOLATED_AT_START,
    run_phases,
    s_statistic,
    theta_collapse,
    zeta_perturbation,
)
from tophom.complexes import from_faces, sample_complex

BOUNDARY_D3 = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def single_face():
    return from_faces(4, 2, [(0, 1, 2)])


def test_single_face_worked_example():
    t = run_phases(single_face())
    assert t.k_stop == 1
    # phase 1 collapses ({0,1}, {0,1,2}): colex-first free edge
    assert t.pairs_by_phase == (((0, 0),),)
    assert t.zeta_star == 5
    assert t.s_star == 0
    assert t.generation_of((0, 1, 2)) == 1
    assert t.generation_of((0, 1)) == 1  # collapsed
    assert t.generation_of((0, 2)) == 1  # isolated by the collapse
    assert t.generation_of((1, 2)) == 1
    assert t.generation_of((0, 3)) == ISOLATED_AT_START
    assert t.generation_of((1, 3)) == ISOLATED_AT_START


def test_single_face_zeta_bookkeeping():
    t = run_phases(single_face())
    assert t.zeta_by_phase == (3, 5)  # C0 = {03,13,23}, then two isolated edges
    assert t.zeta_with_removed(1) == 6
    assert t.s(0) == 1 - 6 + 3
    assert s_statistic(t, 1) == 0


def test_boundary_simplex_never_collapses():
    t = run_phases(from_faces(4, 2, BOUNDARY_D3))
    assert t.k_stop == 0
    assert t.zeta_star == 0
    assert t.s_star == 4 - 6 + 0 == -2
    for f in BOUNDARY_D3:
        assert t.generation_of(f) == ALIVE


def test_empty_complex():
    x = sample_complex(7, 2, 0.0, seed=0)
    t = run_phases(x)
    assert t.k_stop == 0
    assert t.zeta_star == comb(7, 2)
    assert t.s_star == 0
    assert t.generation_of((0, 1)) == ISOLATED_AT_START


def test_s_statistic_range_check():
    t = run_phases(single_face())
    with pytest.raises(ValueError):
        s_statistic(t, 2)
    with pytest.raises(ValueError):
        s_statistic(t, -1)


def test_theta_collapse_single_face():
    t = theta_collapse(single_face(), (0, 1))
    # ({0,2}, {0,1,2}) collapses instead; theta isolated after phase 1
    assert t.pairs_by_phase == (((1, 0),),)
    assert t.theta_isolated_phase == 1


def test_theta_collapse_boundary_simplex():
    t = theta_collapse(from_faces(4, 2, BOUNDARY_D3), (0, 1))
    assert t.k_stop == 0
    assert t.theta_isolated_phase is None


def test_theta_isolated_at_start():
    t = theta_collapse(single_face(), (0, 3))
    assert t.theta_isolated_phase == 0


def test_fd_minus_fdm1_invariant_and_monotonicity():
    for seed in range(30):
        rng = np.random.default_rng(seed)
        x = sample_complex(8, 2, rng.uniform(0, 6), seed=seed)
        t = run_phases(x)
        base = x.num_faces - comb(8, 2)
        for i in range(t.k_stop + 1):
            removed = t.collapsed_through(i)
            assert (x.num_faces - removed) - (comb(8, 2) - removed) == base
        zetas = [t.zeta(i) for i in range(t.k_stop + 1)]
        assert zetas == sorted(zetas)
        svals = [t.s(i) for i in range(t.k_stop + 1)]
        assert svals == sorted(svals)


def test_run_phases_deterministic():
    x = sample_complex(10, 2, 3.0, seed=4)
    t1, t2 = run_phases(x), run_phases(x)
    assert t1.pairs_by_phase == t2.pairs_by_phase
    assert t1.zeta_by_phase == t2.zeta_by_phase


def test_scan_order_does_not_change_zeta_star():
    # zeta_* and the generation partition sizes are order-independent
    for seed in range(10):
        x = sample_complex(9, 2, 3.0, seed=seed)
        base = run_phases(x)
        for order_seed in (1, 2, 3):
            t = run_phases(x, order_seed=order_seed)
            assert t.zeta_star == base.zeta_star
            assert t.s_star == base.s_star


def test_remaining_complex_counts():
    x = sample_complex(9, 2, 3.0, seed=11)
    t = run_phases(x)
    r = t.remaining_complex()
    assert r.num_faces == x.num_faces - t.collapsed_through(t.k_stop)


def test_deletion_never_delays_generations():
    # X' = X minus a face: generations in X' are <= generations in X
    rng = np.random.default_rng(0)
    checked = 0
    for seed in range(40):
        x = sample_complex(8, 2, 3.0, seed=seed)
        if x.num_faces == 0:
            continue
        tx = run_phases(x)
        drop = int(rng.integers(x.num_faces))
        keep = np.delete(x.face_ranks, drop)
        xp = type(x)(x.n, x.d, keep)
        txp = run_phases(xp)
        for r in txp.gen_subface:
            if r in tx.gen_subface:
                assert txp.gen_subface[r] <= tx.gen_subface[r]
                checked += 1
    assert checked > 50


def test_zeta_perturbation_on_empty_complex():
    x = sample_complex(5, 2, 0.0, seed=0)
    diff, ok = zeta_perturbation(x, (0, 1, 2), k_star=2)
    assert diff == 1  # C(5,2) before vs C(5,2)-1 after
    assert ok


def test_zeta_perturbation_boundary_minus_one():
    x = from_faces(4, 2, BOUNDARY_D3[:3])
    diff, ok = zeta_perturbation(x, (1, 2, 3), k_star=2)
    assert ok
    assert diff <= 3 * 2**2


def test_zeta_perturbation_rejects_present_face():
    x = from_faces(4, 2, BOUNDARY_D3)
    with pytest.raises(ValueError):
        zeta_perturbation(x, (0, 1, 2), k_star=2)


def test_perturbation_bound_property():
    rng = np.random.default_rng(123)
    done = 0
    while done < 500:
        seed = int(rng.integers(2**31))
        x = sample_complex(10, 2, float(rng.uniform(0, 6)), seed=seed)
        if x.num_faces == x.max_faces:
            continue
        while True:
            r = int(rng.integers(x.max_faces))
            if r not in set(int(v) for v in x.face_ranks):
                break
        from tophom.combinatorics import unrank_subset

        sigma = unrank_subset(r, 3, 10)
        diff, ok = zeta_perturbation(x, sigma, k_star=3)
        assert ok, (seed, sigma, diff)
        done += 1
