from math import comb

import numpy as np
import pytest

from tophom.complexes import (
    Complex,
    coface_map,
    cofaces,
    degree,
    from_faces,
    sample_complex,
)


def test_sample_c_zero_is_empty():
    x = sample_complex(20, 2, 0.0, seed=1)
    assert x.num_faces == 0


def test_sample_c_equals_n_is_full():
    x = sample_complex(8, 2, 8.0, seed=1)
    assert x.num_faces == comb(8, 3)


def test_sample_p_above_one_rejected():
    with pytest.raises(ValueError):
        sample_complex(10, 2, 11.0, seed=1)
    with pytest.raises(ValueError):
        sample_complex(10, 2, -0.1, seed=1)


def test_sample_mean_face_count():
    # E[f_d] = C(100,3) * 3/100 = 4851, sigma per trial ~ 68.6
    counts = [sample_complex(100, 2, 3.0, seed=s).num_faces for s in range(200)]
    mean = np.mean(counts)
    se = np.sqrt(4851 * (1 - 0.03)) / np.sqrt(200)
    assert abs(mean - 4851) < 3 * se


def test_sample_deterministic():
    a = sample_complex(30, 2, 2.0, seed=77)
    b = sample_complex(30, 2, 2.0, seed=77)
    assert np.array_equal(a.face_ranks, b.face_ranks)


def test_degree_empty_complex():
    x = sample_complex(6, 2, 0.0, seed=0)
    assert degree(x, (0, 1)) == 0
    assert degree(x, (3, 5)) == 0


def test_degree_simplex_boundary():
    x = from_faces(4, 2, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    for e in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]:
        assert degree(x, e) == 2


def test_degree_single_face():
    x = from_faces(4, 2, [(0, 1, 2)])
    assert degree(x, (0, 1)) == 1
    assert degree(x, (0, 3)) == 0


def test_cofaces_full_complex():
    x = from_faces(5, 2, [f for f in __import__("itertools").combinations(range(5), 3)])
    assert cofaces(x, (0, 1)) == [(0, 1, 2), (0, 1, 3), (0, 1, 4)]


def test_cofaces_matches_degree_on_random_complex():
    x = sample_complex(9, 2, 4.0, seed=5)
    from itertools import combinations

    for tau in combinations(range(9), 2):
        assert len(cofaces(x, tau)) == degree(x, tau)


def test_degree_sum_identity():
    # sum of (d-1)-face degrees = (d+1) * f_d
    from itertools import combinations

    for seed in range(5):
        x = sample_complex(10, 2, 3.0, seed=seed)
        total = sum(degree(x, tau) for tau in combinations(range(10), 2))
        assert total == 3 * x.num_faces


def test_coface_map_consistent():
    x = sample_complex(10, 2, 3.0, seed=3)
    cm = coface_map(x)
    assert sum(len(v) for v in cm.values()) == 3 * x.num_faces


def test_json_roundtrip():
    x = sample_complex(12, 2, 2.5, seed=9)
    y = Complex.from_json(x.to_json())
    assert y.n == x.n and y.d == x.d
    assert np.array_equal(y.face_ranks, x.face_ranks)


def test_invalid_face_rejected():
    with pytest.raises(ValueError):
        from_faces(5, 2, [(0, 1)])
    with pytest.raises(ValueError):
        from_faces(5, 2, [(0, 1, 7)])
    with pytest.raises(ValueError):
        from_faces(5, 2, [(2, 1, 0)])
