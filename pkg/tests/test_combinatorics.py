import numpy as np
import pytest

from tophom.combinatorics import (
    binom_table,
    rank_rows,
    rank_subset,
    subface_rank_rows,
    unrank_subset,
)

from oracles import colex_subsets


def test_rank_first_subset_is_zero():
    assert rank_subset((0, 1, 2)) == 0


def test_rank_small_enumeration():
    # colex order on 3-subsets of {0..3}: {0,1,2},{0,1,3},{0,2,3},{1,2,3}
    assert rank_subset((0, 1, 3)) == 1
    assert rank_subset((1, 2, 3)) == 3


def test_rank_last_subset():
    assert rank_subset((2, 3, 4), n=5) == 9  # C(5,3) - 1, via brute enumeration


def test_rank_matches_colex_enumeration():
    for i, s in enumerate(colex_subsets(7, 3)):
        assert rank_subset(s) == i
        assert unrank_subset(i, 3, 7) == s


def test_unrank_examples():
    assert unrank_subset(0, 3, 4) == (0, 1, 2)
    assert unrank_subset(3, 3, 4) == (1, 2, 3)


def test_roundtrip_exhaustive():
    # mutually inverse bijections for n <= 12, subset sizes up to 5
    for n in (5, 8, 12):
        for k in range(1, 6):
            for i, s in enumerate(colex_subsets(n, k)):
                assert rank_subset(s) == i
                assert unrank_subset(i, k, n) == s


def test_roundtrip_3_subsets_of_8():
    for s in colex_subsets(8, 3):
        assert unrank_subset(rank_subset(s), 3, 8) == s


def test_rank_prefix_property():
    # ranks over [0, m) are a prefix of ranks over [0, m+1)
    small = [rank_subset(s) for s in colex_subsets(6, 3)]
    big = {s: rank_subset(s) for s in colex_subsets(7, 3)}
    for s, r in zip(colex_subsets(6, 3), small):
        assert big[s] == r


@pytest.mark.parametrize(
    "bad", [(1, 1, 2), (2, 1, 0), (-1, 0, 2), ()]
)
def test_rank_invalid_input(bad):
    with pytest.raises(ValueError):
        rank_subset(bad)


def test_rank_out_of_range_vertex():
    with pytest.raises(ValueError):
        rank_subset((0, 1, 5), n=5)


def test_unrank_out_of_range():
    with pytest.raises(ValueError):
        unrank_subset(4, 3, 4)
    with pytest.raises(ValueError):
        unrank_subset(-1, 3, 4)


def test_vectorized_ranks_match_scalar():
    table = binom_table(9, 4)
    faces = np.array(colex_subsets(9, 3), dtype=np.int64)
    got = rank_rows(faces, table)
    assert list(got) == [rank_subset(tuple(f)) for f in faces]


def test_subface_rank_rows_matches_scalar():
    table = binom_table(9, 4)
    faces = np.array(colex_subsets(9, 3), dtype=np.int64)
    sub = subface_rank_rows(faces, table)
    for row, face in zip(sub, faces):
        face = tuple(int(v) for v in face)
        for i in range(3):
            assert row[i] == rank_subset(face[:i] + face[i + 1 :])
