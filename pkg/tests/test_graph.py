import math

import pytest
from hypothesis import given, strategies as st

from packcolor.graph import (
    DistanceSpec, GridEmbedding, distance, distance_array, forbidden_offsets, forbidden_table,
    grid_lower_bound, max_window_for_color, offset_csr, offset_distance, window_diameter,
)
from packcolor.oracles import bfs_distances


def test_spec_rejects_small_t():
    for bad in (1, 0, -3):
        with pytest.raises(ValueError):
            DistanceSpec(bad)
    with pytest.raises(ValueError):
        DistanceSpec(2.5)


@pytest.mark.parametrize("t,a,b,d", [(5, 0, 5, 1), (5, 0, 7, 3), (6, 0, 3, 3), (5, 7, 0, 3), (4, -3, 5, 2)])
def test_distance_examples(t, a, b, d):
    assert distance(t, a, b) == d


def test_scan_and_closed_form_match_bfs_exhaustively():
    for t in range(2, 21):
        bfs = list(bfs_distances(t, 2000))
        assert distance_array(t, 2000).tolist() == bfs
        assert [offset_distance(t, n) for n in range(0, 2001, 7)] == bfs[::7]


@given(st.integers(2, 20), st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_metric_axioms(t, a, b, c):
    assert distance(t, a, a) == 0
    assert distance(t, a, b) == distance(t, b, a)
    assert distance(t, a, c) <= distance(t, a, b) + distance(t, b, c)


@given(st.integers(2, 20), st.integers(0, 2000))
def test_distance_at_least_jump_count(t, n):
    assert distance(t, 0, n) >= math.ceil(n / t)


@pytest.mark.parametrize("t,v,offs", [(5, 1, (1, 5)), (5, 2, (1, 2, 4, 5, 6, 10)), (2, 1, (1, 2))])
def test_forbidden_offsets_examples(t, v, offs):
    assert forbidden_offsets(t, v).offsets == offs


@given(st.integers(2, 12), st.integers(1, 15))
def test_forbidden_offsets_exact_and_monotone(t, v):
    f = forbidden_offsets(t, v)
    g = forbidden_offsets(t, v + 1)
    d = bfs_distances(t, (v + 1) * t)
    assert set(f) == {n for n in range(1, v * t + 1) if d[n] <= v}
    assert max(f) <= v * t
    assert set(f) <= set(g)
    assert all(n in f for n in f) and 0 not in f and v * t + 1 not in f


def test_dense_tables_agree_with_sets():
    table = forbidden_table(7, 6)
    ptr, vals = offset_csr(7, 6)
    for v in range(1, 7):
        offs = forbidden_offsets(7, v).offsets
        assert tuple(int(n) for n in table[v].nonzero()[0]) == offs
        assert tuple(vals[ptr[v]:ptr[v + 1]].tolist()) == offs
    assert ptr[1] == 0


@pytest.mark.parametrize("t,m,d", [(6, 3, 2), (8, 4, 3), (5, 1, 0), (11, 1, 0)])
def test_window_diameter(t, m, d):
    assert window_diameter(t, m) == d


@pytest.mark.parametrize("t,v,w", [(6, 5, 21), (8, 7, 36), (6, 2, 3)])
def test_max_window_examples(t, v, w):
    assert max_window_for_color(t, v) == w


def test_max_window_closed_forms():
    assert [max_window_for_color(6, i) for i in range(2, 15)] == [6 * i - 9 for i in range(2, 15)]
    assert [max_window_for_color(8, i) for i in range(3, 15)] == [8 * i - 20 for i in range(3, 15)]


@given(st.integers(2, 15), st.integers(1, 20))
def test_max_window_is_largest_window_within_diameter(t, v):
    w = max_window_for_color(t, v)
    assert window_diameter(t, w) <= v < window_diameter(t, w + 1)


@pytest.mark.parametrize("t", [9, 10, 575])
def test_grid_bound(t):
    g = grid_lower_bound(t)
    assert g.bound == 12
    assert g.embedding(1, 0) == t and g.embedding(0, 1) == 1
    assert len(set(g.embedding.vertices())) == 15 * 9


def test_no_grid_bound_below_nine():
    assert grid_lower_bound(8) is None
    assert grid_lower_bound(2) is None


def test_embedding_check_catches_tall_grid():
    with pytest.raises(ValueError):
        GridEmbedding(DistanceSpec(4), 3, 6).check()
