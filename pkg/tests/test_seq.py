import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lscheck.errors import DimensionMismatch, DomainError
from lscheck.seq import TruncSeq, convex_combo, sup_dist, sup_norm, unit_ray

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


def vecs(K):
    return arrays(np.float64, K, elements=finite)


def test_sup_norm_examples():
    assert sup_norm([0, 0, 0]) == 0
    assert sup_norm([0, 0, 3, 0]) == 3
    assert sup_norm(unit_ray(3, 4)) == 3
    assert sup_norm([-0.5, 2, -7]) == 7


def test_sup_dist_examples():
    u = TruncSeq([1.0, -2.0, 3.0])
    assert sup_dist(u, u) == 0
    assert sup_dist([1, 0], [0, 0]) == 1
    r = 0.25
    assert sup_dist(unit_ray(2, 4), [0, 2 - r, 0, 0]) == r


def test_sup_dist_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        sup_dist([0, 0], [0, 0, 0])


def test_unit_ray():
    assert unit_ray(2, 3).tolist() == [0, 2, 0]
    assert unit_ray(5, 5).tolist() == [0, 0, 0, 0, 5]
    with pytest.raises(IndexError):
        unit_ray(6, 5)
    with pytest.raises(IndexError):
        unit_ray(1, 5)


def test_convex_combo_examples():
    u, v = TruncSeq([0, 2]), TruncSeq([2, 0])
    assert convex_combo(u, v, 0.0) == v
    assert convex_combo(u, v, 1.0) == u
    assert convex_combo(u, v, 0.5).tolist() == [1, 1]
    with pytest.raises(DomainError):
        convex_combo(u, v, 1.5)


def test_truncseq_rejects_bad_input():
    with pytest.raises(ValueError):
        TruncSeq([1.0])
    with pytest.raises(ValueError):
        TruncSeq([0.0, float("nan")])
    v = TruncSeq([1, 2, 3])
    assert v.coord(1) == 1 and v.coord(3) == 3
    with pytest.raises(ValueError):
        v.coords[0] = 5


# multiples of 2^-10 below 2^20: every difference and sum is exact in binary64
dyadic = st.integers(-(2**30), 2**30).map(lambda n: n / 1024.0)


@settings(max_examples=500)
@given(*(st.lists(dyadic, min_size=6, max_size=6) for _ in range(3)))
def test_triangle_inequality_exact(u, v, w):
    assert sup_dist(u, v) <= sup_dist(u, w) + sup_dist(w, v)


@settings(max_examples=300)
@given(vecs(6), vecs(6), vecs(6))
def test_triangle_inequality_rounded(u, v, w):
    # three independently rounded subtractions: allow a few ulps of the largest magnitude
    scale = max(np.max(np.abs(u)), np.max(np.abs(v)), np.max(np.abs(w)), 1.0)
    assert sup_dist(u, v) <= sup_dist(u, w) + sup_dist(w, v) + 4 * np.spacing(scale)


def test_triangle_inequality_random_triples():
    rng = np.random.default_rng(0)
    for _ in range(2000):
        u, v, w = rng.uniform(-10, 10, (3, 8))
        assert sup_dist(u, v) <= sup_dist(u, w) + sup_dist(w, v) + 4 * np.spacing(20.0)


@settings(max_examples=300)
@given(vecs(5), vecs(5), st.floats(0, 1))
def test_convex_combo_norm_bound(u, v, lam):
    assert sup_norm(convex_combo(u, v, lam)) <= max(sup_norm(u), sup_norm(v)) * (1 + 1e-15) + 1e-12


@given(st.integers(2, 60))
def test_ray_norm_exact(k):
    assert sup_norm(unit_ray(k, 60)) == k
