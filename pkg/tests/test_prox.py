import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from nysopt import Box, box_project, box_recession_distance, box_support, simplex_project, soft_threshold
from nysopt.errors import DataError

from _oracles import simplex_project_sorted

finite_vecs = hnp.arrays(
    np.float64,
    st.integers(1, 12),
    elements=st.floats(-10, 10, allow_nan=False, allow_infinity=False),
)


def test_soft_threshold_examples():
    assert np.allclose(soft_threshold(np.array([2.0, -0.5, 0.5]), 1.0), [1.0, 0.0, 0.0])
    v = np.array([0.3, -1.7, 2.2])
    assert np.array_equal(soft_threshold(v, 0.0), v)
    assert np.allclose(soft_threshold(np.array([-3.0]), 1.0), [-2.0])


def test_soft_threshold_rejects_negative_kappa():
    with pytest.raises(DataError):
        soft_threshold(np.ones(2), -0.1)


def test_soft_threshold_minimizes_scalar_objective():
    # two-stage grid search on kappa |z| + (1/2)(z - v)^2, refined to 1e-6
    for v in [-2.3, -0.4, 0.0, 0.7, 3.1]:
        for kappa in [0.0, 0.5, 1.5]:
            coarse = np.linspace(-abs(v) - kappa - 1, abs(v) + kappa + 1, 4001)
            objs = kappa * np.abs(coarse) + 0.5 * (coarse - v) ** 2
            z0 = coarse[np.argmin(objs)]
            fine = np.linspace(z0 - 2e-3, z0 + 2e-3, 4001)
            objs = kappa * np.abs(fine) + 0.5 * (fine - v) ** 2
            z_star = fine[np.argmin(objs)]
            got = soft_threshold(np.array([v]), kappa)[0]
            assert abs(got - z_star) <= 1e-6


def test_box_project_examples():
    box = Box(np.zeros(3), np.ones(3))
    assert np.allclose(box_project(np.array([-1.0, 0.5, 2.0]), box), [0.0, 0.5, 1.0])
    eq = Box(np.full(2, 3.0), np.full(2, 3.0))
    assert np.allclose(box_project(np.array([-7.0, 11.0]), eq), [3.0, 3.0])
    free = Box(np.full(2, -np.inf), np.full(2, np.inf))
    v = np.array([4.2, -9.9])
    assert np.array_equal(box_project(v, free), v)


def test_box_requires_ordered_bounds():
    with pytest.raises(DataError):
        Box(np.array([1.0]), np.array([0.0]))


@given(finite_vecs)
@settings(max_examples=60, deadline=None)
def test_box_project_idempotent(v):
    box = Box(np.full(v.size, -1.0), np.full(v.size, 2.0))
    once = box_project(v, box)
    assert np.array_equal(box_project(once, box), once)


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_projections_nonexpansive(data):
    n = data.draw(st.integers(1, 10))
    elems = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
    a = np.array(data.draw(st.lists(elems, min_size=n, max_size=n)))
    b = np.array(data.draw(st.lists(elems, min_size=n, max_size=n)))
    box = Box(np.full(n, -2.0), np.full(n, 5.0))
    assert np.linalg.norm(box_project(a, box) - box_project(b, box)) <= np.linalg.norm(a - b) + 1e-12
    pa, pb = simplex_project(a), simplex_project(b)
    assert np.linalg.norm(pa - pb) <= np.linalg.norm(a - b) + 1e-9


def test_simplex_examples():
    v = np.array([0.5, 0.5])
    assert np.array_equal(simplex_project(v), v)
    assert np.allclose(simplex_project(np.array([2.0, 0.0])), [1.0, 0.0], atol=1e-8)


def test_simplex_matches_sort_oracle(rng):
    for _ in range(100):
        n = int(rng.integers(1, 21))
        v = rng.uniform(-3, 3, size=n)
        got = simplex_project(v, tol=1e-8)
        expect = simplex_project_sorted(v)
        assert np.allclose(got, expect, atol=1e-6)


def test_simplex_kkt_structure(rng):
    for _ in range(50):
        v = rng.uniform(-2, 2, size=12)
        z = simplex_project(v, tol=1e-8)
        assert np.all(z >= 0)
        assert abs(z.sum() - 1.0) <= 1e-8
        # active coordinates share a common threshold nu with z = (v - nu)_+
        active = z > 0
        nus = v[active] - z[active]
        assert np.ptp(nus) <= 1e-7
        if active.any():
            nu = nus.mean()
            assert np.all(v[~active] <= nu + 1e-7)


def test_simplex_idempotent(rng):
    for _ in range(20):
        v = rng.uniform(-2, 2, size=9)
        z = simplex_project(v, tol=1e-8)
        assert np.array_equal(simplex_project(z, tol=1e-8), z)


def test_box_support_examples():
    box = Box(np.zeros(2), np.ones(2))
    assert box_support(np.array([1.0, -1.0]), box) == pytest.approx(1.0)
    assert box_support(np.array([-3.0]), Box(np.array([-1.0]), np.array([2.0]))) == pytest.approx(3.0)
    unbounded = Box(np.array([0.0]), np.array([np.inf]))
    assert box_support(np.array([0.5]), unbounded) == np.inf
    # inf * 0 convention: a zero coordinate never contributes
    assert box_support(np.array([0.0]), unbounded) == 0.0


def test_box_support_dominates_inner_products(rng):
    box = Box(np.array([-1.0, 0.0, -3.0]), np.array([2.0, 1.0, 0.5]))
    for _ in range(100):
        y = rng.standard_normal(3)
        x = rng.uniform(box.l, box.u)
        assert box_support(y, box) >= float(y @ x) - 1e-12


def test_recession_distance_examples():
    finite = Box(np.zeros(2), np.ones(2))
    assert box_recession_distance(np.array([1.0, -2.0]), finite) == pytest.approx(np.sqrt(5))
    nonneg = Box(np.zeros(2), np.full(2, np.inf))
    assert box_recession_distance(np.array([1.0, -2.0]), nonneg) == pytest.approx(2.0)
    free = Box(np.full(2, -np.inf), np.full(2, np.inf))
    assert box_recession_distance(np.array([7.0, -4.0]), free) == 0.0
    nonpos = Box(np.array([-np.inf]), np.array([0.0]))
    assert box_recession_distance(np.array([3.0]), nonpos) == pytest.approx(3.0)
