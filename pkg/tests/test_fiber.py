from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fiberwalk.fiber import (
    MissingCertificateError,
    box_bounds,
    enumerate_fiber,
    fiber_size_upper_bound,
    fit_growth_degree,
    ray_growth,
    slice_count,
)
from fiberwalk.linalg import IntegerMatrix
from fiberwalk.models import build_hemmecke, build_independence, build_single_row


def naive_fiber(A: IntegerMatrix, b) -> list[tuple[int, ...]]:
    """Brute force over the certificate box."""
    ub = box_bounds(A, b)
    if ub is None:
        return []
    return [u for u in product(*(range(x + 1) for x in ub)) if A.apply(u) == tuple(b)]


A2 = build_single_row(2).matrix
A3 = build_single_row(3).matrix
A22 = build_independence(2, 2).matrix


def test_path_fiber():
    F = enumerate_fiber(A2, (3,))
    assert F.points == ((0, 3), (1, 2), (2, 1), (3, 0))
    assert (1, 2) in F and (4, 0) not in F


def test_a3_size():
    assert len(enumerate_fiber(A3, (6,))) == 28 == 7 * 8 // 2


@pytest.mark.parametrize("i", range(0, 6))
def test_independence_fiber(i):
    F = enumerate_fiber(A22, (i, i, i, i))
    assert len(F) == i + 1
    assert sorted(F.points) == sorted(naive_fiber(A22, (i, i, i, i)))


def test_empty_and_uncertified():
    assert len(enumerate_fiber(A3, (-1,))) == 0
    with pytest.raises(MissingCertificateError):
        enumerate_fiber(IntegerMatrix.from_rows([[1, 1]]), (2,))


def test_hemmecke_fiber_sizes():
    # sizes frozen from the naive box enumeration
    for k, sizes in ((1, [4, 10, 20]), (2, [8, 34, 104])):
        model = build_hemmecke(k)
        b = [0] * (2 * k) + [1]
        for i, size in enumerate(sizes, start=1):
            assert len(enumerate_fiber(model.matrix, [i * x for x in b])) == size


def test_hemmecke_k1_naive():
    model = build_hemmecke(1)
    for i in (1, 2, 3):
        b = (0, 0, i)
        assert enumerate_fiber(model.matrix, b).points == tuple(sorted(naive_fiber(model.matrix, b)))


def test_slice_count():
    F = enumerate_fiber(A3, (4,))
    assert slice_count(F, 0, 0) == 5
    assert slice_count(F, 1, 0) == 5
    assert slice_count(enumerate_fiber(A2, (3,)), 1, 5) == 0
    for j in range(3):
        assert sum(slice_count(F, j, v) for v in range(5)) == len(F)
    with pytest.raises(IndexError):
        slice_count(F, 3, 0)


def test_ray_growth():
    assert ray_growth(A3, (1,), 3) == [1, 3, 6, 10]
    assert ray_growth(A2, (1,), 4) == [1, 2, 3, 4, 5]
    assert ray_growth(A22, (1, 1, 1, 1), 3) == [1, 2, 3, 4]


def test_fit_growth_degree():
    assert fit_growth_degree([1, 3, 6, 10, 15, 21]).degree == 2
    assert fit_growth_degree([1, 2, 3, 4, 5]).degree == 1
    assert not fit_growth_degree([1, 2, 4, 8, 16]).conclusive
    with pytest.raises(ValueError):
        fit_growth_degree([1, 2, 3])


def test_size_bound():
    assert fiber_size_upper_bound(A2, (3,)) == 9
    assert fiber_size_upper_bound(A3, (6,)) == 216
    assert fiber_size_upper_bound(A3, (0,)) == 1
    assert fiber_size_upper_bound(A22, (2, 2, 2, 2)) >= len(enumerate_fiber(A22, (2, 2, 2, 2)))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(1, 3), min_size=2, max_size=4),
    st.lists(st.integers(-2, 2), min_size=4, max_size=4),
    st.lists(st.integers(0, 3), min_size=4, max_size=4),
)
def test_enumeration_matches_brute_force(top, second, u):
    d = len(top)
    A = IntegerMatrix.from_rows([top, second[:d]]).certified()
    b = A.apply(u[:d])
    F = enumerate_fiber(A, b)
    assert F.points == tuple(sorted(naive_fiber(A, b)))
    assert tuple(u[:d]) in F
    assert len(set(F.points)) == len(F)
    assert np.all(F.array() >= 0)


def test_weights_are_certificate_products():
    A = build_hemmecke(1).matrix
    lam = A.certificate
    assert A.weights() == tuple(sum(l * A.entries[i][j] for i, l in enumerate(lam)) for j in range(A.d))
    assert all(w >= Fraction(1) for w in A.weights())
