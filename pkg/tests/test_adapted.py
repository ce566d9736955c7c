from collections import Counter
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from scipy.stats import chisquare

from fiberwalk.adapted import (
    BudgetExceededError,
    adapt_to_fiber,
    cross_polytope_size,
    lattice_superset,
    naive_power_moves,
    power_moves,
    sample_cross_polytope,
    sphere_size,
)
from fiberwalk.graph import is_complete
from fiberwalk.models import build_single_row
from fiberwalk.moves import MoveSet

a2 = build_single_row(2)
a3 = build_single_row(3)


def test_small_power_sets():
    P = power_moves(MoveSet(((1, -1),), 2), 2)
    assert set(P.moves) == {(0, 0), (1, -1), (-1, 1), (2, -2), (-2, 2)}
    P = power_moves(a3.markov_basis, 1)
    assert len(P) == 5
    assert set(P.moves) == {(0, 0, 0)} | set(a3.markov_basis.effective_moves)


def test_growth_is_quadratic_for_rank_two():
    for level in (8, 16):
        ratio = len(power_moves(a3.markov_basis, 2 * level)) / len(power_moves(a3.markov_basis, level))
        assert abs(ratio - 4) <= 0.2 * 4


def test_witnesses_have_minimal_norm():
    base = [(1, -1, 0), (1, 0, -1), (0, 1, -1)]
    P = power_moves(base, 3)
    best: dict = {}
    for lam in product(range(-3, 4), repeat=3):
        norm = sum(map(abs, lam))
        if norm <= 3:
            v = tuple(sum(lam[j] * base[j][t] for j in range(3)) for t in range(3))
            best[v] = min(best.get(v, norm), norm)
    assert set(P.moves) == set(best)
    for v, lam in P.witnesses.items():
        assert tuple(sum(lam[j] * base[j][t] for j in range(3)) for t in range(3)) == v
        assert sum(map(abs, lam)) == best[v]


@pytest.mark.parametrize("k, level", [(1, 0), (1, 5), (2, 2), (3, 4), (4, 3)])
def test_cross_polytope_counts(k, level):
    box = [lam for lam in product(range(-level, level + 1), repeat=k) if sum(map(abs, lam)) <= level]
    assert cross_polytope_size(k, level) == len(box)
    assert sum(sphere_size(k, s) for s in range(level + 1)) == len(box)


def test_budget():
    with pytest.raises(BudgetExceededError):
        power_moves(a3.markov_basis, 5, budget=10)


def test_adapt_a2():
    res = adapt_to_fiber(a2.matrix, (2,), a2.markov_basis)
    assert res.diameter == 2
    assert set(res.adapted.moves) == set(power_moves(a2.markov_basis, 2).moves)
    assert is_complete(res.graph)
    assert res.closed_form_slem == Fraction(2, 5)


def test_adapt_a3():
    res = adapt_to_fiber(a3.matrix, (2,), a3.markov_basis)
    assert res.diameter == 4
    assert is_complete(res.graph)


def test_lattice_superset_example():
    M = MoveSet.from_vectors([(1, -1), (2, -2)])
    sup = lattice_superset(M, 1)
    assert set(sup.moves) == {(0, 0), (1, -1), (-1, 1), (2, -2), (-2, 2)}
    assert set(power_moves(M, 1).moves) <= set(sup.moves)


@pytest.mark.parametrize("seed", range(5))
def test_lattice_superset_contains_power_set(seed):
    rng = np.random.default_rng(seed)
    vecs = [tuple(rng.integers(-2, 3, size=3).tolist()) for _ in range(int(rng.integers(1, 4)))]
    vecs = [v for v in vecs if any(v)] or [(1, -1, 0)]
    M = MoveSet.from_vectors(vecs, 3)
    for level in (1, 2):
        assert set(power_moves(M, level).moves) <= set(lattice_superset(M, level, budget=10 ** 6).moves)


@pytest.mark.parametrize("seed", range(10))
def test_power_moves_match_naive(seed):
    rng = np.random.default_rng(100 + seed)
    dim = int(rng.integers(2, 5))
    base = [tuple(rng.integers(-2, 3, size=dim).tolist()) for _ in range(int(rng.integers(1, 4)))]
    level = int(rng.integers(0, 4))
    assert set(power_moves(base, level, dim=dim).moves) == naive_power_moves(base, level, dim)


def test_sampler_degenerate():
    rng = np.random.default_rng(0)
    assert all(sample_cross_polytope(1, 0, rng) == (0,) for _ in range(20))


def test_sampler_uniform():
    rng = np.random.default_rng(2024)
    points = [lam for lam in product(range(-2, 3), repeat=2) if sum(map(abs, lam)) <= 2]
    assert len(points) == 13
    draws = Counter(sample_cross_polytope(2, 2, rng) for _ in range(13000))
    assert set(draws) == set(points)
    observed = [draws[p] for p in points]
    assert chisquare(observed).pvalue > 0.001


def test_sampler_large_level_in_range():
    rng = np.random.default_rng(7)
    for _ in range(200):
        v = sample_cross_polytope(5, 40, rng)
        assert sum(map(abs, v)) <= 40
