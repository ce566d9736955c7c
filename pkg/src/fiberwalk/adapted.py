"""Adapted move sets: bounded integer combinations of a Markov basis."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .fiber import Fiber, enumerate_fiber
from .graph import FiberGraph, build_fiber_graph, diameter, is_complete
from .linalg import IntegerMatrix, lattice_basis
from .moves import MoveSet

COEFFICIENT_BUDGET = 10 ** 7


class BudgetExceededError(ValueError):
    """The coefficient set of a requested power move set is too large."""


def cross_polytope_size(k: int, level: int) -> int:
    """``|{lam in Z^k : |lam|_1 <= level}|``."""
    if level < 0:
        return 0
    return sum(2 ** i * comb(k, i) * comb(level, i) for i in range(min(k, level) + 1))


def sphere_size(k: int, s: int) -> int:
    """``|{lam in Z^k : |lam|_1 == s}|``."""
    if s == 0:
        return 1
    return sum(2 ** i * comb(k, i) * comb(s - 1, i - 1) for i in range(1, min(k, s) + 1))


@dataclass(frozen=True)
class AdaptedBasis:
    """The set ``M(level)`` of distinct combinations ``sum lam_j m_j`` with ``|lam|_1 <= level``.

    ``witnesses`` maps every element to one coefficient vector of minimal
    1-norm that produces it.
    """

    base: tuple[tuple[int, ...], ...]
    level: int
    moves: MoveSet
    provenance: str = "direct"
    witnesses: dict = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.moves)


def power_moves(M: MoveSet | Sequence[Sequence[int]], level: int,
                budget: int = COEFFICIENT_BUDGET, dim: int | None = None) -> AdaptedBasis:
    """All distinct vectors ``sum_j lam_j m_j`` with integer ``lam`` and ``|lam|_1 <= level``.

    Built level by level: ``M(l) = M(l-1) + ({0} u +-M)``, which reaches
    every coefficient vector because each one of norm ``l`` is one of norm
    ``l - 1`` plus a signed unit vector.
    """
    if level < 0:
        raise ValueError("level must be nonnegative")
    if isinstance(M, MoveSet):
        base, dim = M.moves, M.dim
    else:
        base = tuple(tuple(int(x) for x in m) for m in M)
        if dim is None:
            if not base:
                raise ValueError("cannot infer the dimension of an empty base")
            dim = len(base[0])
    k = len(base)
    if cross_polytope_size(k, level) > budget:
        raise BudgetExceededError(
            f"{cross_polytope_size(k, level)} coefficient vectors for k={k}, level={level} exceed {budget}")

    zero = (0,) * dim
    steps = []
    for j, m in enumerate(base):
        for sign in (1, -1):
            coeff = [0] * k
            coeff[j] = sign
            steps.append((tuple(sign * x for x in m), tuple(coeff)))
    witnesses = {zero: (0,) * k}
    frontier = [zero]
    for _ in range(level):
        new = []
        for v in frontier:
            lam = witnesses[v]
            for step, e in steps:
                w = tuple(a + b for a, b in zip(v, step))
                if w not in witnesses:
                    witnesses[w] = tuple(a + b for a, b in zip(lam, e))
                    new.append(w)
        if not new:
            break
        frontier = sorted(new)
    moves = MoveSet(tuple(sorted(witnesses)), dim, symmetric_closed=True)
    return AdaptedBasis(base, level, moves, "direct", witnesses)


def naive_power_moves(base: Sequence[Sequence[int]], level: int, dim: int) -> set[tuple[int, ...]]:
    """Reference enumeration over the whole coefficient box ``[-level, level]^k``."""
    from itertools import product

    out = {(0,) * dim}
    k = len(base)
    for lam in product(range(-level, level + 1), repeat=k):
        if sum(abs(x) for x in lam) <= level:
            out.add(tuple(sum(lam[j] * base[j][t] for j in range(k)) for t in range(dim)))
    return out


@dataclass(frozen=True)
class FiberAdaptation:
    fiber: Fiber
    diameter: int
    adapted: AdaptedBasis
    graph: FiberGraph

    @property
    def closed_form_slem(self) -> Fraction:
        """SLEM of the walk on the complete adapted graph, ``1 - |F| / |M^b|``."""
        return 1 - Fraction(len(self.fiber), len(self.adapted))


def adapt_to_fiber(A: IntegerMatrix, b: Sequence[int], M: MoveSet,
                   budget: int = COEFFICIENT_BUDGET) -> FiberAdaptation:
    """Blow ``M`` up to the level of the fiber-graph diameter; the result is complete."""
    F = enumerate_fiber(A.certified(), b)
    if len(F) == 0:
        raise ValueError(f"fiber of {tuple(b)} is empty")
    G = build_fiber_graph(F, M)
    diam = diameter(G)
    adapted = power_moves(M, diam, budget)
    H = build_fiber_graph(F, adapted.moves)
    if not is_complete(H):
        raise AssertionError("adapted fiber graph is not complete")
    return FiberAdaptation(F, diam, adapted, H)


def lattice_superset(M: MoveSet, level: int, budget: int = COEFFICIENT_BUDGET) -> AdaptedBasis:
    """``B(C * level)`` for a lattice basis ``B`` of ``M``; contains ``M(level)``."""
    lb = lattice_basis(M.moves)
    result = power_moves(lb.basis, lb.constant * level, budget, dim=M.dim)
    return AdaptedBasis(result.base, result.level, result.moves, "lattice-superset", result.witnesses)


def sample_cross_polytope(rank: int, level: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Uniform draw from ``{u in Z^rank : |u|_1 <= level}``.

    Picks the 1-norm with probability proportional to the sphere sizes,
    then the support size, the support, a uniform composition and signs.
    """
    if rank < 1 or level < 0:
        raise ValueError("need rank >= 1 and level >= 0")
    sizes = [sphere_size(rank, s) for s in range(level + 1)]
    s = _pick(sizes, rng)
    if s == 0:
        return (0,) * rank
    support_weights = [2 ** i * comb(rank, i) * comb(s - 1, i - 1) if i >= 1 else 0
                       for i in range(min(rank, s) + 1)]
    i = _pick(support_weights, rng)
    support = sorted(rng.choice(rank, size=i, replace=False).tolist())
    cuts = sorted(rng.choice(np.arange(1, s), size=i - 1, replace=False).tolist()) if i > 1 else []
    parts = [b - a for a, b in zip([0] + cuts, cuts + [s])]
    signs = rng.integers(0, 2, size=i)
    out = [0] * rank
    for pos, part, sg in zip(support, parts, signs):
        out[pos] = part if sg else -part
    return tuple(out)


def _pick(weights: Sequence[int], rng: np.random.Generator) -> int:
    # exact integer inverse transform; weights can exceed float precision
    total = sum(weights)
    r = int(rng.integers(0, total)) if total < 2 ** 63 else _big_randbelow(total, rng)
    for idx, w in enumerate(weights):
        if r < w:
            return idx
        r -= w
    raise AssertionError("unreachable")


def _big_randbelow(n: int, rng: np.random.Generator) -> int:
    bits = n.bit_length()
    while True:
        words = rng.integers(0, 2 ** 32, size=(bits + 31) // 32, dtype=np.uint64)
        r = 0
        for w in words.tolist():
            r = (r << 32) | w
        r >>= 32 * len(words) - bits
        if r < n:
            return r
