"""Edge expansion, translated-fiber boundaries and the bounds built from them."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from numba import njit

from .fiber import Fiber
from .graph import DisconnectedGraphError, FiberGraph, bfs_distances
from .moves import MoveSet, complexity

DEFAULT_SUBSET_LIMIT = 24


class SubsetLimitError(ValueError):
    """Graph too large for exhaustive subset enumeration."""


class ContainmentError(ValueError):
    """The translated small fiber is not contained in the big fiber."""


class SizeHypothesisError(ValueError):
    """The small fiber is more than half the size of the big fiber."""


def subset_limit() -> int:
    return int(os.environ.get("FW_SUBSET_LIMIT", DEFAULT_SUBSET_LIMIT))


@njit(cache=True)
def _gray_code_min_ratio(W, n):
    deg = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for u in range(n):
            deg[v] += W[v, u]
    conn = np.zeros(n, dtype=np.int64)
    in_set = np.zeros(n, dtype=np.bool_)
    size = 0
    cut = 0
    mask = 0
    best_num = -1
    best_den = 1
    best_mask = 0
    total = 1 << n
    for t in range(1, total):
        v = 0
        while not (t >> v) & 1:
            v += 1
        if in_set[v]:
            cut += 2 * conn[v] - deg[v]
            in_set[v] = False
            size -= 1
            for u in range(n):
                conn[u] -= W[u, v]
        else:
            cut += deg[v] - 2 * conn[v]
            in_set[v] = True
            size += 1
            for u in range(n):
                conn[u] += W[u, v]
        mask ^= 1 << v
        if 2 * size <= n:
            if best_num < 0 or cut * best_den < best_num * size:
                best_num = cut
                best_den = size
                best_mask = mask
    return best_num, best_den, best_mask


@dataclass(frozen=True)
class ExpansionResult:
    value: Fraction
    subset: tuple[int, ...]
    crossing_edges: int


def cut_size(G: FiberGraph, subset: Sequence[int]) -> int:
    """Number of non-loop edges (with multiplicity) leaving ``subset``."""
    inside = set(subset)
    return sum(mult for v in inside for w, mult in G.neighbors[v] if w not in inside)


def edge_expansion_exact(G: FiberGraph, limit: Optional[int] = None) -> ExpansionResult:
    """Exact edge expansion ``min |E(S)| / |S|`` over ``0 < 2|S| <= |V|``.

    All subsets are visited in Gray-code order, updating the cut in O(n)
    per step; ties keep the first minimiser found.
    """
    limit = subset_limit() if limit is None else limit
    n = G.n
    if n > limit:
        raise SubsetLimitError(f"{n} nodes exceeds the exhaustive limit of {limit}")
    if n < 2:
        raise ValueError("edge expansion needs at least two nodes")
    W = G.adjacency()
    np.fill_diagonal(W, 0)
    num, den, mask = _gray_code_min_ratio(W, n)
    subset = tuple(v for v in range(n) if (int(mask) >> v) & 1)
    return ExpansionResult(Fraction(int(num), int(den)), subset, int(num))


def slem_lower_bound_from_expansion(G: FiberGraph, limit: Optional[int] = None) -> Fraction:
    """``1 - (2 / degree) * h(G)``, a lower bound on the SLEM of a connected regular graph."""
    dist = bfs_distances(G, 0)
    if min(dist) < 0:
        raise DisconnectedGraphError(0, dist.index(-1))
    h = edge_expansion_exact(G, limit).value
    return 1 - Fraction(2, G.degree) * h


# ---------------------------------------------------------------------------
# boundaries of translated fibers
# ---------------------------------------------------------------------------

def _shift(v, u):
    return tuple(a + b for a, b in zip(v, u))


def _check_translate(F_small: Fiber, u: Sequence[int], F_big: Fiber) -> None:
    if any(x < 0 for x in u):
        raise ContainmentError(f"translation vector {tuple(u)} is not nonnegative")
    for p in F_small.points:
        if _shift(p, u) not in F_big.index:
            raise ContainmentError(f"{_shift(p, u)} = u + {p} is not in the big fiber")


def boundary(F_small: Fiber, u: Sequence[int], F_big: Fiber, M: MoveSet) -> tuple[tuple[int, ...], ...]:
    """Points ``v`` of ``u + F_small`` with a move ``m`` such that ``v + m``
    is nonnegative but outside ``u + F_small``."""
    u = tuple(int(x) for x in u)
    _check_translate(F_small, u, F_big)
    moves = M.effective_moves
    out = []
    for p in F_small.points:
        v = _shift(p, u)
        for m in moves:
            w = _shift(v, m)
            if min(w) >= 0 and tuple(a - b for a, b in zip(w, u)) not in F_small.index:
                out.append(v)
                break
    return tuple(sorted(out))


def boundary_slice_superset_size(F_small: Fiber, u: Sequence[int], M: MoveSet) -> int:
    """Size of the union of the slices ``w_j = r`` (``j`` in supp(u), ``r <= C(M)``) of ``F_small``.

    The boundary of ``u + F_small`` lies inside ``u`` plus this union.
    """
    support = [j for j, x in enumerate(u) if x != 0]
    if not support:
        return 0
    c = complexity(M)
    return sum(1 for w in F_small.points if any(w[j] <= c for j in support))


def boundary_slice_superset(F_small: Fiber, u: Sequence[int], M: MoveSet) -> set[tuple[int, ...]]:
    """The translated union itself, for containment checks."""
    support = [j for j, x in enumerate(u) if x != 0]
    if not support:
        return set()
    c = complexity(M)
    return {_shift(w, u) for w in F_small.points if any(w[j] <= c for j in support)}


def expansion_upper_bound(F_small: Fiber, u: Sequence[int], F_big: Fiber, M: MoveSet) -> Fraction:
    """``degree * |boundary| / |F_small|`` bounds h of the big fiber graph from above.

    For a one-sided basis the degree is ``2|M|``.  Needs
    ``2 |F_small| <= |F_big|`` and ``u + F_small`` inside ``F_big``.
    """
    if len(F_small) == 0:
        raise ValueError("small fiber is empty")
    if 2 * len(F_small) > len(F_big):
        raise SizeHypothesisError(f"2 * {len(F_small)} > {len(F_big)}")
    bd = boundary(F_small, u, F_big, M)
    return Fraction(M.degree * len(bd), len(F_small))
