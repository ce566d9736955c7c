"""Exact enumeration of fibers ``{u in N^d : A u = b}`` and related counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Optional, Sequence

import numpy as np

from .linalg import IntegerMatrix

IntVector = tuple[int, ...]


class MissingCertificateError(ValueError):
    """Enumeration needs a positivity certificate to bound the search box."""


@dataclass(frozen=True)
class Fiber:
    """A lexicographically sorted fiber with index lookup."""

    matrix: IntegerMatrix
    rhs: IntVector
    points: tuple[IntVector, ...]
    index: dict = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.index is None:
            object.__setattr__(self, "index", {p: i for i, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.index

    @property
    def dim(self) -> int:
        return self.matrix.d

    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(len(self.points), self.dim)


def box_bounds(A: IntegerMatrix, b: Sequence[int]) -> Optional[list[int]]:
    """Coordinate upper bounds ``floor(lam^T b / (lam^T A)_j)``; None if the fiber is empty."""
    if A.certificate is None:
        raise MissingCertificateError("matrix carries no positivity certificate")
    if len(b) != A.m:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.m}")
    total = sum((lam * bi for lam, bi in zip(A.certificate, b)), Fraction(0))
    if total < 0:
        return None
    return [floor(total / w) for w in A.weights()]


def _search_order(A: IntegerMatrix) -> list[int]:
    """Column order that closes rows early, so the reach test bites sooner.

    Greedy: prefer a column that is the last open entry of some row, then
    the column touching the most rows still open.
    """
    support = [{i for i in range(A.m) if A.entries[i][j]} for j in range(A.d)]
    open_cols = [{j for j in range(A.d) if A.entries[i][j]} for i in range(A.m)]
    order: list[int] = []
    left = set(range(A.d))
    while left:
        def key(j):
            closes = sum(1 for i in support[j] if open_cols[i] == {j})
            return (-closes, -len(support[j]), j)
        j = min(left, key=key)
        order.append(j)
        left.remove(j)
        for i in support[j]:
            open_cols[i].discard(j)
    return order


def enumerate_fiber(A: IntegerMatrix, b: Sequence[int]) -> Fiber:
    """All nonnegative integer solutions of ``A u = b`` in lexicographic order.

    Depth-first over the coordinates with the certificate box as bounds;
    a branch is cut as soon as some row residual is outside the range the
    remaining coordinates can still reach.
    """
    b = tuple(int(x) for x in b)
    ub = box_bounds(A, b)
    if ub is None:
        return Fiber(A, b, ())
    rows = A.entries
    m, d = A.m, A.d
    order = _search_order(A)
    # reach_lo[k][i], reach_hi[k][i]: range of sum over later coordinates of A[i][t] u_t in the box
    reach_lo = [[0] * m for _ in range(d + 1)]
    reach_hi = [[0] * m for _ in range(d + 1)]
    for k in range(d - 1, -1, -1):
        j = order[k]
        for i in range(m):
            a = rows[i][j] * ub[j]
            reach_lo[k][i] = reach_lo[k + 1][i] + min(a, 0)
            reach_hi[k][i] = reach_hi[k + 1][i] + max(a, 0)
    cols = [A.column(j) for j in order]
    bounds = [ub[j] for j in order]

    points: list[IntVector] = []
    u = [0] * d

    def dfs(k: int, residual: list[int]) -> None:
        lo, hi = reach_lo[k], reach_hi[k]
        for i in range(m):
            if not lo[i] <= residual[i] <= hi[i]:
                return
        if k == d:
            points.append(tuple(u))
            return
        j, col = order[k], cols[k]
        res = list(residual)
        for val in range(bounds[k] + 1):
            u[j] = val
            dfs(k + 1, res)
            for i in range(m):
                res[i] -= col[i]
        u[j] = 0

    dfs(0, list(b))
    points.sort()
    return Fiber(A, b, tuple(points))


def slice_count(F: Fiber, j: int, value: int) -> int:
    """Number of fiber points whose coordinate ``j`` (0-based) equals ``value``."""
    if not 0 <= j < F.dim:
        raise IndexError(f"coordinate {j} out of range for d={F.dim}")
    return sum(1 for p in F.points if p[j] == value)


def ray_growth(A: IntegerMatrix, b: Sequence[int], i_max: int) -> list[int]:
    """Fiber sizes ``|F_A(i b)|`` for ``i = 0..i_max``."""
    if i_max < 1:
        raise ValueError("i_max must be at least 1")
    return [len(enumerate_fiber(A, [i * x for x in b])) for i in range(i_max + 1)]


@dataclass(frozen=True)
class GrowthFit:
    degree: Optional[int]
    differences: tuple[int, ...]

    @property
    def conclusive(self) -> bool:
        return self.degree is not None


def fit_growth_degree(counts: Sequence[int]) -> GrowthFit:
    """Smallest r whose r-th forward differences are constant on the last half.

    Only polynomial (period one) growth is detected; anything else comes back
    with ``degree=None``.  The window must hold at least two values, so a
    sequence of length n can certify degrees up to about n/2.
    """
    counts = [int(c) for c in counts]
    if len(counts) < 4 or any(c <= 0 for c in counts):
        raise ValueError("need at least 4 positive counts")
    diffs = counts
    r = 0
    while True:
        window = max(2, (len(diffs) + 1) // 2)
        if window > len(diffs):
            return GrowthFit(None, ())
        tail = diffs[-window:]
        if all(x == tail[0] for x in tail):
            return GrowthFit(r, tuple(tail))
        diffs = [y - x for x, y in zip(diffs, diffs[1:])]
        r += 1


def fiber_size_upper_bound(A: IntegerMatrix, b: Sequence[int]) -> Fraction:
    """``(m * |lam|_inf * |b|_inf / min_j w_j) ** d`` with ``w = lam^T A``.

    For ``b = 0`` the formula degenerates to 0 although the fiber is ``{0}``,
    so the result is never reported below 1.
    """
    if A.certificate is None:
        raise MissingCertificateError("matrix carries no positivity certificate")
    lam_max = max(abs(x) for x in A.certificate)
    b_max = max((abs(int(x)) for x in b), default=0)
    radius = Fraction(A.m) * lam_max * b_max / min(A.weights())
    return max(radius ** A.d, Fraction(1))
