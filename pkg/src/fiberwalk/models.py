"""Named matrix / Markov basis families."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .linalg import IntegerMatrix
from .moves import MoveSet


class KernelViolationError(ValueError):
    """A move does not lie in the integer kernel of the matrix."""


@dataclass(frozen=True)
class ModelInstance:
    matrix: IntegerMatrix
    markov_basis: MoveSet
    name: str
    parameters: tuple[int, ...]

    def __post_init__(self):
        check_kernel(self.matrix, self.markov_basis)


def check_kernel(A: IntegerMatrix, M: MoveSet) -> None:
    if M.dim != A.d:
        raise KernelViolationError(f"moves have dimension {M.dim}, matrix has {A.d} columns")
    for m in M.moves:
        if not A.in_kernel(m):
            raise KernelViolationError(f"move {m} is not in the kernel: A m = {A.apply(m)}")


def _unit(d: int, i: int) -> list[int]:
    e = [0] * d
    e[i] = 1
    return e


def build_single_row(d: int) -> ModelInstance:
    """``A_d = (1, ..., 1)`` with the moves ``e_1 - e_k`` for ``2 <= k <= d``."""
    if d < 2:
        raise ValueError("single-row model needs d >= 2")
    A = IntegerMatrix.from_rows([[1] * d]).certified()
    moves = []
    for k in range(1, d):
        m = _unit(d, 0)
        m[k] = -1
        moves.append(tuple(m))
    return ModelInstance(A, MoveSet(tuple(moves), d), "a_d", (d,))


def independence_matrix(n: int, m: int) -> IntegerMatrix:
    """Row sums then column sums of an n x m table flattened row-major."""
    rows = []
    for r in range(n):
        rows.append([int(cell // m == r) for cell in range(n * m)])
    for c in range(m):
        rows.append([int(cell % m == c) for cell in range(n * m)])
    return IntegerMatrix.from_rows(rows)


def build_independence(n: int, m: int) -> ModelInstance:
    """Independence model of n x m tables with its basic 2 x 2 swap moves."""
    if n < 2 or m < 2:
        raise ValueError("independence model needs n, m >= 2")
    A = independence_matrix(n, m).certified()
    vectors = []
    # orbit of the 2x2 swap under row and column permutations
    for (r1, r2), (c1, c2) in product(combinations(range(n), 2), combinations(range(m), 2)):
        table = [0] * (n * m)
        table[r1 * m + c1] = 1
        table[r1 * m + c2] = -1
        table[r2 * m + c1] = -1
        table[r2 * m + c2] = 1
        vectors.append(table)
    basis = MoveSet.from_vectors(vectors, n * m)
    return ModelInstance(A, basis, "independence", (n, m))


def hemmecke_matrix(k: int) -> IntegerMatrix:
    """The (2k+1) x (4k+2) block matrix ``H_k``.

    Column blocks (each of width k): x, y, z, w, then two single columns s, t.
    Rows encode ``x_i + y_i = s``, ``z_i + w_i = t`` and ``s + t``.
    """
    if k < 1:
        raise ValueError("Hemmecke matrix needs k >= 1")
    d = 4 * k + 2
    rows = []
    for i in range(k):
        r = [0] * d
        r[i] = r[k + i] = 1
        r[4 * k] = -1
        rows.append(r)
    for i in range(k):
        r = [0] * d
        r[2 * k + i] = r[3 * k + i] = 1
        r[4 * k + 1] = -1
        rows.append(r)
    r = [0] * d
    r[4 * k] = r[4 * k + 1] = 1
    rows.append(r)
    return IntegerMatrix.from_rows(rows)


def build_hemmecke(k: int) -> ModelInstance:
    """``H_k`` with its reduced lexicographic Groebner basis ``G_k`` (2k + 1 moves)."""
    A = hemmecke_matrix(k).certified()
    d = 4 * k + 2
    moves = []
    for i in list(range(k)) + list(range(2 * k, 3 * k)):
        g = [0] * d
        g[i], g[k + i] = 1, -1
        moves.append(tuple(g))
    g = [0] * d
    for i in range(k, 2 * k):
        g[i] = 1
    for i in range(3 * k, 4 * k):
        g[i] = -1
    g[4 * k], g[4 * k + 1] = 1, -1
    moves.append(tuple(g))
    return ModelInstance(A, MoveSet(tuple(moves), d), "hemmecke", (k,))


def build_model(name: str, params) -> ModelInstance:
    params = tuple(int(p) for p in params)
    if name in ("a_d", "single_row"):
        return build_single_row(*params)
    if name == "independence":
        if len(params) == 1:
            params = params * 2
        return build_independence(*params)
    if name == "hemmecke":
        return build_hemmecke(*params)
    raise ValueError(f"unknown model family {name!r}")


def unit_ray(model: ModelInstance) -> tuple[int, ...]:
    """Right-hand side ``b`` whose multiples ``i * b`` are the standard test ray."""
    A = model.matrix
    if model.name == "a_d":
        return (1,)
    if model.name == "independence":
        n, m = model.parameters
        if n == m:
            return (1,) * (2 * n)
        # margins of the all-ones table
        return (m,) * n + (n,) * m
    if model.name == "hemmecke":
        return (0,) * (A.m - 1) + (1,)
    raise ValueError(f"no standard ray for {model.name}")
