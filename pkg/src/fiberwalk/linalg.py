"""Exact integer and rational linear algebra.

Everything in this module works on Python ints and ``fractions.Fraction``;
no floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

IntVector = tuple[int, ...]


class KernelMeetsOrthantError(ValueError):
    """Raised when ker(A) contains a nonzero nonnegative integer vector.

    The offending vector is available as ``witness``; it satisfies
    ``A @ witness == 0`` and ``witness >= 0``.
    """

    def __init__(self, witness: IntVector):
        self.witness = witness
        super().__init__(f"kernel meets the nonnegative orthant: {witness}")


@dataclass(frozen=True)
class IntegerMatrix:
    """An m x d integer matrix with an optional positivity certificate.

    The certificate is a rational vector ``lam`` with ``lam^T A >= 1``
    componentwise; its existence is equivalent to ker(A) meeting the
    nonnegative orthant only in 0, which makes every fiber finite.
    """

    entries: tuple[tuple[int, ...], ...]
    certificate: Optional[tuple[Fraction, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)
        if self.certificate is not None:
            lam = tuple(Fraction(x) for x in self.certificate)
            if len(lam) != len(rows):
                raise ValueError("certificate length must equal the row count")
            w = _left_product(lam, rows)
            if any(x < 1 for x in w):
                raise ValueError(f"certificate fails lam^T A >= 1: {w}")
            object.__setattr__(self, "certificate", lam)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def d(self) -> int:
        return len(self.entries[0])

    def column(self, j: int) -> IntVector:
        return tuple(row[j] for row in self.entries)

    def apply(self, u: Sequence[int]) -> IntVector:
        """Return ``A @ u`` as an exact integer tuple."""
        if len(u) != self.d:
            raise ValueError(f"vector of length {len(u)} does not match d={self.d}")
        return tuple(sum(a * x for a, x in zip(row, u)) for row in self.entries)

    def in_kernel(self, u: Sequence[int]) -> bool:
        return all(x == 0 for x in self.apply(u))

    def weights(self) -> tuple[Fraction, ...]:
        """The positive weight vector ``w = lam^T A`` of the certificate."""
        if self.certificate is None:
            raise ValueError("matrix carries no positivity certificate")
        return _left_product(self.certificate, self.entries)

    def certified(self) -> "IntegerMatrix":
        """Return this matrix with a certificate attached, computing one if needed."""
        if self.certificate is not None:
            return self
        return IntegerMatrix(self.entries, certify_kernel_positivity(self))


def _left_product(lam: Sequence[Fraction], rows) -> tuple[Fraction, ...]:
    d = len(rows[0])
    return tuple(sum((lam[i] * rows[i][j] for i in range(len(rows))), Fraction(0))
                 for j in range(d))


# ---------------------------------------------------------------------------
# exact phase-one simplex
# ---------------------------------------------------------------------------

def find_nonnegative_solution(
    a_eq: Sequence[Sequence[int | Fraction]],
    b_eq: Sequence[int | Fraction],
) -> Optional[list[Fraction]]:
    """Find ``x >= 0`` with ``a_eq @ x == b_eq`` or return None.

    Phase one of the simplex method on a Fraction tableau with Bland's rule,
    so it terminates and the answer is exact.
    """
    rows = [[Fraction(v) for v in r] for r in a_eq]
    rhs = [Fraction(v) for v in b_eq]
    n_con = len(rows)
    n_var = len(rows[0]) if rows else 0
    for i in range(n_con):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # tableau columns: original vars, then one artificial per row
    width = n_var + n_con
    tab = [rows[i] + [Fraction(int(i == k)) for k in range(n_con)] + [rhs[i]]
           for i in range(n_con)]
    basis = [n_var + i for i in range(n_con)]
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [Fraction(0)] * (width + 1)
    for i in range(n_con):
        for j in range(width + 1):
            cost[j] -= tab[i][j]
    for i in range(n_con):
        cost[n_var + i] += 1

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(n_con):
            if tab[i][entering] > 0:
                ratio = tab[i][-1] / tab[i][entering]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded direction; cannot happen in phase one
            raise ArithmeticError("phase-one simplex reported an unbounded ray")
        _pivot(tab, cost, best[1], entering)
        basis[best[1]] = entering

    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * n_var
    for i, j in enumerate(basis):
        if j < n_var:
            x[j] = tab[i][-1]
    return x


def _pivot(tab, cost, r, c):
    piv = tab[r][c]
    tab[r] = [v / piv for v in tab[r]]
    for i, row in enumerate(tab):
        if i != r and row[c] != 0:
            f = row[c]
            tab[i] = [v - f * p for v, p in zip(row, tab[r])]
    f = cost[c]
    if f != 0:
        for j in range(len(cost)):
            cost[j] -= f * tab[r][j]


def certify_kernel_positivity(A: IntegerMatrix) -> tuple[Fraction, ...]:
    """Return ``lam`` with ``lam^T A >= 1`` componentwise.

    Raises :class:`KernelMeetsOrthantError` carrying a nonzero ``u >= 0``
    with ``A u = 0`` when no such ``lam`` exists (Gordan's alternative).
    """
    rows = A.entries
    m, d = A.m, A.d
    # A^T lam_plus - A^T lam_minus - s = 1, all variables >= 0
    a_eq = []
    for j in range(d):
        col = [rows[i][j] for i in range(m)]
        a_eq.append(col + [-c for c in col] + [-int(k == j) for k in range(d)])
    sol = find_nonnegative_solution(a_eq, [1] * d)
    if sol is not None:
        lam = tuple(sol[i] - sol[m + i] for i in range(m))
        assert all(x >= 1 for x in _left_product(lam, rows))
        return lam
    # A u = 0, sum(u) = 1, u >= 0
    a_eq = [list(r) for r in rows] + [[1] * d]
    sol = find_nonnegative_solution(a_eq, [0] * m + [1])
    if sol is None:
        raise ArithmeticError("neither certificate nor witness found")
    scale = lcm(*(x.denominator for x in sol))
    witness = tuple(int(x * scale) for x in sol)
    assert A.in_kernel(witness) and any(witness)
    raise KernelMeetsOrthantError(witness)


# ---------------------------------------------------------------------------
# rank and lattice bases
# ---------------------------------------------------------------------------

def integer_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank of the given integer vectors, by fraction-free (Bareiss) elimination."""
    mat = [list(map(int, v)) for v in vectors]
    if not mat:
        return 0
    n_rows, n_cols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                mat[r][c] = (mat[rank][col] * mat[r][c] - mat[r][col] * mat[rank][c]) // prev
            mat[r][col] = 0
        prev = mat[rank][col]
        rank += 1
        if rank == n_rows:
            break
    return rank


@dataclass(frozen=True)
class LatticeBasis:
    """A basis of the integer lattice spanned by a finite set of vectors.

    ``coefficients[i]`` expresses the i-th input vector over ``basis``, and
    ``constant`` is the sum over basis positions of the largest absolute
    coefficient used there.
    """

    basis: tuple[IntVector, ...]
    coefficients: tuple[IntVector, ...]
    constant: int

    @property
    def rank(self) -> int:
        return len(self.basis)


def hermite_rows(vectors: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns ``(H, V)`` with ``V @ H == vectors`` (as integer matrices) where
    the nonzero rows of ``H`` come first and are in echelon form with
    positive pivots and reduced entries above each pivot. ``V`` is unimodular.
    """
    H = [list(map(int, v)) for v in vectors]
    k = len(H)
    if k == 0:
        return [], []
    d = len(H[0])
    # V is the inverse of the accumulated row transform; row op on H is a
    # column op on V.
    V = [[int(i == j) for j in range(k)] for i in range(k)]

    def add_row(dst, src, q):  # H[dst] -= q * H[src]
        if q == 0:
            return
        H[dst] = [a - q * b for a, b in zip(H[dst], H[src])]
        for row in V:
            row[src] += q * row[dst]

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def negate(i):
        H[i] = [-a for a in H[i]]
        for row in V:
            row[i] = -row[i]

    r = 0
    for col in range(d):
        if r == k:
            break
        while True:
            nz = [i for i in range(r, k) if H[i][col] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][col]), i))
            swap(r, p)
            done = True
            for i in range(r + 1, k):
                if H[i][col] != 0:
                    add_row(i, r, H[i][col] // H[r][col])
                    if H[i][col] != 0:
                        done = False
            if done:
                break
        if all(H[i][col] == 0 for i in range(r, k)):
            continue
        if H[r][col] < 0:
            negate(r)
        for i in range(r):
            add_row(i, r, H[i][col] // H[r][col])
        r += 1
    return H, V


def lattice_basis(vectors: Sequence[Sequence[int]]) -> LatticeBasis:
    """Basis of the lattice ``vectors . Z^k`` with coordinates of each input."""
    if len(vectors) == 0:
        return LatticeBasis((), (), 0)
    H, V = hermite_rows(vectors)
    r = sum(1 for row in H if any(row))
    basis = tuple(tuple(row) for row in H[:r])
    coeffs = tuple(tuple(row[:r]) for row in V)
    constant = sum(max(abs(c[j]) for c in coeffs) for j in range(r))
    for v, c in zip(vectors, coeffs):
        recon = tuple(sum(c[j] * basis[j][t] for j in range(r)) for t in range(len(v)))
        assert recon == tuple(v), "lattice coordinates do not reproduce the input"
    return LatticeBasis(basis, coeffs, constant)
