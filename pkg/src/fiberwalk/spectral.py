"""Eigenvalues of symmetric walk matrices and the SLEM."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np
from numba import njit

from .graph import (
    DisconnectedGraphError,
    FiberGraph,
    TransitionMatrix,
    bfs_distances,
    is_bipartite,
    transition_matrix,
)

JACOBI_TOL = 1e-12
SYMMETRY_TOL = 1e-9
EXACT_CHECK_LIMIT = 64


class NotSymmetricError(ValueError):
    pass


class SpectralDriftError(ArithmeticError):
    """Floating-point spectrum disagrees with exact trace identities."""


@njit(cache=True)
def _jacobi_sweeps(a, tol, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if sqrt(2.0 * off) < tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
    return -1


def jacobi_eigenvalues(S: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100) -> np.ndarray:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below ``tol``.
    """
    a = np.array(S, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if a.size and np.max(np.abs(a - a.T)) > SYMMETRY_TOL:
        raise NotSymmetricError("matrix is not symmetric")
    a = (a + a.T) / 2.0
    if _jacobi_sweeps(a, tol, max_sweeps) < 0:
        raise ArithmeticError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.diag(a).copy()


def _drop_stationary(eigs: np.ndarray) -> np.ndarray:
    if eigs.size == 0:
        return eigs
    k = int(np.argmin(np.abs(eigs - 1.0)))
    return np.delete(eigs, k)


def slem_of_spectrum(eigs: np.ndarray) -> float:
    rest = _drop_stationary(np.asarray(eigs, dtype=float))
    if rest.size == 0:
        return 0.0
    return float(min(1.0, np.max(np.abs(rest))))


def _check_exact(T: TransitionMatrix, eigs: np.ndarray) -> None:
    counts = T.counts
    den = T.denominator
    trace = Fraction(int(np.trace(counts)), den)
    frob = Fraction(int((counts.astype(object) ** 2).sum()), den * den)
    tol = 1e-9 * max(1, T.n)
    if abs(float(eigs.sum()) - float(trace)) > tol or abs(float((eigs ** 2).sum()) - float(frob)) > tol:
        raise SpectralDriftError("eigenvalues inconsistent with exact trace identities")


def slem(S) -> float:
    """Second largest eigenvalue modulus of a symmetric stochastic matrix.

    One eigenvalue, the one closest to 1, is discarded as the stationary
    one; a disconnected walk therefore still reports 1.  For transition
    matrices of up to 64 nodes the spectrum is checked against the exact
    rational trace of ``S`` and of ``S^2``.
    """
    if isinstance(S, TransitionMatrix):
        eigs = jacobi_eigenvalues(S.dense)
        if S.n <= EXACT_CHECK_LIMIT:
            _check_exact(S, eigs)
    else:
        eigs = jacobi_eigenvalues(np.asarray(S, dtype=float))
    return slem_of_spectrum(eigs)


def graph_slem(G: FiberGraph) -> float:
    return slem(transition_matrix(G))


@dataclass(frozen=True)
class LoopRemovedReport:
    """Comparison of a regular graph's walk with the walk after dropping loops."""

    slem: float
    slem_loopless: float
    degree: int
    bipartite: bool
    loopless_degrees: tuple[int, ...]

    @property
    def gap(self) -> float:
        return 1.0 - self.slem

    @property
    def gap_loopless(self) -> float:
        return 1.0 - self.slem_loopless

    def inequality_holds(self, tol: float = 1e-9) -> bool:
        """``1 - slem_loopless <= degree * (1 - slem)``."""
        return self.gap_loopless <= self.degree * self.gap + tol


def loopless_walk(G: FiberGraph) -> np.ndarray:
    """Row-stochastic simple walk on ``G`` with its loops removed."""
    W = G.adjacency().astype(float)
    np.fill_diagonal(W, 0.0)
    deg = W.sum(axis=1)
    return W / deg[:, None]


def loop_removed(G: FiberGraph) -> LoopRemovedReport:
    """SLEM of the walk that only uses applicable moves, next to the original.

    That walk is reversible for ``pi(v) ~ deg(v)``, so its spectrum is the
    spectrum of the symmetric matrix ``D^-1/2 W D^-1/2``.
    """
    dist = bfs_distances(G, 0)
    if min(dist) < 0:
        raise DisconnectedGraphError(0, dist.index(-1))
    W = G.adjacency().astype(float)
    np.fill_diagonal(W, 0.0)
    deg = W.sum(axis=1)
    if G.n == 1:
        lam_loopless = 0.0
    else:
        assert np.all(deg > 0), "isolated node in a connected graph"
        inv_sqrt = 1.0 / np.sqrt(deg)
        lam_loopless = slem(W * inv_sqrt[:, None] * inv_sqrt[None, :])
    lam = graph_slem(G)
    return LoopRemovedReport(
        slem=lam,
        slem_loopless=lam_loopless,
        degree=G.degree,
        bipartite=is_bipartite(G),
        loopless_degrees=tuple(int(x) for x in deg),
    )
