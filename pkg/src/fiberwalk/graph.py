"""Loop-decorated regular fiber graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

import numpy as np

from .fiber import Fiber
from .moves import MoveSet


class DisconnectedGraphError(ValueError):
    """Raised by operations that need a connected graph."""

    def __init__(self, source: int, target: int):
        self.source = source
        self.target = target
        super().__init__(f"graph is disconnected: node {target} unreachable from node {source}")


@dataclass(frozen=True)
class FiberGraph:
    """A regular multigraph with loops.

    ``neighbors[v]`` lists ``(w, multiplicity)`` for the non-loop edges at
    ``v`` and ``loops[v]`` counts the loops, so that multiplicities plus
    loops add up to ``degree`` at every node.  ``targets``, when present,
    maps (node, effective move index) to the node the move leads to, the
    node itself standing for a loop.
    """

    neighbors: tuple[tuple[tuple[int, int], ...], ...]
    loops: tuple[int, ...]
    degree: int
    fiber: Optional[Fiber] = None
    moveset: Optional[MoveSet] = None
    targets: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for v, (nbrs, loops) in enumerate(zip(self.neighbors, self.loops)):
            if sum(mult for _, mult in nbrs) + loops != self.degree:
                raise ValueError(f"node {v} violates {self.degree}-regularity")

    @property
    def n(self) -> int:
        return len(self.loops)

    def adjacency(self) -> np.ndarray:
        """Integer adjacency matrix with loop counts on the diagonal."""
        W = np.zeros((self.n, self.n), dtype=np.int64)
        for v, nbrs in enumerate(self.neighbors):
            for w, mult in nbrs:
                W[v, w] = mult
            W[v, v] = self.loops[v]
        return W

    def move_targets(self) -> np.ndarray:
        """``n x degree`` table of where each of the ``degree`` choices leads."""
        if self.targets is not None:
            return self.targets
        T = np.empty((self.n, self.degree), dtype=np.int64)
        for v, nbrs in enumerate(self.neighbors):
            row = [w for w, mult in nbrs for _ in range(mult)] + [v] * self.loops[v]
            T[v] = row
        return T

    @classmethod
    def from_adjacency(cls, W: np.ndarray, **kwargs) -> "FiberGraph":
        """Build from a symmetric integer matrix whose diagonal holds loop counts."""
        W = np.asarray(W, dtype=np.int64)
        if not np.array_equal(W, W.T):
            raise ValueError("adjacency must be symmetric")
        degrees = W.sum(axis=1)
        if len(set(degrees.tolist())) > 1:
            raise ValueError("adjacency is not regular")
        neighbors = tuple(
            tuple((int(w), int(W[v, w])) for w in np.flatnonzero(W[v]) if w != v)
            for v in range(W.shape[0])
        )
        loops = tuple(int(W[v, v]) for v in range(W.shape[0]))
        degree = int(degrees[0]) if W.shape[0] else 0
        return cls(neighbors, loops, degree, **kwargs)


def _locate(F: Fiber, cand: np.ndarray) -> np.ndarray:
    """Fiber index of each candidate row, or -1 if it is not a fiber point."""
    pts = F.array()
    if len(F) == 0:
        return np.full(cand.shape[0], -1, dtype=np.int64)
    lo = pts.min(axis=0)
    span = pts.max(axis=0) - lo + 1
    if float(np.prod(span.astype(float))) < 2.0 ** 62:
        # mixed radix code, first coordinate most significant, so codes
        # of the lexicographically sorted fiber are increasing
        weights = np.ones(len(span), dtype=np.int64)
        for j in range(len(span) - 2, -1, -1):
            weights[j] = weights[j + 1] * span[j + 1]
        codes = (pts - lo) @ weights
        inside = np.all((cand >= lo) & (cand < lo + span), axis=1)
        cand_codes = np.where(inside, (cand - lo) @ weights, -1)
        pos = np.searchsorted(codes, cand_codes)
        pos = np.clip(pos, 0, len(codes) - 1)
        found = inside & (codes[pos] == cand_codes)
        return np.where(found, pos, -1)
    return np.array([F.index.get(tuple(int(x) for x in row), -1) for row in cand], dtype=np.int64)


def build_fiber_graph(F: Fiber, M: MoveSet, chunk: int = 1 << 20) -> FiberGraph:
    """The fiber graph of ``F`` under ``M``; inapplicable moves become loops."""
    if M.dim != F.dim:
        raise ValueError(f"moves have dimension {M.dim}, fiber has {F.dim}")
    n, deg = len(F), M.degree
    eff = np.array(M.effective_moves, dtype=np.int64).reshape(deg, M.dim)
    pts = F.array()
    targets = np.empty((n, deg), dtype=np.int64)
    rows_per_chunk = max(1, chunk // max(1, deg))
    for start in range(0, n, rows_per_chunk):
        block = pts[start:start + rows_per_chunk]
        cand = (block[:, None, :] + eff[None, :, :]).reshape(-1, M.dim)
        idx = _locate(F, cand).reshape(block.shape[0], deg)
        own = np.arange(start, start + block.shape[0])[:, None]
        targets[start:start + block.shape[0]] = np.where(idx < 0, own, idx)

    neighbors = []
    loops = []
    for v in range(n):
        counts: dict[int, int] = {}
        for w in targets[v].tolist():
            counts[w] = counts.get(w, 0) + 1
        loops.append(counts.pop(v, 0))
        neighbors.append(tuple(sorted(counts.items())))
    return FiberGraph(tuple(neighbors), tuple(loops), deg, F, M, targets)


def bfs_distances(G: FiberGraph, source: int) -> list[int]:
    """Hop distances from ``source`` ignoring loops; -1 marks unreachable nodes."""
    dist = [-1] * G.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w, _ in G.neighbors[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def is_connected(G: FiberGraph) -> bool:
    if G.n == 0:
        return True
    return min(bfs_distances(G, 0)) >= 0


def diameter(G: FiberGraph) -> int:
    """Largest BFS eccentricity; raises :class:`DisconnectedGraphError`."""
    best = 0
    for v in range(G.n):
        dist = bfs_distances(G, v)
        if min(dist) < 0:
            raise DisconnectedGraphError(v, dist.index(-1))
        best = max(best, max(dist))
    return best


def is_complete(G: FiberGraph) -> bool:
    """Every pair of distinct nodes is adjacent."""
    return all(len(nbrs) == G.n - 1 for nbrs in G.neighbors)


def is_bipartite(G: FiberGraph) -> bool:
    """Two-colourability of the non-loop edges."""
    colour = [-1] * G.n
    for s in range(G.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w, _ in G.neighbors[v]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


@dataclass(frozen=True)
class TransitionMatrix:
    """Simple-walk transition matrix ``counts / denominator``.

    ``counts`` is the integer adjacency (loops on the diagonal) and
    ``denominator`` the common degree, so the exact rational entries are
    always at hand.
    """

    counts: np.ndarray = field(repr=False)
    denominator: int

    @property
    def n(self) -> int:
        return self.counts.shape[0]

    @property
    def dense(self) -> np.ndarray:
        return self.counts / float(self.denominator)

    def exact(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.counts[i, j]), self.denominator)

    def exact_rows(self) -> list[list[Fraction]]:
        return [[self.exact(i, j) for j in range(self.n)] for i in range(self.n)]


def transition_matrix(G: FiberGraph) -> TransitionMatrix:
    if G.degree <= 0:
        raise ValueError("simple walk needs a positive degree")
    return TransitionMatrix(G.adjacency(), G.degree)


def hemmecke_hypercube_graph(k: int) -> FiberGraph:
    """Model graph on ``{0,1}^(k+1)`` for the Graver walk on ``H_k`` at ``e_{2k+1}``.

    Nodes sharing the last bit are adjacent when they differ in exactly
    one coordinate; nodes with different last bits are always adjacent.
    The last bit selects which of the two blocks carries the unit right-hand
    side and the first k bits say which of each pair of variables is one.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    nodes = list(product((0, 1), repeat=k + 1))
    n = len(nodes)
    W = np.zeros((n, n), dtype=np.int64)
    for a, p in enumerate(nodes):
        for c, q in enumerate(nodes):
            if a == c:
                continue
            if p[-1] != q[-1] or sum(x != y for x, y in zip(p, q)) == 1:
                W[a, c] = 1
    return FiberGraph.from_adjacency(W)


def hypercube_nodes(k: int) -> list[tuple[int, ...]]:
    return list(product((0, 1), repeat=k + 1))
