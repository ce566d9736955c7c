"""Finite move sets in the integer kernel of a matrix."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

IntVector = tuple[int, ...]


def negate(v: Sequence[int]) -> IntVector:
    return tuple(-x for x in v)


@dataclass(frozen=True)
class MoveSet:
    """A finite set of integer moves.

    In one-sided mode (the default) the set holds no zero vector and never
    both ``m`` and ``-m``; each move contributes ``m`` and ``-m`` to the
    walk, so the effective degree is ``2 * len(moves)``.  In
    ``symmetric_closed`` mode the set already contains ``0`` and is closed
    under negation; each element is used once and the degree is
    ``len(moves)``.
    """

    moves: tuple[IntVector, ...]
    dim: int
    symmetric_closed: bool = False

    def __post_init__(self):
        moves = tuple(tuple(int(x) for x in m) for m in self.moves)
        object.__setattr__(self, "moves", moves)
        if any(len(m) != self.dim for m in moves):
            raise ValueError(f"all moves must have dimension {self.dim}")
        as_set = set(moves)
        if len(as_set) != len(moves):
            raise ValueError("duplicate moves")
        zero = (0,) * self.dim
        if self.symmetric_closed:
            if zero not in as_set:
                raise ValueError("symmetric-closed move set must contain 0")
            if any(negate(m) not in as_set for m in moves):
                raise ValueError("symmetric-closed move set must be closed under negation")
        else:
            if zero in as_set:
                raise ValueError("one-sided move set may not contain 0")
            if any(negate(m) in as_set for m in moves):
                raise ValueError("one-sided move set may not contain both m and -m")

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]], dim: int | None = None) -> "MoveSet":
        """Normalize arbitrary vectors into a one-sided set.

        Zero vectors are dropped and of each pair ``{m, -m}`` the
        lexicographically larger one is kept; first-seen order is preserved.
        """
        out: list[IntVector] = []
        seen: set[IntVector] = set()
        for v in vectors:
            v = tuple(int(x) for x in v)
            if dim is None:
                dim = len(v)
            if not any(v):
                continue
            rep = max(v, negate(v))
            if rep not in seen:
                seen.add(rep)
                out.append(rep)
        if dim is None:
            raise ValueError("cannot infer dimension of an empty move set")
        return cls(tuple(out), dim)

    @property
    def effective_moves(self) -> tuple[IntVector, ...]:
        """The moves the simple walk picks from, each with equal probability."""
        if self.symmetric_closed:
            return self.moves
        out = []
        for m in self.moves:
            out.append(m)
            out.append(negate(m))
        return tuple(out)

    @property
    def degree(self) -> int:
        return len(self.moves) if self.symmetric_closed else 2 * len(self.moves)

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)


def complexity(M: MoveSet | Sequence[Sequence[int]]) -> int:
    """Largest absolute coordinate over all moves."""
    moves = M.moves if isinstance(M, MoveSet) else [tuple(m) for m in M]
    if len(moves) == 0:
        raise ValueError("complexity of an empty move set is undefined")
    return max(max((abs(x) for x in m), default=0) for m in moves)
