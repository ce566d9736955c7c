"""Plain-text matrix, move and vector files.

Matrix file: a header line ``m d`` followed by m rows of d integers.
Move file:   a header line ``k d`` followed by k rows of d integers.
Vector file: a header line ``m`` followed by m integers (any line layout).

Tokens are whitespace separated signed decimal integers; lines starting
with ``#`` are comments and blank lines are ignored.
"""

from __future__ import annotations

import os
from typing import IO, Optional, Union

from .linalg import IntegerMatrix
from .models import check_kernel
from .moves import MoveSet


class FormatError(ValueError):
    """Base class for malformed input files."""


class MalformedHeaderError(FormatError):
    pass


class EntryCountError(FormatError):
    pass


class NonIntegerTokenError(FormatError):
    pass


Source = Union[str, os.PathLike, IO[str]]


def _lines(source: Source) -> list[str]:
    if isinstance(source, (str, os.PathLike)) and not (isinstance(source, str) and "\n" in source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
    text = text.replace("−", "-")
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            out.append(stripped)
    return out


def _ints(line: str, lineno: int) -> list[int]:
    vals = []
    for tok in line.split():
        try:
            vals.append(int(tok, 10))
        except ValueError:
            raise NonIntegerTokenError(f"line {lineno}: {tok!r} is not an integer") from None
    return vals


def _header(lines: list[str], size: int) -> list[int]:
    if not lines:
        raise MalformedHeaderError("empty input")
    try:
        head = [int(t, 10) for t in lines[0].split()]
    except ValueError:
        raise MalformedHeaderError(f"bad header {lines[0]!r}") from None
    if len(head) != size or any(h < 0 for h in head):
        raise MalformedHeaderError(f"header must hold {size} nonnegative integers, got {lines[0]!r}")
    return head


def _grid(lines: list[str]) -> list[list[int]]:
    rows, cols = _header(lines, 2)
    body = lines[1:]
    if len(body) != rows:
        raise EntryCountError(f"expected {rows} rows, found {len(body)}")
    grid = []
    for i, line in enumerate(body, start=2):
        vals = _ints(line, i)
        if len(vals) != cols:
            raise EntryCountError(f"row {i - 1}: expected {cols} entries, found {len(vals)}")
        grid.append(vals)
    return grid


def parse_matrix(source: Source) -> IntegerMatrix:
    grid = _grid(_lines(source))
    if not grid or not grid[0]:
        raise MalformedHeaderError("matrix must have positive dimensions")
    return IntegerMatrix.from_rows(grid)


def parse_moves(source: Source, matrix: Optional[IntegerMatrix] = None) -> MoveSet:
    """Parse a one-sided move set; with ``matrix`` given, every move is kernel-checked."""
    lines = _lines(source)
    _, dim = _header(lines, 2)
    grid = _grid(lines)
    moves = MoveSet.from_vectors(grid, dim)
    if matrix is not None:
        check_kernel(matrix, moves)
    return moves


def parse_vector(source: Source) -> tuple[int, ...]:
    lines = _lines(source)
    (size,) = _header(lines, 1)
    vals = []
    for i, line in enumerate(lines[1:], start=2):
        vals.extend(_ints(line, i))
    if len(vals) != size:
        raise EntryCountError(f"expected {size} entries, found {len(vals)}")
    return tuple(vals)


def format_matrix(A: IntegerMatrix) -> str:
    return _format_grid(A.entries, A.d)


def format_moves(M: MoveSet) -> str:
    return _format_grid(M.moves, M.dim)


def format_vector(v) -> str:
    return f"{len(v)}\n" + " ".join(str(x) for x in v) + "\n"


def _format_grid(rows, cols) -> str:
    out = [f"{len(rows)} {cols}"]
    out.extend(" ".join(str(x) for x in row) for row in rows)
    return "\n".join(out) + "\n"
