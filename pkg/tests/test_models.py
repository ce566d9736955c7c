import io

import pytest

from fiberwalk.formats import (
    EntryCountError,
    MalformedHeaderError,
    NonIntegerTokenError,
    format_matrix,
    format_moves,
    format_vector,
    parse_matrix,
    parse_moves,
    parse_vector,
)
from fiberwalk.graph import hemmecke_hypercube_graph
from fiberwalk.linalg import IntegerMatrix
from fiberwalk.models import (
    KernelViolationError,
    build_hemmecke,
    build_independence,
    build_model,
    build_single_row,
    hemmecke_matrix,
    unit_ray,
)
from fiberwalk.moves import MoveSet, complexity


def test_single_row_models():
    a2 = build_single_row(2)
    assert a2.matrix.entries == ((1, 1),)
    assert a2.markov_basis.moves == ((1, -1),)
    a3 = build_single_row(3)
    assert a3.matrix.entries == ((1, 1, 1),)
    assert set(a3.markov_basis.moves) == {(1, -1, 0), (1, 0, -1)}
    with pytest.raises(ValueError):
        build_single_row(1)


def test_independence_models():
    m22 = build_independence(2, 2)
    assert m22.markov_basis.moves == ((1, -1, -1, 1),)
    assert m22.matrix.m == 4 and m22.matrix.d == 4
    m23 = build_independence(2, 3)
    assert len(m23.markov_basis) == 3
    for n, m in ((2, 3), (3, 3), (3, 4)):
        model = build_independence(n, m)
        for move in model.markov_basis:
            table = [move[r * m:(r + 1) * m] for r in range(n)]
            assert all(sum(row) == 0 for row in table)
            assert all(sum(col) == 0 for col in zip(*table))
    assert len(build_independence(3, 3).markov_basis) == 9


def test_hemmecke_k1():
    H = hemmecke_matrix(1)
    assert H.entries == ((1, 1, 0, 0, -1, 0), (0, 0, 1, 1, 0, -1), (0, 0, 0, 0, 1, 1))
    G1 = build_hemmecke(1).markov_basis
    assert set(G1.moves) == {(1, -1, 0, 0, 0, 0), (0, 0, 1, -1, 0, 0), (0, 1, 0, -1, 1, -1)}


def test_hemmecke_k2():
    model = build_hemmecke(2)
    assert (model.matrix.m, model.matrix.d) == (5, 10)
    assert len(model.markov_basis) == 5
    assert complexity(model.markov_basis) == 1
    for g in model.markov_basis:
        assert model.matrix.in_kernel(g)
    assert unit_ray(model) == (0, 0, 0, 0, 1)


def test_hypercube_graph_small():
    G = hemmecke_hypercube_graph(1)
    assert G.n == 4
    W = G.adjacency()
    assert int(W.sum()) // 2 == 6
    G2 = hemmecke_hypercube_graph(2)
    assert G2.n == 8 and G2.degree == 2 + 4
    assert all(loops == 0 for loops in G2.loops)


def test_build_model_dispatch():
    assert build_model("a_d", [4]).matrix.d == 4
    assert build_model("independence", [2, 3]).matrix.d == 6
    assert build_model("hemmecke", [1]).matrix.d == 6
    with pytest.raises(ValueError):
        build_model("nope", [])


def test_complexity():
    assert complexity(build_single_row(3).markov_basis) == 1
    assert complexity([(2, -2)]) == 2
    with pytest.raises(ValueError):
        complexity([])


def test_moveset_normalisation():
    M = MoveSet.from_vectors([(1, -1), (-1, 1), (0, 0), (2, -2)])
    assert M.moves == ((1, -1), (2, -2))
    assert M.effective_moves == ((1, -1), (-1, 1), (2, -2), (-2, 2))
    assert M.degree == 4
    with pytest.raises(ValueError):
        MoveSet(((1, -1), (-1, 1)), 2)
    with pytest.raises(ValueError):
        MoveSet(((1, -1),), 2, symmetric_closed=True)


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def test_parse_matrix_text():
    A = parse_matrix("1 2\n1 1\n")
    assert A.entries == ((1, 1),)


def test_parse_moves_accepts_kernel_move():
    A = parse_matrix("1 2\n1 1\n")
    M = parse_moves("1 2\n1 -1\n", A)
    assert M.moves == ((1, -1),)
    # the unicode minus sign is read as '-'
    assert parse_moves("1 2\n1 −1\n", A).moves == ((1, -1),)


def test_parse_moves_kernel_violation():
    A = parse_matrix("1 2\n1 1\n")
    with pytest.raises(KernelViolationError):
        parse_moves("1 2\n1 0\n", A)


@pytest.mark.parametrize("text, error", [
    ("", MalformedHeaderError),
    ("1\n1 1\n", MalformedHeaderError),
    ("1 2\n1 1 1\n", EntryCountError),
    ("2 2\n1 1\n", EntryCountError),
    ("1 2\n1 a\n", NonIntegerTokenError),
])
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_matrix(io.StringIO(text))


def test_comments_and_roundtrip(tmp_path):
    path = tmp_path / "a.mat"
    path.write_text("# independence 2x2\n" + format_matrix(build_independence(2, 2).matrix))
    A = parse_matrix(str(path))
    assert A == IntegerMatrix.from_rows(build_independence(2, 2).matrix.entries)
    M = build_single_row(3).markov_basis
    assert parse_moves(format_moves(M)).moves == M.moves
    assert parse_vector(format_vector((3, 3, 3, 3))) == (3, 3, 3, 3)
