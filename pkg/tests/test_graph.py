import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphheat.errors import GraphSizeError
from graphheat.graph import (
    GridSpec,
    IsolatedVertexWarning,
    SimpleGraph,
    adjacency_matrix,
    degree_vector,
    grid_graph,
    laplacian,
    random_graph,
    read_edgelist,
    write_edgelist,
)

P2 = SimpleGraph(2, [(0, 1)])
P3 = SimpleGraph(3, [(0, 1), (1, 2)])
K3 = SimpleGraph(3, [(0, 1), (0, 2), (1, 2)])


def brute_force_grid_edges(rows, cols):
    edges = set()
    for r in range(rows):
        for c in range(cols):
            for dr, dc in ((0, 1), (1, 0), (0, -1), (-1, 0)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < rows and 0 <= cc < cols:
                    a, b = r * cols + c, rr * cols + cc
                    edges.add((min(a, b), max(a, b)))
    return edges


def test_simple_graph_normalises_edges():
    g = SimpleGraph(4, [(2, 1), (1, 2), (0, 3)])
    assert g.edges.tolist() == [[0, 3], [1, 2]]
    assert g.has_edge(2, 1) and g.has_edge(3, 0)
    assert not g.has_edge(0, 1) and not g.has_edge(2, 2)


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 1)]])
def test_simple_graph_rejects_invalid_edges(edges):
    with pytest.raises(ValueError):
        SimpleGraph(3, edges)


def test_adjacency_examples():
    assert adjacency_matrix(P2).tolist() == [[0, 1], [1, 0]]
    assert adjacency_matrix(SimpleGraph(3)).tolist() == [[0] * 3] * 3
    np.testing.assert_array_equal(adjacency_matrix(K3), np.ones((3, 3)) - np.eye(3))


def test_degree_examples():
    assert degree_vector(P3).tolist() == [1, 2, 1]
    assert degree_vector(K3).tolist() == [2, 2, 2]
    assert degree_vector(SimpleGraph(4)).tolist() == [0, 0, 0, 0]


def test_laplacian_examples():
    assert laplacian(P2).toarray().tolist() == [[1, -1], [-1, 1]]
    assert laplacian(K3).toarray().tolist() == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert laplacian(P3).toarray().tolist() == [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]


def test_laplacian_is_degree_minus_adjacency(rng):
    g = random_graph(30, 0.2, rng)
    L = laplacian(g).toarray(dtype=np.int64)
    np.testing.assert_array_equal(L, np.diag(degree_vector(g)) - adjacency_matrix(g))


def test_laplacian_matvec_matches_dense(rng):
    g = random_graph(40, 0.15, rng)
    L = laplacian(g)
    x = rng.standard_normal(40)
    np.testing.assert_allclose(L @ x, L.toarray() @ x, atol=1e-12)


def test_isolated_vertices_warn_not_fail():
    with pytest.warns(IsolatedVertexWarning):
        L = laplacian(SimpleGraph(3, [(0, 1)]))
    assert L.toarray()[2].tolist() == [0, 0, 0]


def test_connected_graph_does_not_warn():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        laplacian(P3)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 25), p=st.floats(0, 1), seed=st.integers(0, 2**32 - 1))
def test_laplacian_invariants(n, p, seed):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IsolatedVertexWarning)
        g = random_graph(n, p, seed)
        L = laplacian(g).toarray(dtype=np.int64)
    assert np.array_equal(L, L.T)
    off = L[~np.eye(n, dtype=bool)]
    assert set(np.unique(off)) <= {0, -1}
    np.testing.assert_array_equal(np.diag(L), (L == -1).sum(axis=1))
    assert not L.sum(axis=1).any()
    assert np.trace(L) == 2 * g.num_edges


def test_grid_small_examples():
    assert grid_graph(GridSpec(1, 2)) == P2
    square = grid_graph(GridSpec(2, 2))
    assert square.num_edges == 4
    assert square.edges.tolist() == [[0, 1], [0, 2], [1, 3], [2, 3]]


def test_grid_128_size():
    g = grid_graph(GridSpec(128, 128))
    assert g.n == 16384
    assert g.num_edges == 2 * 128 * 127 == 32512


@pytest.mark.parametrize("rows", range(1, 11))
def test_grid_matches_brute_force_enumeration(rows):
    for cols in range(1, 11):
        g = grid_graph(GridSpec(rows, cols))
        assert g.n == rows * cols
        assert g.num_edges == rows * (cols - 1) + cols * (rows - 1)
        assert set(map(tuple, g.edges.tolist())) == brute_force_grid_edges(rows, cols)


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(0, 3)
    with pytest.raises(TypeError):
        GridSpec(2.5, 3)
    with pytest.raises(GraphSizeError):
        GridSpec(2**40, 2**40)


def test_edgelist_round_trip(tmp_path, rng):
    g = random_graph(12, 0.4, rng)
    path = tmp_path / "g.txt"
    write_edgelist(g, path)
    raw = path.read_bytes()
    assert raw.startswith(f"{g.n} {g.num_edges}\n".encode())
    assert b"\r" not in raw
    assert read_edgelist(path) == g


def test_edgelist_rejects_wrong_count(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n0 1\n")
    with pytest.raises(ValueError):
        read_edgelist(path)
