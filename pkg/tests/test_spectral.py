import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphheat.errors import CapacityError, ConvergenceError, DimensionError
from graphheat.graph import GridSpec, SimpleGraph, grid_graph, laplacian, random_graph
from graphheat.spectral import (
    analyze,
    check_invariants,
    eigendecompose_dense,
    eigendecompose_grid,
    eigenspace_projectors,
    path_modes,
    synthesize,
    write_spectrum_csv,
)

P2 = SimpleGraph(2, [(0, 1)])
K3 = SimpleGraph(3, [(0, 1), (0, 2), (1, 2)])


def dense_grid(rows, cols):
    return eigendecompose_dense(laplacian(grid_graph(GridSpec(rows, cols))))


def test_dense_p2(kernel_backend):
    basis = eigendecompose_dense(laplacian(P2))
    np.testing.assert_allclose(basis.eigenvalues, [0, 2], atol=1e-14)
    assert basis.source == "dense-solve"


def test_dense_k3(kernel_backend):
    # det(lambda I - L) = lambda (lambda - 3)^2 for K3
    basis = eigendecompose_dense(laplacian(K3))
    np.testing.assert_allclose(basis.eigenvalues, [0, 3, 3], atol=1e-13)


def test_dense_four_cycle(kernel_backend):
    cycle = [2 - 2 * math.cos(2 * math.pi * k / 4) for k in range(4)]
    basis = dense_grid(2, 2)
    np.testing.assert_allclose(basis.eigenvalues, sorted(cycle), atol=1e-13)
    np.testing.assert_allclose(basis.eigenvalues, [0, 2, 2, 4], atol=1e-13)
    assert basis.eigenvalues.sum() == pytest.approx(8, abs=1e-12)


def test_dense_reconstructs_laplacian(kernel_backend, rng):
    L = laplacian(random_graph(25, 0.3, rng))
    report = check_invariants(eigendecompose_dense(L), L)
    assert report["reconstruction"] < 1e-12


def test_dense_matches_lapack(rng):
    L = laplacian(random_graph(40, 0.2, rng))
    basis = eigendecompose_dense(L)
    np.testing.assert_allclose(basis.eigenvalues, np.linalg.eigvalsh(L.toarray()), atol=1e-11)


def test_dense_capacity_guard():
    with pytest.raises(CapacityError):
        eigendecompose_dense(laplacian(grid_graph(GridSpec(10, 10))), dense_cap=50)


def test_dense_convergence_error(rng):
    L = laplacian(random_graph(20, 0.5, rng))
    with pytest.raises(ConvergenceError):
        eigendecompose_dense(L, max_sweeps=0)


def test_dense_accepts_symmetric_array():
    basis = eigendecompose_dense(laplacian(K3).toarray())
    assert basis.num_edges == 3


def test_path_modes_are_eigenvectors():
    for m in (1, 2, 5, 9):
        values, modes = path_modes(m)
        L = laplacian(grid_graph(GridSpec(1, m))).toarray()
        np.testing.assert_allclose(L @ modes, modes * values, atol=1e-13)
        np.testing.assert_allclose(modes.T @ modes, np.eye(m), atol=1e-14)


def test_grid_1x2():
    basis = eigendecompose_grid(GridSpec(1, 2))
    np.testing.assert_allclose(basis.eigenvalues, [0, 4 * math.sin(math.pi / 4) ** 2], atol=1e-15)
    np.testing.assert_allclose(basis.eigenvalues, [0, 2], atol=1e-15)


def test_grid_4x4_matches_dense():
    np.testing.assert_allclose(
        eigendecompose_grid(GridSpec(4, 4)).eigenvalues, dense_grid(4, 4).eigenvalues, atol=1e-10
    )


def test_grid_128_largest_eigenvalue():
    basis = eigendecompose_grid(GridSpec(128, 128))
    assert basis.lambda_max == pytest.approx(8 * math.sin(127 * math.pi / 256) ** 2, abs=1e-12)
    assert basis.lambda_max == pytest.approx(7.9988, abs=5e-5)
    assert basis.lambda_max <= 8
    check_invariants(basis)


def test_grid_eigenvalue_formula():
    rows, cols = 3, 5
    basis = eigendecompose_grid(GridSpec(rows, cols))
    expected = sorted(
        4 * math.sin(a * math.pi / (2 * rows)) ** 2 + 4 * math.sin(b * math.pi / (2 * cols)) ** 2
        for a in range(rows)
        for b in range(cols)
    )
    np.testing.assert_allclose(basis.eigenvalues, expected, atol=1e-14)


def test_grid_tie_order_is_lexicographic():
    basis = eigendecompose_grid(GridSpec(4, 4))
    # (0,1) and (1,0) share an eigenvalue; (0,1) comes first
    assert basis.axis_modes[1].tolist() == [0, 1]
    assert basis.axis_modes[2].tolist() == [1, 0]


@pytest.mark.parametrize("rows,cols", [(r, c) for r in range(1, 9) for c in range(1, 9) if (r * c) % 3 == 0 or r == c])
def test_grid_projectors_match_dense(rows, cols):
    grid = eigendecompose_grid(GridSpec(rows, cols))
    dense = dense_grid(rows, cols)
    np.testing.assert_allclose(grid.eigenvalues, dense.eigenvalues, atol=1e-8)
    pg = eigenspace_projectors(grid)
    pd = eigenspace_projectors(dense)
    assert len(pg) == len(pd)
    for (lg, Pg), (ld, Pd) in zip(pg, pd):
        assert lg == pytest.approx(ld, abs=1e-8)
        np.testing.assert_allclose(Pg, Pd, atol=1e-8)


def test_grid_eigenvectors_are_laplacian_eigenvectors():
    spec = GridSpec(3, 4)
    basis = eigendecompose_grid(spec)
    L = laplacian(grid_graph(spec)).toarray()
    phi = basis.eigenvectors
    np.testing.assert_allclose(L @ phi, phi * basis.eigenvalues, atol=1e-12)
    check_invariants(basis, laplacian(grid_graph(spec)))


@pytest.mark.parametrize("make", [lambda: dense_grid(4, 4), lambda: eigendecompose_grid(GridSpec(4, 4))])
def test_analyze_examples(make):
    basis = make()
    e3 = np.zeros(16)
    e3[3] = 1
    np.testing.assert_allclose(analyze(basis, basis.vector(3)), e3, atol=1e-8)
    assert not analyze(basis, np.zeros(16)).any()
    np.testing.assert_allclose(synthesize(basis, e3), basis.vector(3), atol=1e-15)
    assert not synthesize(basis, np.zeros(16)).any()


def test_constant_signal_on_p2():
    basis = eigendecompose_dense(laplacian(P2))
    coeffs = analyze(basis, np.ones(2))
    assert abs(coeffs[0]) == pytest.approx(math.sqrt(2), abs=1e-14)
    assert abs(coeffs[1]) < 1e-14


def test_round_trip_on_4x4(rng):
    for basis in (dense_grid(4, 4), eigendecompose_grid(GridSpec(4, 4))):
        s = rng.standard_normal(16)
        assert np.abs(synthesize(basis, analyze(basis, s)) - s).max() <= 1e-10


@settings(max_examples=40, deadline=None)
@given(rows=st.integers(1, 12), cols=st.integers(1, 12), seed=st.integers(0, 2**32 - 1))
def test_parseval_and_round_trip_grid(rows, cols, seed):
    basis = eigendecompose_grid(GridSpec(rows, cols))
    s = np.random.default_rng(seed).uniform(0, 255, rows * cols)
    coeffs = analyze(basis, s)
    norm2 = float(s @ s)
    assert abs(float(coeffs @ coeffs) - norm2) <= 1e-8 * norm2
    assert np.abs(synthesize(basis, coeffs) - s).max() <= 1e-10 * math.sqrt(norm2)


def test_truncated_transforms_match_dense_columns(rng):
    basis = eigendecompose_grid(GridSpec(6, 5))
    phi = basis.eigenvectors
    s = rng.standard_normal(30)
    for count in (0, 1, 4, 11, 30):
        np.testing.assert_allclose(basis.analyze(s, count), phi[:, :count].T @ s, atol=1e-12)
        c = rng.standard_normal(count)
        np.testing.assert_allclose(basis.synthesize(c), phi[:, :count] @ c, atol=1e-12)


def test_dimension_mismatch():
    basis = eigendecompose_grid(GridSpec(2, 3))
    with pytest.raises(DimensionError):
        analyze(basis, np.zeros(5))
    with pytest.raises(DimensionError):
        synthesize(basis, np.zeros(7))


def test_empty_graph_spectrum():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        basis = eigendecompose_dense(laplacian(SimpleGraph(3)))
    assert basis.eigenvalues.tolist() == [0.0, 0.0, 0.0]


def test_spectrum_csv():
    basis = eigendecompose_grid(GridSpec(1, 2))
    buf = io.StringIO()
    write_spectrum_csv(basis, buf)
    lines = buf.getvalue().split("\n")
    assert lines[0] == "index,eigenvalue"
    assert lines[1] == "0,0.0"
    assert lines[2] == f"1,{float(basis.eigenvalues[1])!r}"
    assert lines[3] == ""
