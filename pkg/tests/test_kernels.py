"""Both kernel backends against numpy/LAPACK and against each other."""

import numpy as np
import pytest

from graphheat import _kernels, _pykernels
from graphheat.graph import GridSpec, grid_graph, laplacian, random_graph


def _eig(a, max_sweeps=50):
    d, e, V = _kernels.tred2(a)
    V = np.ascontiguousarray(V)
    status = _kernels.tql2(d, e, V, max_sweeps)
    return status, d, V


@pytest.mark.parametrize("n", [1, 2, 3, 7, 33])
def test_eigensolver_matches_lapack(kernel_backend, rng, n):
    a = rng.standard_normal((n, n))
    a = a + a.T
    status, d, V = _eig(a)
    assert status == 0
    order = np.argsort(d)
    np.testing.assert_allclose(d[order], np.linalg.eigvalsh(a), atol=1e-12)
    np.testing.assert_allclose(V.T @ V, np.eye(n), atol=1e-13)
    np.testing.assert_allclose((V * d) @ V.T, a, atol=1e-12)


def test_tridiagonal_reduction_is_similarity(kernel_backend, rng):
    a = rng.standard_normal((9, 9))
    a = a + a.T
    d, e, Q = _kernels.tred2(a)
    T = np.diag(d) + np.diag(e[1:], 1) + np.diag(e[1:], -1)
    np.testing.assert_allclose(Q @ T @ Q.T, a, atol=1e-12)


def test_zero_matrix_and_diagonal(kernel_backend):
    status, d, V = _eig(np.zeros((4, 4)))
    assert status == 0 and not d.any()
    status, d, _ = _eig(np.diag([3.0, 1.0, 2.0]))
    assert sorted(d.tolist()) == [1.0, 2.0, 3.0]


def test_sweep_budget_exhaustion_reported(kernel_backend, rng):
    a = rng.standard_normal((12, 12))
    status, _, _ = _eig(a + a.T, max_sweeps=0)
    assert status > 0


def test_laplacian_matvec(kernel_backend, rng):
    L = laplacian(random_graph(50, 0.1, rng))
    x = rng.standard_normal(50)
    y = _kernels.laplacian_matvec(L.indptr, L.indices, L.degree, x)
    np.testing.assert_allclose(y, L.toarray() @ x, atol=1e-12)


def test_euler_evolve_matches_dense_recurrence(kernel_backend, rng):
    L = laplacian(grid_graph(GridSpec(5, 6)))
    u = rng.uniform(0, 255, 30)
    out = _kernels.euler_evolve(L.indptr, L.indices, L.degree, u, 0.03, 17, 0.02)
    dense = L.toarray()
    expected = u.copy()
    for k in range(17):
        expected = expected - (0.02 if k == 16 else 0.03) * (dense @ expected)
    np.testing.assert_allclose(out, expected, rtol=1e-13, atol=1e-10)


@pytest.mark.skipif(not _kernels.CYTHON_AVAILABLE, reason="compiled kernels not built")
def test_backends_agree(rng):
    from graphheat import _ckernels

    a = rng.standard_normal((40, 40))
    a = a + a.T
    dc, ec, Vc = _ckernels.tred2(a)
    dp, ep, Vp = _pykernels.tred2(a)
    np.testing.assert_allclose(dc, dp, atol=1e-12)
    np.testing.assert_allclose(np.abs(Vc), np.abs(Vp), atol=1e-12)


def test_use_backend_restores_previous():
    before = _kernels.backend()
    with _kernels.use_backend("python"):
        assert _kernels.backend() == "python"
    assert _kernels.backend() == before
    with pytest.raises(ValueError):
        _kernels.set_backend("fortran")
