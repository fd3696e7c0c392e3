"""Laplacian eigenbases and the spectral analysis/synthesis transforms.

Two constructions are provided:

* :func:`eigendecompose_dense` runs Householder tridiagonalisation and
  implicit-shift QL on any Laplacian up to ``dense_cap`` vertices.
* :func:`eigendecompose_grid` writes down the basis of a 4-neighbour grid
  in closed form.  The grid Laplacian is the Kronecker sum of two path
  Laplacians, whose eigenvectors are cosine modes, so the basis is kept
  in factored form and transforms cost ``O(n * (rows + cols))``.

Eigenvalues are always ascending.  Coefficient vectors index modes in
that order; a vector shorter than ``n`` addresses the leading modes.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import CapacityError, ConvergenceError, DimensionError
from .graph import GridSpec, LaplacianMatrix

__all__ = [
    "DEFAULT_DENSE_CAP",
    "DenseEigenBasis",
    "EigenBasis",
    "GridEigenBasis",
    "analyze",
    "check_invariants",
    "eigendecompose_dense",
    "eigendecompose_grid",
    "eigenspace_projectors",
    "path_modes",
    "synthesize",
    "write_spectrum_csv",
]

DEFAULT_DENSE_CAP = 4096
MAX_QL_SWEEPS = 50

TOL_EIG_REL = 1e-9
TOL_ORTHO = 1e-8
TOL_SUM_REL = 1e-6


class EigenBasis:
    """Orthonormal Laplacian eigenbasis with ascending eigenvalues.

    Subclasses supply the storage of the eigenvectors; this base class
    holds the eigenvalues and the common checks.
    """

    source: str = ""

    def __init__(self, eigenvalues: np.ndarray, num_edges: int):
        eigenvalues = np.asarray(eigenvalues, dtype=np.float64)
        lam_max = float(eigenvalues[-1]) if eigenvalues.size else 0.0
        tol = TOL_EIG_REL * abs(lam_max)
        if np.any(np.diff(eigenvalues) < 0):
            raise ValueError("eigenvalues must be sorted ascending")
        if eigenvalues[0] < -tol or eigenvalues[0] > tol:
            raise ValueError(
                f"smallest Laplacian eigenvalue {eigenvalues[0]:.3e} is not zero "
                f"within {tol:.1e}"
            )
        # Laplacians are positive semidefinite; negative values are round-off.
        eigenvalues = np.maximum(eigenvalues, 0.0)
        eigenvalues.setflags(write=False)
        self.eigenvalues = eigenvalues
        self.num_edges = int(num_edges)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    def _check_signal(self, signal) -> np.ndarray:
        signal = np.asarray(signal, dtype=np.float64)
        if signal.shape != (self.n,):
            raise DimensionError(f"signal has shape {signal.shape}, basis dimension is {self.n}")
        return signal

    def _check_coeffs(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=np.float64)
        if coeffs.ndim != 1 or coeffs.shape[0] > self.n:
            raise DimensionError(
                f"coefficient vector of shape {coeffs.shape} does not fit a basis of dimension {self.n}"
            )
        return coeffs

    def _check_count(self, count):
        if count is None:
            return self.n
        count = int(count)
        if not 0 <= count <= self.n:
            raise DimensionError(f"mode count {count} outside [0, {self.n}]")
        return count

    def analyze(self, signal, count: int | None = None) -> np.ndarray:
        """Inner products of ``signal`` with the first ``count`` eigenvectors."""
        raise NotImplementedError

    def synthesize(self, coeffs) -> np.ndarray:
        """Linear combination of the leading eigenvectors weighted by ``coeffs``."""
        raise NotImplementedError

    def vector(self, k: int) -> np.ndarray:
        e = np.zeros(k + 1)
        e[k] = 1.0
        return self.synthesize(e)

    @property
    def eigenvectors(self) -> np.ndarray:
        """Dense ``n x n`` matrix whose column ``k`` pairs with ``eigenvalues[k]``."""
        raise NotImplementedError

    def orthonormality_error(self) -> float:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, lambda_max={self.lambda_max:.6g})"


class DenseEigenBasis(EigenBasis):
    source = "dense-solve"

    def __init__(self, eigenvalues, eigenvectors, num_edges):
        super().__init__(eigenvalues, num_edges)
        eigenvectors = np.ascontiguousarray(eigenvectors, dtype=np.float64)
        eigenvectors.setflags(write=False)
        self._vectors = eigenvectors

    @property
    def eigenvectors(self):
        return self._vectors

    def analyze(self, signal, count=None):
        signal = self._check_signal(signal)
        count = self._check_count(count)
        return self._vectors[:, :count].T @ signal

    def synthesize(self, coeffs):
        coeffs = self._check_coeffs(coeffs)
        return self._vectors[:, : coeffs.shape[0]] @ coeffs

    def orthonormality_error(self):
        gram = self._vectors.T @ self._vectors
        return float(np.abs(gram - np.eye(self.n)).max())


def path_modes(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and orthonormal cosine eigenvectors of the path on ``m`` vertices.

    Column ``a`` is ``c_a * cos(a * pi * (r + 1/2) / m)`` with
    ``c_0 = sqrt(1/m)`` and ``c_a = sqrt(2/m)`` otherwise; its eigenvalue is
    ``4 sin^2(a * pi / (2m))``.
    """
    a = np.arange(m)
    r = np.arange(m)
    values = 4.0 * np.sin(a * np.pi / (2 * m)) ** 2
    modes = np.cos(np.outer(r + 0.5, a) * np.pi / m)
    scale = np.full(m, np.sqrt(2.0 / m))
    scale[0] = np.sqrt(1.0 / m)
    modes *= scale
    return values, modes


class GridEigenBasis(EigenBasis):
    """Factored eigenbasis of the ``rows x cols`` 4-neighbour grid.

    Mode ``k`` is the product of row mode ``axis_modes[k, 0]`` and column
    mode ``axis_modes[k, 1]``.  Ties in eigenvalue are ordered by
    ``(a, b)`` lexicographically.
    """

    source = "grid-analytic"

    def __init__(self, spec: GridSpec):
        self.spec = spec
        rows, cols = spec.rows, spec.cols
        mu_r, self._row_modes = path_modes(rows)
        mu_c, self._col_modes = path_modes(cols)
        a, b = np.divmod(np.arange(rows * cols), cols)
        lam = mu_r[a] + mu_c[b]
        order = np.lexsort((b, a, lam))
        self.axis_modes = np.stack([a[order], b[order]], axis=1)
        self.axis_modes.setflags(write=False)
        # running bounding box of the leading modes, for truncated transforms
        self._box_rows = np.maximum.accumulate(self.axis_modes[:, 0]) + 1
        self._box_cols = np.maximum.accumulate(self.axis_modes[:, 1]) + 1
        num_edges = rows * (cols - 1) + cols * (rows - 1)
        super().__init__(lam[order], num_edges)

    def _box(self, count):
        if count == 0:
            return 0, 0
        return int(self._box_rows[count - 1]), int(self._box_cols[count - 1])

    def analyze(self, signal, count=None):
        signal = self._check_signal(signal)
        count = self._check_count(count)
        if count == 0:
            return np.zeros(0)
        na, nb = self._box(count)
        image = signal.reshape(self.spec.rows, self.spec.cols)
        spectrum = self._row_modes[:, :na].T @ (image @ self._col_modes[:, :nb])
        modes = self.axis_modes[:count]
        return spectrum[modes[:, 0], modes[:, 1]]

    def synthesize(self, coeffs):
        coeffs = self._check_coeffs(coeffs)
        count = coeffs.shape[0]
        if count == 0:
            return np.zeros(self.n)
        na, nb = self._box(count)
        spectrum = np.zeros((na, nb))
        modes = self.axis_modes[:count]
        spectrum[modes[:, 0], modes[:, 1]] = coeffs
        image = (self._row_modes[:, :na] @ spectrum) @ self._col_modes[:, :nb].T
        return image.ravel()

    @property
    def eigenvectors(self):
        full = np.kron(self._row_modes, self._col_modes)
        a, b = self.axis_modes[:, 0], self.axis_modes[:, 1]
        return full[:, a * self.spec.cols + b]

    def orthonormality_error(self):
        # a Kronecker product of orthonormal factors is orthonormal
        err_r = np.abs(self._row_modes.T @ self._row_modes - np.eye(self.spec.rows)).max()
        err_c = np.abs(self._col_modes.T @ self._col_modes - np.eye(self.spec.cols)).max()
        return float(err_r + err_c + err_r * err_c)


def eigendecompose_dense(
    L: LaplacianMatrix | np.ndarray,
    dense_cap: int = DEFAULT_DENSE_CAP,
    max_sweeps: int = MAX_QL_SWEEPS,
) -> DenseEigenBasis:
    """Full eigendecomposition of a Laplacian by Householder + QL.

    Parameters
    ----------
    L : LaplacianMatrix or ndarray
        Graph Laplacian.  A dense array must be symmetric.
    dense_cap : int
        Largest dimension accepted; the work is ``O(n^3)``.
    max_sweeps : int
        QL sweeps allowed per eigenvalue before giving up.

    Raises
    ------
    CapacityError
        ``n > dense_cap``; grids should use :func:`eigendecompose_grid`.
    ConvergenceError
        The QL iteration ran out of sweeps.
    """
    if isinstance(L, LaplacianMatrix):
        n = L.n
        num_edges = L.num_edges
    else:
        L = np.asarray(L, dtype=np.float64)
        n = L.shape[0]
        if L.shape != (n, n) or not np.array_equal(L, L.T):
            raise ValueError("dense Laplacian must be a symmetric square matrix")
        num_edges = int(round(np.trace(L))) // 2
    if n > dense_cap:
        raise CapacityError(
            f"n={n} exceeds the dense solver cap of {dense_cap}; "
            "use eigendecompose_grid for pixel grids"
        )
    dense = L.toarray() if isinstance(L, LaplacianMatrix) else L
    d, e, V = _kernels.tred2(dense)
    V = np.ascontiguousarray(V)
    status = _kernels.tql2(d, e, V, max_sweeps)
    if status:
        raise ConvergenceError(
            f"QL iteration did not converge for eigenvalue {status - 1} within {max_sweeps} sweeps"
        )
    order = np.argsort(d, kind="stable")
    return DenseEigenBasis(d[order], V[:, order], num_edges)


def eigendecompose_grid(spec: GridSpec) -> GridEigenBasis:
    return GridEigenBasis(spec)


def analyze(basis: EigenBasis, signal, count: int | None = None) -> np.ndarray:
    return basis.analyze(signal, count)


def synthesize(basis: EigenBasis, coeffs) -> np.ndarray:
    return basis.synthesize(coeffs)


def eigenspace_projectors(basis: EigenBasis, tol: float = 1e-8) -> list[tuple[float, np.ndarray]]:
    """Orthogonal projectors onto each distinct eigenspace.

    Eigenvalues closer than ``tol`` to their neighbour are grouped.  Returns
    ``(mean eigenvalue, projector)`` pairs in ascending order.
    """
    lam = basis.eigenvalues
    vectors = basis.eigenvectors
    breaks = np.flatnonzero(np.diff(lam) > tol) + 1
    groups = np.split(np.arange(basis.n), breaks)
    out = []
    for idx in groups:
        phi = vectors[:, idx]
        out.append((float(lam[idx].mean()), phi @ phi.T))
    return out


def check_invariants(basis: EigenBasis, L: LaplacianMatrix | None = None) -> dict[str, float]:
    """Measure every eigenbasis invariant; raise ``AssertionError`` on violation.

    Returns the measured errors keyed by invariant name.  Passing the
    Laplacian adds the reconstruction check ``sum(lam * phi phi^T) == L``,
    which needs the dense eigenvectors.
    """
    lam = basis.eigenvalues
    lam_max = basis.lambda_max
    report = {
        "min_eigenvalue": float(lam[0]),
        "orthonormality": basis.orthonormality_error(),
        "eigenvalue_sum": abs(float(lam.sum()) - 2 * basis.num_edges),
    }
    if not np.all(np.diff(lam) >= 0):
        raise AssertionError("eigenvalues not ascending")
    if lam[0] < -TOL_EIG_REL * lam_max or lam[0] > TOL_EIG_REL * lam_max:
        raise AssertionError(f"lambda_0 = {lam[0]:.3e} is not zero")
    if report["orthonormality"] > TOL_ORTHO:
        raise AssertionError(f"orthonormality error {report['orthonormality']:.3e}")
    if report["eigenvalue_sum"] > TOL_SUM_REL * max(basis.num_edges, 1):
        raise AssertionError(
            f"eigenvalue sum {lam.sum():.12g} differs from 2|E| = {2 * basis.num_edges}"
        )
    if L is not None:
        dense = L.toarray() if isinstance(L, LaplacianMatrix) else np.asarray(L, dtype=np.float64)
        phi = basis.eigenvectors
        recon = (phi * lam) @ phi.T
        report["reconstruction"] = float(np.abs(recon - dense).max())
        tol = 1e-8 * max(float(np.abs(dense).max()), 1.0)
        if report["reconstruction"] > tol:
            raise AssertionError(f"reconstruction error {report['reconstruction']:.3e}")
    return report


def write_spectrum_csv(basis: EigenBasis, dest: str | Path | io.TextIOBase) -> None:
    """Dump ``index,eigenvalue`` rows (with header) to a path or text stream."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", newline="") as fh:
            write_spectrum_csv(basis, fh)
        return
    writer = csv.writer(dest, lineterminator="\n")
    writer.writerow(["index", "eigenvalue"])
    for k, value in enumerate(basis.eigenvalues.tolist()):
        writer.writerow([k, repr(value)])
