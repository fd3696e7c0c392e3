"""Simple graphs, their adjacency/degree/Laplacian matrices and the pixel grid.

Vertices are 0-based integers.  Images map onto grids in row-major order:
pixel ``(r, c)`` of a ``rows x cols`` image is vertex ``r * cols + c``.
"""

from __future__ import annotations

import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import DimensionError, GraphSizeError

__all__ = [
    "GridSpec",
    "IsolatedVertexWarning",
    "LaplacianMatrix",
    "SimpleGraph",
    "adjacency_matrix",
    "degree_vector",
    "grid_graph",
    "laplacian",
    "random_graph",
    "read_edgelist",
    "write_edgelist",
]

_INDEX_MAX = min(sys.maxsize, np.iinfo(np.intp).max)


class IsolatedVertexWarning(UserWarning):
    """Emitted when a Laplacian is built for a graph with degree-0 vertices."""


def _checked_size(rows: int, cols: int) -> int:
    if rows < 1 or cols < 1:
        raise ValueError(f"grid dimensions must be >= 1, got {rows}x{cols}")
    if rows > _INDEX_MAX // cols:
        raise GraphSizeError(f"{rows}x{cols} grid exceeds the platform index range")
    return rows * cols


@dataclass(frozen=True)
class GridSpec:
    rows: int
    cols: int

    def __post_init__(self):
        for name in ("rows", "cols"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {value!r}")
        _checked_size(int(self.rows), int(self.cols))
        object.__setattr__(self, "rows", int(self.rows))
        object.__setattr__(self, "cols", int(self.cols))

    @property
    def n(self) -> int:
        return self.rows * self.cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)


class SimpleGraph:
    """Undirected graph without self-loops or repeated edges.

    Edges are kept as an ``(m, 2)`` integer array with ``i < j`` in every
    row, sorted lexicographically.  Duplicate pairs given in either
    orientation collapse to one edge.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of pairs
        Unordered vertex pairs ``(i, j)`` with ``0 <= i, j < n`` and ``i != j``.
    """

    __slots__ = ("_n", "_edges", "_keys")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] | np.ndarray = ()):
        n = int(n)
        if n < 1:
            raise ValueError(f"a graph needs at least one vertex, got n={n}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            arr = np.empty((0, 2), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be a sequence of vertex pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError(f"edge endpoint outside [0, {n})")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise ValueError("self-loops are not allowed in a simple graph")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        keys = np.unique(lo * n + hi)
        self._n = n
        self._keys = keys
        self._edges = np.stack([keys // n, keys % n], axis=1)
        self._edges.setflags(write=False)
        self._keys.setflags(write=False)

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> np.ndarray:
        """Read-only ``(m, 2)`` array of sorted edges, ``i < j`` per row."""
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        i, j = min(i, j), max(i, j)
        key = i * self._n + j
        pos = np.searchsorted(self._keys, key)
        return bool(pos < len(self._keys) and self._keys[pos] == key)

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._keys, other._keys)

    def __hash__(self):
        return hash((self._n, self._keys.tobytes()))

    def __repr__(self):
        return f"SimpleGraph(n={self._n}, num_edges={self.num_edges})"


class LaplacianMatrix:
    """Combinatorial Laplacian ``L = D - A`` in compressed sparse row form.

    Only the adjacency structure and the degrees are stored; all
    off-diagonal entries are ``-1`` so no value array is needed.
    """

    __slots__ = ("n", "degree", "indptr", "indices", "num_edges")

    def __init__(self, n: int, degree: np.ndarray, indptr: np.ndarray, indices: np.ndarray):
        self.n = n
        self.degree = degree
        self.indptr = indptr
        self.indices = indices
        self.num_edges = len(indices) // 2
        for arr in (degree, indptr, indices):
            arr.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n, self.n)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise DimensionError(f"expected vector of length {self.n}, got shape {x.shape}")
        return _kernels.laplacian_matvec(self.indptr, self.indices, self.degree, x)

    def __matmul__(self, x):
        return self.matvec(x)

    def toarray(self, dtype=np.float64) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=dtype)
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        out[rows, self.indices] = -1
        out[np.arange(self.n), np.arange(self.n)] = self.degree
        return out

    @property
    def max_abs(self) -> float:
        """Largest absolute entry, ``max(max degree, 1 if any edge)``."""
        if self.n == 0:
            return 0.0
        return float(max(self.degree.max(), 1 if self.num_edges else 0))

    def gershgorin_bound(self) -> float:
        """Upper bound ``2 * max degree`` on the largest eigenvalue."""
        return 2.0 * float(self.degree.max()) if self.n else 0.0

    def trace(self) -> int:
        return int(self.degree.sum())


def adjacency_matrix(g: SimpleGraph) -> np.ndarray:
    """Dense symmetric 0/1 adjacency matrix with zero diagonal."""
    a = np.zeros((g.n, g.n), dtype=np.int64)
    i, j = g.edges[:, 0], g.edges[:, 1]
    a[i, j] = 1
    a[j, i] = 1
    return a


def degree_vector(g: SimpleGraph) -> np.ndarray:
    return np.bincount(g.edges.ravel(), minlength=g.n).astype(np.int64)


def laplacian(g: SimpleGraph) -> LaplacianMatrix:
    """Build ``L = D - A`` for ``g``.

    Isolated vertices are allowed and give an all-zero row; an
    :class:`IsolatedVertexWarning` flags them.
    """
    deg = degree_vector(g)
    if g.n > 1 and np.any(deg == 0):
        warnings.warn(
            f"{int(np.count_nonzero(deg == 0))} isolated vertices (degree 0)",
            IsolatedVertexWarning,
            stacklevel=2,
        )
    i, j = g.edges[:, 0], g.edges[:, 1]
    src = np.concatenate([i, j])
    dst = np.concatenate([j, i])
    order = np.lexsort((dst, src))
    indices = dst[order].astype(np.int64)
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    return LaplacianMatrix(g.n, deg, indptr, indices)


def grid_graph(spec: GridSpec) -> SimpleGraph:
    """4-neighbour lattice on ``spec.rows x spec.cols`` pixels, row-major."""
    rows, cols = spec.rows, spec.cols
    idx = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols)
    horizontal = np.stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()], axis=1)
    vertical = np.stack([idx[:-1, :].ravel(), idx[1:, :].ravel()], axis=1)
    return SimpleGraph(rows * cols, np.concatenate([horizontal, vertical]))


def random_graph(n: int, p: float, seed: int | np.random.Generator | None = None) -> SimpleGraph:
    """Erdos-Renyi G(n, p) sample."""
    rng = np.random.default_rng(seed)
    i, j = np.triu_indices(n, k=1)
    keep = rng.random(len(i)) < p
    return SimpleGraph(n, np.stack([i[keep], j[keep]], axis=1))


def write_edgelist(g: SimpleGraph, path: str | Path) -> None:
    """Write ``"n m"`` then one ``"i j"`` line per edge (``i < j``), LF endings."""
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{i} {j}" for i, j in g.edges.tolist())
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def read_edgelist(path: str | Path) -> SimpleGraph:
    tokens = Path(path).read_text(encoding="ascii").split()
    if len(tokens) < 2:
        raise ValueError("edge list needs an 'n m' header")
    n, m = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != 2 * m:
        raise ValueError(f"header declares {m} edges but found {len(body) / 2:g}")
    pairs = np.asarray(body, dtype=np.int64).reshape(m, 2)
    return SimpleGraph(n, pairs)
