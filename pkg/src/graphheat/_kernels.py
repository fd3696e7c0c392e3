"""Backend selection for the hot kernels.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
numpy implementations in ``_pykernels`` take over.  ``use_backend`` lets
tests and benchmarks pin one explicitly.
"""

from __future__ import annotations

import contextlib
import warnings

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError as exc:  # extension not built
    _ckernels = None
    warnings.warn(
        f"graphheat: compiled kernels unavailable ({exc}); using numpy fallback",
        RuntimeWarning,
        stacklevel=2,
    )

CYTHON_AVAILABLE = _ckernels is not None
BACKENDS = ("cython", "python") if CYTHON_AVAILABLE else ("python",)

_active = _ckernels if CYTHON_AVAILABLE else _pykernels


def backend() -> str:
    return "cython" if _active is _ckernels and CYTHON_AVAILABLE else "python"


def set_backend(name: str) -> None:
    global _active
    if name == "cython":
        if not CYTHON_AVAILABLE:
            raise RuntimeError("compiled kernels are not built; reinstall with Cython available")
        _active = _ckernels
    elif name == "python":
        _active = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextlib.contextmanager
def use_backend(name: str):
    previous = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def tred2(a: np.ndarray):
    return _active.tred2(np.ascontiguousarray(a, dtype=np.float64))


def tql2(d: np.ndarray, e: np.ndarray, V: np.ndarray, max_sweeps: int) -> int:
    return int(_active.tql2(d, e, V, int(max_sweeps)))


def laplacian_matvec(indptr, indices, degree, x):
    return _active.laplacian_matvec(indptr, indices, degree, x)


def euler_evolve(indptr, indices, degree, u0, dt, steps, dt_last):
    u0 = np.ascontiguousarray(u0, dtype=np.float64)
    return _active.euler_evolve(indptr, indices, degree, u0, float(dt), int(steps), float(dt_last))
