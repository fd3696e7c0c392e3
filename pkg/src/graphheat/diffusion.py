"""Heat flow ``dU/dt + L U = 0`` on a graph, forwards and backwards in time.

Forward evolution is available both as explicit Euler stepping on the
sparse Laplacian and exactly in the eigenbasis.  Backward evolution is
always spectral: mode ``i`` is scaled by ``exp(lambda_i (T - t))``.  The
naive reconstruction keeps every mode; the cut-off reconstruction keeps
only the admissible modes ``lambda_i <= M_eps``, where
``M_eps = ln(eps^-gamma) / T`` (capped at the largest eigenvalue).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import AmplificationError, ConfigurationError, DimensionError
from .graph import LaplacianMatrix
from .spectral import EigenBasis

__all__ = [
    "MAX_EXPONENT",
    "EulerConfig",
    "RegularizationParams",
    "backward_cutoff",
    "backward_naive",
    "count_admissible",
    "forward_euler",
    "forward_spectral",
    "select_m_eps",
]

# exp overflows double precision just above 709.78
MAX_EXPONENT = 700.0


@dataclass(frozen=True)
class EulerConfig:
    """Explicit Euler schedule reaching ``T`` exactly.

    The step size is the Courant number itself (unit pixel spacing).
    ``steps = ceil(T / dt)`` and the last step is shortened to
    ``T - (steps - 1) * dt``.
    """

    T: float = 0.5
    courant: float = 0.03
    steps: int = field(init=False)
    dt_last: float = field(init=False)

    def __post_init__(self):
        if not (self.T > 0 and math.isfinite(self.T)):
            raise ConfigurationError(f"terminal time must be positive, got {self.T}")
        if not (self.courant > 0 and math.isfinite(self.courant)):
            raise ConfigurationError(f"Courant number must be positive, got {self.courant}")
        ratio = self.T / self.courant
        nearest = round(ratio)
        # T/dt = 16.999999999999996 means 17 full steps, not 18
        if nearest >= 1 and math.isclose(ratio, nearest, rel_tol=1e-9):
            steps = int(nearest)
        else:
            steps = math.ceil(ratio)
        dt_last = self.T - (steps - 1) * self.courant
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "dt_last", dt_last)

    @property
    def dt(self) -> float:
        return self.courant


def forward_euler(
    L: LaplacianMatrix,
    u0,
    cfg: EulerConfig,
    lambda_max: float | None = None,
) -> np.ndarray:
    """Integrate ``dU/dt = -L U`` from ``u0`` to ``cfg.T`` by explicit Euler.

    Stability requires ``dt * lambda_max <= 2``.  Without an explicit
    ``lambda_max`` the Gershgorin bound ``2 * max degree`` is used, which
    can only make the check stricter.
    """
    u0 = np.asarray(u0, dtype=np.float64)
    if u0.shape != (L.n,):
        raise DimensionError(f"signal has shape {u0.shape}, Laplacian is {L.n}x{L.n}")
    lam = L.gershgorin_bound() if lambda_max is None else float(lambda_max)
    if cfg.dt * lam > 2.0:
        raise ConfigurationError(
            f"explicit Euler unstable: dt * lambda_max = {cfg.dt * lam:.4g} > 2"
        )
    out = _kernels.euler_evolve(L.indptr, L.indices, L.degree, u0, cfg.dt, cfg.steps, cfg.dt_last)
    if not np.all(np.isfinite(out)):
        raise FloatingPointError("forward Euler produced non-finite values")
    return out


def forward_spectral(basis: EigenBasis, u0, T: float) -> np.ndarray:
    """Exact heat flow: mode ``i`` decays by ``exp(-lambda_i T)``."""
    if T < 0:
        raise ValueError("forward evolution needs T >= 0; use backward_naive/backward_cutoff")
    coeffs = basis.analyze(u0)
    return basis.synthesize(np.exp(-basis.eigenvalues * T) * coeffs)


def _check_time(t: float, T: float) -> None:
    if not 0 <= t <= T:
        raise ValueError(f"reconstruction time t={t} outside [0, {T}]")


def _amplify(basis: EigenBasis, uT, span: float, count: int) -> np.ndarray:
    exponents = basis.eigenvalues[:count] * span
    if count and exponents[-1] > MAX_EXPONENT:
        raise AmplificationError(
            f"amplification exp({exponents[-1]:.1f}) overflows; "
            "reduce T - t or use the cut-off reconstruction"
        )
    coeffs = basis.analyze(uT, count)
    return basis.synthesize(np.exp(exponents) * coeffs)


def backward_naive(basis: EigenBasis, uT, T: float, t: float = 0.0) -> np.ndarray:
    """Unregularised reconstruction of ``U(t)`` from terminal data ``uT``."""
    _check_time(t, T)
    return _amplify(basis, uT, T - t, basis.n)


@dataclass(frozen=True)
class RegularizationParams:
    epsilon: float
    gamma: float
    T: float
    m_eps: float
    capped: bool


def select_m_eps(epsilon: float, gamma: float, T: float, lambda_max: float) -> RegularizationParams:
    """Cut-off level ``M_eps = ln(eps^-gamma) / T``, capped at ``lambda_max``."""
    if not 0 < epsilon < 1:
        raise ConfigurationError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0 < gamma < 1:
        raise ConfigurationError(f"gamma must lie in (0, 1), got {gamma}")
    if not T > 0:
        raise ConfigurationError(f"T must be positive, got {T}")
    if not lambda_max >= 0:
        raise ConfigurationError(f"lambda_max must be non-negative, got {lambda_max}")
    m_eps = math.log(epsilon ** -gamma) / T
    if m_eps > lambda_max:
        return RegularizationParams(epsilon, gamma, T, float(lambda_max), True)
    return RegularizationParams(epsilon, gamma, T, m_eps, False)


def count_admissible(basis: EigenBasis, m_eps: float) -> int:
    """Number of modes with ``lambda_i <= m_eps``."""
    return int(np.searchsorted(basis.eigenvalues, m_eps, side="right"))


def backward_cutoff(
    basis: EigenBasis,
    uT,
    params: RegularizationParams | float,
    t: float = 0.0,
    T: float | None = None,
) -> np.ndarray:
    """Cut-off reconstruction of ``U(t)`` keeping modes with ``lambda_i <= M_eps``.

    ``params`` is normally a :class:`RegularizationParams`; a bare float is
    taken as ``M_eps`` and then ``T`` must be given.
    """
    if isinstance(params, RegularizationParams):
        m_eps, T = params.m_eps, params.T
    else:
        if T is None:
            raise TypeError("T is required when params is a bare cut-off value")
        m_eps = float(params)
    _check_time(t, T)
    return _amplify(basis, uT, T - t, count_admissible(basis, m_eps))
