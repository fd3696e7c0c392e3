"""Seeded Gaussian noise and image error metrics.

Noise comes from numpy's ``PCG64`` bit generator (``numpy.random.default_rng``)
and its ziggurat normal sampler, so a given seed yields the same noise on
every platform for a fixed numpy major version.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

__all__ = ["PEAK", "NoiseSpec", "add_awgn", "l2_error", "mse", "psnr"]

PEAK = 255.0


@dataclass(frozen=True)
class NoiseSpec:
    """AWGN parameters; ``sigma`` is the standard deviation in grey levels."""

    sigma: float = 20.0
    seed: int = 0

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")


def add_awgn(u, spec: NoiseSpec) -> np.ndarray:
    """Return ``u`` plus i.i.d. N(0, sigma^2) noise; values are not clipped."""
    u = np.asarray(u, dtype=np.float64)
    if not np.all(np.isfinite(u)):
        raise ValueError("input signal contains non-finite values")
    rng = np.random.default_rng(spec.seed)
    noise = rng.standard_normal(u.shape)
    return u + spec.sigma * noise


def _pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def mse(reference, candidate) -> float:
    reference, candidate = _pair(reference, candidate)
    if reference.size == 0:
        raise DimensionError("mean squared error of empty signals")
    return float(np.mean((reference - candidate) ** 2))


def psnr(reference, candidate) -> float:
    """Peak signal-to-noise ratio in dB with peak 255.

    Identical inputs give ``math.inf``.
    """
    err = mse(reference, candidate)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK ** 2 / err)


def l2_error(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.linalg.norm(a - b))
