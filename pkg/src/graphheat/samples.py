"""Synthetic grayscale test images bundled with the package.

The PGM files under ``graphheat/data`` are produced by :func:`generate`
(see ``scripts/make_samples.py``) and quantised to integers.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np

from .image import GrayImage, load_pgm

KINDS = ("gradient", "checker", "disk", "blobs")
SIZES = (8, 32, 128)


def _coords(size: int):
    r, c = np.mgrid[0:size, 0:size]
    return (r + 0.5) / size, (c + 0.5) / size


def generate(kind: str, size: int) -> GrayImage:
    y, x = _coords(size)
    if kind == "gradient":
        px = 30.0 + 195.0 * (0.6 * x + 0.4 * y)
    elif kind == "checker":
        cells = (np.floor(4 * x) + np.floor(4 * y)) % 2
        px = 60.0 + 140.0 * cells
    elif kind == "disk":
        inside = (x - 0.5) ** 2 + (y - 0.45) ** 2 <= 0.3 ** 2
        px = np.where(inside, 200.0, 50.0)
    elif kind == "blobs":
        px = np.full_like(x, 40.0)
        for cy, cx, amp, width in [(0.3, 0.3, 150, 0.12), (0.7, 0.6, 120, 0.18), (0.4, 0.8, 90, 0.08)]:
            px += amp * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2 * width ** 2))
    else:
        raise ValueError(f"unknown sample kind {kind!r}; choose from {KINDS}")
    return GrayImage(np.floor(np.clip(px, 0, 255) + 0.5))


def data_dir() -> Path:
    return Path(str(resources.files("graphheat") / "data"))


def sample_path(kind: str, size: int) -> Path:
    return data_dir() / f"{kind}_{size}.pgm"


def sample_paths(size: int) -> list[Path]:
    return [sample_path(kind, size) for kind in KINDS]


def load_sample(kind: str, size: int) -> GrayImage:
    return load_pgm(sample_path(kind, size))
