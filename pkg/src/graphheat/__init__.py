"""Initial-state reconstruction for heat diffusion on graphs.

Build a grid or general graph, decompose its Laplacian, blur a signal
forward in time and reconstruct it backwards with or without spectral
cut-off regularisation.
"""

from ._kernels import CYTHON_AVAILABLE, backend
from .diffusion import (
    EulerConfig,
    RegularizationParams,
    backward_cutoff,
    backward_naive,
    count_admissible,
    forward_euler,
    forward_spectral,
    select_m_eps,
)
from .graph import GridSpec, LaplacianMatrix, SimpleGraph, adjacency_matrix, degree_vector, grid_graph, laplacian
from .image import GrayImage, image_to_signal, read_pgm, resize, signal_to_image, write_pgm
from .metrics import NoiseSpec, add_awgn, l2_error, psnr
from .spectral import EigenBasis, analyze, eigendecompose_dense, eigendecompose_grid, synthesize

__version__ = "0.1.0"
