"""Simulated quantum sparse DFT (1-D, 2-D) and convolution estimation."""

from .amplitude import (
    AmplitudeState,
    InvariantViolation,
    MarkPredicate,
    grover_iterate,
    make_rng,
    measure_index,
    success_probability,
    uniform_state,
)
from .convolution import ConvolutionReport, conv_direct, conv_via_qdft, pad_to_common, spectrum_product
from .core_dft import dft_1d, dft_2d, energy, fourier_matrix, fourier_row, idft_1d, idft_2d, inner_sq
from .qdft1d import QueryLedger, SparseSpectrum, ThresholdWindow, qdft_1d, reconstruct, subroutine1
from .qdft2d import SparseMatrixSpectrum, pair_search_pass, qdft_2d

__version__ = "0.1.0"
