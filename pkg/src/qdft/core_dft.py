"""Exact classical Fourier transforms used as ground truth.

All transforms use the unitary normalization: the Fourier matrix has
entries ``exp(-2j*pi*i*k/n) / sqrt(n)``.  Coefficients are plain
(unconjugated) row-vector products, ``c_i = sum_k W[i, k] * x[k]``.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_complex_vector",
    "as_complex_matrix",
    "fourier_row",
    "fourier_matrix",
    "dft_1d",
    "idft_1d",
    "dft_2d",
    "idft_2d",
    "energy",
    "inner_product",
    "inner_sq",
]

# Above this size the dense matrix costs more memory than it is worth.
_MATRIX_LIMIT = 2048


def as_complex_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    if v.size < 1:
        raise ValueError("vector must have at least one element")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector contains non-finite entries")
    return v


def as_complex_matrix(f) -> np.ndarray:
    a = np.asarray(f, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    return a


def _check_index(n: int, i: int) -> None:
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    if not 0 <= i < n:
        raise IndexError(f"index {i} out of range for size {n}")


def fourier_row(n: int, i: int) -> np.ndarray:
    """Row ``i`` of the ``n``-point Fourier matrix."""
    _check_index(n, i)
    k = np.arange(n)
    # reduce the exponent mod n first so large i*k keep full precision
    phase = -2.0 * np.pi * ((i * k) % n) / n
    return np.exp(1j * phase) / np.sqrt(n)


def fourier_matrix(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    k = np.arange(n)
    phase = -2.0 * np.pi * (np.outer(k, k) % n) / n
    return np.exp(1j * phase) / np.sqrt(n)


def _use_matrix(n: int, method: str) -> bool:
    if method == "matrix":
        return True
    if method == "fft":
        return False
    if method == "auto":
        return n <= _MATRIX_LIMIT
    raise ValueError(f"unknown method {method!r}")


def dft_1d(x, method: str = "auto") -> np.ndarray:
    """Unitary DFT of a vector.

    ``method="matrix"`` evaluates the dense matrix product literally;
    ``"fft"`` uses numpy's FFT with orthonormal scaling, which computes the
    same map.  ``"auto"`` picks the matrix route for moderate sizes.
    """
    v = as_complex_vector(x)
    if _use_matrix(v.size, method):
        return fourier_matrix(v.size) @ v
    return np.fft.fft(v, norm="ortho")


def idft_1d(c, method: str = "auto") -> np.ndarray:
    v = as_complex_vector(c)
    if _use_matrix(v.size, method):
        # W is symmetric, so its conjugate transpose is its conjugate
        return np.conj(fourier_matrix(v.size)) @ v
    return np.fft.ifft(v, norm="ortho")


def dft_2d(f, method: str = "auto") -> np.ndarray:
    """``W F W``: transform the columns of ``F``, then the rows of the result."""
    a = as_complex_matrix(f)
    n = a.shape[0]
    if _use_matrix(n, method):
        w = fourier_matrix(n)
        return (w @ a) @ w
    return np.fft.fft(np.fft.fft(a, axis=0, norm="ortho"), axis=1, norm="ortho")


def idft_2d(c, method: str = "auto") -> np.ndarray:
    a = as_complex_matrix(c)
    n = a.shape[0]
    if _use_matrix(n, method):
        wh = np.conj(fourier_matrix(n))
        return (wh @ a) @ wh
    return np.fft.ifft(np.fft.ifft(a, axis=0, norm="ortho"), axis=1, norm="ortho")


def energy(x) -> float:
    """Sum of squared moduli of every entry (vector or matrix)."""
    a = np.asarray(x, dtype=complex)
    return float(np.sum(a.real**2 + a.imag**2))


def inner_product(n: int, i: int, x) -> complex:
    """Coefficient ``c_i``: row ``i`` of the Fourier matrix times ``x``."""
    v = as_complex_vector(x)
    if v.size != n:
        raise ValueError(f"vector length {v.size} does not match n={n}")
    return complex(fourier_row(n, i) @ v)


def inner_sq(n: int, i: int, x) -> float:
    """Squared modulus of coefficient ``i``."""
    c = inner_product(n, i, x)
    return c.real**2 + c.imag**2
