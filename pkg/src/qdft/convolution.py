"""Periodic convolution estimated from sparse spectra.

With the unitary DFT used throughout the package the convolution theorem
carries a scale factor: ``DFT(u * v) = sqrt(N) * DFT(u) . DFT(v)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_dft import as_complex_vector, energy, idft_1d
from .qdft1d import DEFAULT_BUDGET_MULTIPLIER, QueryLedger, SparseSpectrum, qdft_1d

__all__ = [
    "ConvolutionReport",
    "conv_direct",
    "pad_to_common",
    "spectrum_product",
    "conv_via_qdft",
]


@dataclass
class ConvolutionReport:
    w_hat: np.ndarray
    product: SparseSpectrum
    spectra: tuple[SparseSpectrum, SparseSpectrum]
    ledgers: tuple[QueryLedger, QueryLedger]
    w_exact: np.ndarray | None = None
    relative_l2_error: float | None = None


def conv_direct(u, v) -> np.ndarray:
    """``w_k = sum_j u_j v_{(k - j) mod N}`` evaluated term by term."""
    u = as_complex_vector(u)
    v = as_complex_vector(v)
    if u.size != v.size:
        raise ValueError(f"length mismatch: {u.size} != {v.size}; pad first")
    n = u.size
    k = np.arange(n)
    return (v[(k[:, None] - k[None, :]) % n] * u[None, :]).sum(axis=1)


def pad_to_common(u, v) -> tuple[np.ndarray, np.ndarray]:
    u = as_complex_vector(u)
    v = as_complex_vector(v)
    n = max(u.size, v.size)
    return np.pad(u, (0, n - u.size)), np.pad(v, (0, n - v.size))


def spectrum_product(cu: SparseSpectrum, cv: SparseSpectrum) -> SparseSpectrum:
    """Pointwise product of two sparse spectra, scaled by ``sqrt(N)``.

    An index missing from either input is treated as a zero coefficient.
    The result's ``total_energy`` is its own retained energy: the exact
    product energy is unknown without the full spectra.
    """
    if cu.n != cv.n:
        raise ValueError(f"length mismatch: {cu.n} != {cv.n}")
    scale = math.sqrt(cu.n)
    entries = {k: scale * cu.entries[k] * cv.entries[k] for k in sorted(cu.entries.keys() & cv.entries.keys())}
    kept = float(sum(abs(c) ** 2 for c in entries.values()))
    return SparseSpectrum(cu.n, entries, 0.0, kept)


def conv_via_qdft(
    u,
    v,
    epsilon: float,
    rng: np.random.Generator,
    *,
    exact: bool = True,
    exclude_found: bool = True,
    budget_multiplier: float = DEFAULT_BUDGET_MULTIPLIER,
) -> ConvolutionReport:
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    u, v = pad_to_common(u, v)
    opts = dict(exclude_found=exclude_found, budget_multiplier=budget_multiplier)
    su, lu = qdft_1d(u, epsilon, rng, **opts)
    sv, lv = qdft_1d(v, epsilon, rng, **opts)
    prod = spectrum_product(su, sv)
    w_hat = idft_1d(prod.dense())
    report = ConvolutionReport(w_hat, prod, (su, sv), (lu, lv))
    if exact:
        w = conv_direct(u, v)
        report.w_exact = w
        ew = energy(w)
        report.relative_l2_error = math.sqrt(energy(w - w_hat) / ew) if ew > 0 else 0.0
    return report
