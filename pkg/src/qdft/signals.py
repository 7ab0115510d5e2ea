"""Test inputs with known spectral structure."""

from __future__ import annotations

import numpy as np

from .core_dft import idft_1d, idft_2d


def planted_signal(n: int, m: int, rng: np.random.Generator, *, big_fraction: float = 0.999):
    """Signal whose spectrum has ``m`` equal-magnitude coefficients holding ``big_fraction`` of the energy.

    The rest is complex Gaussian noise spread over the other coefficients.
    Returns ``(x, big_indices)`` with unit total energy.
    """
    if not 0 < m <= n:
        raise ValueError(f"need 0 < m <= n, got m={m}, n={n}")
    idx = rng.choice(n, size=m, replace=False)
    spec = np.zeros(n, dtype=complex)
    rest = np.setdiff1d(np.arange(n), idx)
    if rest.size:
        noise = rng.normal(size=rest.size) + 1j * rng.normal(size=rest.size)
        spec[rest] = noise * np.sqrt((1 - big_fraction) / np.sum(np.abs(noise) ** 2))
    else:
        big_fraction = 1.0
    phases = np.exp(2j * np.pi * rng.random(m))
    spec[idx] = phases * np.sqrt(big_fraction / m)
    return idft_1d(spec, method="fft"), np.sort(idx)


def planted_image(n: int, m: int, rng: np.random.Generator, *, big_fraction: float = 0.999):
    """Square image whose 2-D spectrum has ``m`` equal-magnitude entries plus noise."""
    spec = np.zeros(n * n, dtype=complex)
    idx = rng.choice(n * n, size=m, replace=False)
    rest = np.setdiff1d(np.arange(n * n), idx)
    noise = rng.normal(size=rest.size) + 1j * rng.normal(size=rest.size)
    spec[rest] = noise * np.sqrt((1 - big_fraction) / np.sum(np.abs(noise) ** 2))
    spec[idx] = np.exp(2j * np.pi * rng.random(m)) * np.sqrt(big_fraction / m)
    return idft_2d(spec.reshape(n, n), method="fft")


def ramp_image(n: int) -> np.ndarray:
    i, j = np.mgrid[0:n, 0:n]
    return (i + j).astype(float)


def gaussian_bump(n: int, center: float | None = None, width: float | None = None) -> np.ndarray:
    center = n / 2 if center is None else center
    width = n / 32 if width is None else width
    k = np.arange(n)
    return np.exp(-0.5 * ((k - center) / width) ** 2)
