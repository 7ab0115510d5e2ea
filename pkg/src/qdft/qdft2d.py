"""Sparse 2-D Fourier transform as two pair-index search passes.

``C = W F W`` is split as ``G = W F`` followed by ``C = G W``.  A pass
searches the ``N*N`` pairs ``(i, j)`` for large ``|W_i . a_j|**2`` where
``a_j`` is column ``j`` of its input, i.e. it extracts large entries of
``W A``.

Pass 2 reuses the same routine on ``G.T``: since ``W`` is symmetric,
``(G W).T = W G.T``, so entry ``(i, j)`` found there is ``C[j, i]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .amplitude import MAX_STATE_SIZE
from .core_dft import as_complex_matrix, dft_2d, energy, fourier_matrix, fourier_row
from .qdft1d import (
    DEFAULT_BUDGET_MULTIPLIER,
    CoefficientOracle,
    OuterStep,
    RESIDUAL_FLOOR,
    QueryLedger,
    extract_large,
)

__all__ = [
    "SparseMatrixSpectrum",
    "pair_oracle",
    "pair_search_pass",
    "qdft_2d",
    "densify",
    "truncation_error",
]


@dataclass
class SparseMatrixSpectrum:
    n: int
    entries: dict[tuple[int, int], complex]
    residual_energy: float
    total_energy: float
    trace: list[OuterStep] = field(default_factory=list)
    intermediate: "SparseMatrixSpectrum | None" = None

    @property
    def retained_energy(self) -> float:
        return float(sum(abs(c) ** 2 for c in self.entries.values()))

    def dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=complex)
        for (i, j), c in self.entries.items():
            out[i, j] = c
        return out

    def transposed(self) -> "SparseMatrixSpectrum":
        return SparseMatrixSpectrum(
            self.n,
            {(j, i): c for (i, j), c in self.entries.items()},
            self.residual_energy,
            self.total_energy,
            self.trace,
        )


def pair_oracle(a) -> CoefficientOracle:
    """Search database for the entries of ``W @ a``, keyed by ``i * N + j``."""
    a = as_complex_matrix(a)
    n = a.shape[0]
    if n * n > MAX_STATE_SIZE:
        raise ValueError(f"{n}x{n} pair space exceeds the dense simulation limit")
    g = np.fft.fft(a, axis=0, norm="ortho")

    def coefficient(k: int) -> complex:
        i, j = divmod(k, n)
        return complex(fourier_row(n, i) @ a[:, j])

    return CoefficientOracle(
        size=n * n,
        energies=(g.real**2 + g.imag**2).ravel(),
        coefficient=coefficient,
        total_energy=energy(a),
    )


def pair_search_pass(
    columns,
    epsilon_pass: float,
    rng: np.random.Generator,
    ledger: QueryLedger,
    *,
    exclude_found: bool = True,
    budget_multiplier: float = DEFAULT_BUDGET_MULTIPLIER,
) -> SparseMatrixSpectrum:
    """Large entries of ``W @ columns`` found by searching the pair space."""
    oracle = pair_oracle(columns)
    n = int(round(np.sqrt(oracle.size)))
    found, residual, trace = extract_large(
        oracle,
        epsilon_pass,
        rng,
        ledger,
        exclude_found=exclude_found,
        budget_multiplier=budget_multiplier,
    )
    entries = {divmod(k, n): c for k, c in found.items()}
    return SparseMatrixSpectrum(n, entries, residual, oracle.total_energy, trace)


FIRST_PASS_MODES = ("all", "sparse", "exact")


def qdft_2d(
    f,
    epsilon: float,
    rng: np.random.Generator,
    *,
    first_pass: str = "all",
    split: float = 0.5,
    exclude_found: bool = True,
    budget_multiplier: float = DEFAULT_BUDGET_MULTIPLIER,
) -> tuple[SparseMatrixSpectrum, QueryLedger]:
    """Two-pass sparse 2-D DFT.

    ``first_pass`` selects how ``G = W F`` is obtained:

    ``"all"``
        search until every entry of ``G`` above the residual floor is
        found, so pass 2 sees the exact ``G`` and every entry it returns
        equals the true 2-D coefficient.  Pass 2 gets the whole ``epsilon``.
    ``"sparse"``
        stop pass 1 at ``split * epsilon``; pass 2 gets the rest.  Cheaper,
        but a partially kept row of ``G`` smears into its row of ``C``, so
        returned entries are only approximations.
    ``"exact"``
        compute ``G`` with the dense transform, no queries spent.

    The retained part of ``G`` is attached to the result as
    ``intermediate``.
    """
    a = as_complex_matrix(f)
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if first_pass not in FIRST_PASS_MODES:
        raise ValueError(f"first_pass must be one of {FIRST_PASS_MODES}, got {first_pass!r}")
    if not 0 < split < 1:
        raise ValueError(f"split must lie in (0, 1), got {split}")
    n = a.shape[0]
    ledger = QueryLedger()
    opts = dict(exclude_found=exclude_found, budget_multiplier=budget_multiplier)
    if first_pass == "exact":
        g = fourier_matrix(n) @ a
        g_sparse = SparseMatrixSpectrum(
            n,
            {(i, j): complex(g[i, j]) for i in range(n) for j in range(n) if g[i, j] != 0},
            0.0,
            energy(a),
        )
        eps2 = epsilon
    elif first_pass == "all":
        g_sparse = pair_search_pass(a, RESIDUAL_FLOOR, rng, ledger, **opts)
        eps2 = epsilon
    else:
        g_sparse = pair_search_pass(a, split * epsilon, rng, ledger, **opts)
        eps2 = (1 - split) * epsilon
    c_t = pair_search_pass(g_sparse.dense().T, eps2, rng, ledger, **opts)
    result = c_t.transposed()
    # residual is reported against the input, not the truncated intermediate
    result.total_energy = energy(a)
    result.residual_energy = g_sparse.residual_energy + c_t.residual_energy
    result.intermediate = g_sparse
    return result, ledger


def densify(s: SparseMatrixSpectrum) -> np.ndarray:
    return s.dense()


def truncation_error(f, s: SparseMatrixSpectrum) -> float:
    """Energy of the difference between the exact 2-D DFT and the sparse result."""
    return energy(dft_2d(f, method="fft") - s.dense())
