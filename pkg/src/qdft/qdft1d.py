"""Sparse 1-D Fourier transform by repeated amplitude-amplified search.

The outer loop keeps a residual energy ``dE`` (signal energy not yet
accounted for by retained coefficients) and searches for any coefficient
whose energy lies in the window ``[dE / (N - nS), dE]``.  The lower edge is
the mean energy of the coefficients not yet found, so by pigeonhole the
window always holds at least one of them while ``dE > 0``.  Each search is
a randomized schedule of Grover iterations with an exact classical check
of the measured index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Callable, Collection

import numpy as np

from .amplitude import (
    InvariantViolation,
    MarkPredicate,
    grover_iterate,
    measure_index,
    uniform_state,
)
from .core_dft import as_complex_vector, dft_1d, energy, idft_1d, inner_product

__all__ = [
    "GROWTH",
    "DEFAULT_BUDGET_MULTIPLIER",
    "ThresholdWindow",
    "QueryLedger",
    "OuterStep",
    "SparseSpectrum",
    "CoefficientOracle",
    "search_budget",
    "subroutine1",
    "qdft_1d",
    "reconstruct",
]

GROWTH = 6 / 5
DEFAULT_BUDGET_MULTIPLIER = 8.0
WINDOW_RTOL = 1e-12
RESIDUAL_FLOOR = 1e-12


@dataclass(frozen=True)
class ThresholdWindow:
    """Energy window ``[alpha, beta]`` plus indices that may not be marked."""

    alpha: float
    beta: float
    excluded: Collection[int] = frozenset()
    atol: float = 0.0

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("window bounds must be nonnegative")
        if self.alpha > self.beta * (1 + WINDOW_RTOL) + self.atol:
            raise ValueError(f"alpha={self.alpha!r} exceeds beta={self.beta!r}")

    @property
    def lo(self) -> float:
        return self.alpha * (1 - WINDOW_RTOL) - self.atol

    @property
    def hi(self) -> float:
        return self.beta * (1 + WINDOW_RTOL) + self.atol

    def admits(self, index: int, e: float) -> bool:
        return index not in self.excluded and self.lo <= e <= self.hi

    def mask(self, energies: np.ndarray) -> np.ndarray:
        m = (energies >= self.lo) & (energies <= self.hi)
        if self.excluded:
            m[np.fromiter(self.excluded, dtype=np.int64)] = False
        return m


@dataclass
class QueryLedger:
    """Counters for one run.  ``grover_iterations`` is the query count."""

    grover_iterations: int = 0
    measurements: int = 0
    subroutine_calls: int = 0
    classical_verifications: int = 0
    predicate_evaluations: int = 0
    budget_exhaustions: int = 0
    duplicate_hits: int = 0

    def __add__(self, other: "QueryLedger") -> "QueryLedger":
        return QueryLedger(
            **{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)}
        )

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class OuterStep:
    alpha: float
    beta: float
    marked: int
    index: int | None
    accepted: bool
    residual: float


@dataclass
class SparseSpectrum:
    n: int
    entries: dict[int, complex]
    residual_energy: float
    total_energy: float
    trace: list[OuterStep] = field(default_factory=list)

    @property
    def retained_energy(self) -> float:
        return float(sum(abs(c) ** 2 for c in self.entries.values()))

    def dense(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=complex)
        for i, c in self.entries.items():
            if not 0 <= i < self.n:
                raise IndexError(f"entry index {i} outside [0, {self.n})")
            out[i] = c
        return out


@dataclass
class CoefficientOracle:
    """What a search needs to know about its coefficient database.

    ``energies`` drives the simulated phase oracle (every index at once);
    ``coefficient`` is the exact classical evaluation used to verify a
    measured index.
    """

    size: int
    energies: np.ndarray
    coefficient: Callable[[int], complex]
    total_energy: float

    @classmethod
    def for_signal(cls, x) -> "CoefficientOracle":
        v = as_complex_vector(x)
        c = dft_1d(v, method="fft")
        return cls(
            size=v.size,
            energies=c.real**2 + c.imag**2,
            coefficient=lambda i: inner_product(v.size, i, v),
            total_energy=energy(v),
        )


def search_budget(size: int, multiplier: float = DEFAULT_BUDGET_MULTIPLIER) -> int:
    if multiplier < 1:
        raise ValueError(f"budget multiplier must be >= 1, got {multiplier}")
    return math.ceil(multiplier * math.sqrt(size))


def _search(
    oracle: CoefficientOracle,
    window: ThresholdWindow,
    rng: np.random.Generator,
    ledger: QueryLedger,
    budget: int,
) -> tuple[int, complex] | None:
    n = oracle.size
    energies = oracle.energies
    mask = window.mask(energies)
    predicate = MarkPredicate.from_mask(mask)
    ledger.subroutine_calls += 1
    m = 1.0
    cap = math.sqrt(n)
    used = 0
    # j = 0 rounds cost no iterations; bound the number of measurements too
    for _ in range(4 * budget + 4):
        j = int(rng.integers(0, math.ceil(m)))
        if used + j > budget:
            break
        s = uniform_state(n)
        for _ in range(j):
            s = grover_iterate(s, predicate)
        used += j
        i0 = measure_index(s, rng)
        ledger.measurements += 1
        ledger.classical_verifications += 1
        c = oracle.coefficient(i0)
        if window.admits(i0, c.real**2 + c.imag**2):
            ledger.grover_iterations += used
            ledger.predicate_evaluations += predicate.evaluations
            return i0, c
        m = min(GROWTH * m, cap)
    ledger.grover_iterations += used
    ledger.predicate_evaluations += predicate.evaluations
    ledger.budget_exhaustions += 1
    return None


def subroutine1(x, w: ThresholdWindow, rng, ledger: QueryLedger, budget: int) -> int | None:
    """Find one index outside ``w.excluded`` whose coefficient energy is in ``w``.

    Returns ``None`` once ``budget`` Grover iterations would be exceeded.
    A returned index has been checked classically, so it always satisfies
    the window.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    hit = _search(CoefficientOracle.for_signal(x), w, rng, ledger, budget)
    return None if hit is None else hit[0]


def extract_large(
    oracle: CoefficientOracle,
    epsilon: float,
    rng: np.random.Generator,
    ledger: QueryLedger,
    *,
    exclude_found: bool = True,
    budget_multiplier: float = DEFAULT_BUDGET_MULTIPLIER,
    max_rounds: int | None = None,
) -> tuple[dict[int, complex], float, list[OuterStep]]:
    """Residual-energy loop over a flat index space.

    Returns the retained coefficients, the final residual energy and the
    per-round trace.
    """
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    size = oracle.size
    total = oracle.total_energy
    budget = search_budget(size, budget_multiplier)
    if max_rounds is None:
        max_rounds = 16 * size + 64 if exclude_found else 256 * size + 256
    found: dict[int, complex] = {}
    trace: list[OuterStep] = []
    if total == 0.0:
        return found, 0.0, trace

    residual = total
    alpha, beta = residual / size, residual
    # absorbs rounding drift in the running residual; anything this small
    # is below the stopping floor anyway
    atol = RESIDUAL_FLOOR * total
    rounds = 0
    while residual / total >= epsilon and residual > RESIDUAL_FLOOR * total:
        if len(found) == size:
            raise InvariantViolation(f"all {size} coefficients found but residual {residual!r} remains")
        if rounds >= max_rounds:
            break
        rounds += 1
        window = ThresholdWindow(alpha, beta, found.keys() if exclude_found else frozenset(), atol)
        marked = int(window.mask(oracle.energies).sum())
        hit = _search(oracle, window, rng, ledger, budget)
        if hit is None:
            trace.append(OuterStep(alpha, beta, marked, None, False, residual))
            if exclude_found and marked == 0:
                raise InvariantViolation(
                    f"empty window [{alpha!r}, {beta!r}] with residual {residual!r} of {total!r}"
                )
            continue
        i0, c = hit
        if i0 in found:
            ledger.duplicate_hits += 1
            trace.append(OuterStep(alpha, beta, marked, i0, False, residual))
            continue
        found[i0] = c
        residual = max(residual - (c.real**2 + c.imag**2), 0.0)
        remaining = size - len(found)
        alpha = residual / remaining if remaining else 0.0
        beta = residual
        trace.append(OuterStep(window.alpha, window.beta, marked, i0, True, residual))
    return found, residual, trace


def qdft_1d(
    x,
    epsilon: float,
    rng: np.random.Generator,
    *,
    exclude_found: bool = True,
    budget_multiplier: float = DEFAULT_BUDGET_MULTIPLIER,
    max_rounds: int | None = None,
) -> tuple[SparseSpectrum, QueryLedger]:
    """Retain large DFT coefficients of ``x`` until less than ``epsilon`` of its energy is left.

    With ``exclude_found=False`` the marking predicate ignores which
    coefficients are already known, and re-finding one just costs a round.
    """
    oracle = CoefficientOracle.for_signal(x)
    ledger = QueryLedger()
    found, residual, trace = extract_large(
        oracle,
        epsilon,
        rng,
        ledger,
        exclude_found=exclude_found,
        budget_multiplier=budget_multiplier,
        max_rounds=max_rounds,
    )
    return SparseSpectrum(oracle.size, found, residual, oracle.total_energy, trace), ledger


def reconstruct(s: SparseSpectrum) -> np.ndarray:
    return idft_1d(s.dense())
