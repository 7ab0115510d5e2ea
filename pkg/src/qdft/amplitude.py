"""Dense simulation of amplitude amplification over an index register.

The loading, inner-product and phase oracles of a search iteration return
every work register to its prior value, so their composite acts on the
index register as a plain sign flip of the marked indices.  That is all
that gets simulated here: a real amplitude vector, a predicate, and the
reflection about the uniform superposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "MAX_STATE_SIZE",
    "AmplitudeState",
    "MarkPredicate",
    "InvariantViolation",
    "make_rng",
    "uniform_state",
    "grover_iterate",
    "measure_index",
    "success_probability",
]

MAX_STATE_SIZE = 2**22
_NORM_TOL = 1e-9
_MEASURE_TOL = 1e-6


class InvariantViolation(RuntimeError):
    """A simulated state drifted outside its mathematical invariants."""


def make_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.default_rng(seed)


@dataclass
class AmplitudeState:
    amps: np.ndarray

    @property
    def n(self) -> int:
        return self.amps.size

    def norm_sq(self) -> float:
        return float(np.dot(self.amps, self.amps))

    def probabilities(self) -> np.ndarray:
        return self.amps * self.amps


class MarkPredicate:
    """Vectorized marking function with an evaluation counter.

    ``fn`` receives an integer index array and must return a boolean array
    of the same shape.  The predicate must not change while a search that
    uses it is in progress.
    """

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray]):
        self._fn = fn
        self.evaluations = 0

    def __call__(self, i: int) -> bool:
        self.evaluations += 1
        return bool(self._fn(np.array([i]))[0])

    def mask(self, n: int) -> np.ndarray:
        self.evaluations += n
        return np.asarray(self._fn(np.arange(n)), dtype=bool)

    @classmethod
    def from_set(cls, marked) -> "MarkPredicate":
        marked = np.fromiter(marked, dtype=np.int64)
        return cls(lambda idx: np.isin(idx, marked))

    @classmethod
    def from_mask(cls, mask) -> "MarkPredicate":
        mask = np.asarray(mask, dtype=bool)
        return cls(lambda idx: mask[idx])


def uniform_state(n: int) -> AmplitudeState:
    if n < 1:
        raise ValueError(f"state size must be positive, got {n}")
    if n > MAX_STATE_SIZE:
        raise ValueError(f"state size {n} exceeds dense limit {MAX_STATE_SIZE}")
    return AmplitudeState(np.full(n, 1.0 / math.sqrt(n)))


def _reflect(amps: np.ndarray, mask: np.ndarray) -> np.ndarray:
    flipped = np.where(mask, -amps, amps)
    return 2.0 * flipped.mean() - flipped


def grover_iterate(s: AmplitudeState, f: MarkPredicate) -> AmplitudeState:
    """One search iteration: negate marked amplitudes, then invert about the mean."""
    out = AmplitudeState(_reflect(s.amps, f.mask(s.n)))
    if abs(out.norm_sq() - 1.0) > _NORM_TOL:
        raise InvariantViolation(f"norm drifted to {out.norm_sq()!r}")
    return out


def measure_index(s: AmplitudeState, rng: np.random.Generator) -> int:
    """Sample an index with probability equal to its squared amplitude."""
    p = s.probabilities()
    cdf = np.cumsum(p)
    if abs(cdf[-1] - 1.0) > _MEASURE_TOL:
        raise InvariantViolation(f"cannot measure unnormalized state (norm^2={cdf[-1]!r})")
    u = rng.random() * cdf[-1]
    i = int(np.searchsorted(cdf, u, side="right"))
    return min(i, s.n - 1)


def success_probability(n: int, m_marked: int, j: int) -> float:
    """Probability of measuring a marked index after ``j`` iterations from uniform."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= m_marked <= n:
        raise ValueError(f"m_marked={m_marked} outside [0, {n}]")
    if j < 0:
        raise ValueError(f"iteration count must be nonnegative, got {j}")
    if m_marked == 0:
        return 0.0
    theta = math.asin(math.sqrt(m_marked / n))
    return math.sin((2 * j + 1) * theta) ** 2
