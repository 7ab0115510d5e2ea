"""Query-count scaling measurements over planted-spectrum inputs."""

from __future__ import annotations

import io
import math

import numpy as np

from .amplitude import grover_iterate, MarkPredicate, success_probability, uniform_state
from .qdft1d import DEFAULT_BUDGET_MULTIPLIER, qdft_1d
from .qdft2d import qdft_2d
from .report import format_float
from .signals import planted_image, planted_signal

__all__ = [
    "BENCH_COLUMNS",
    "loglog_slope",
    "scaling_rows",
    "bench_csv",
    "grover_deviation",
]

BENCH_COLUMNS = (
    "kind",
    "variant",
    "N",
    "trials",
    "mean_iterations",
    "std_iterations",
    "mean_over_sqrt_mN",
    "converged_fraction",
    "n_log2_n",
)


def loglog_slope(sizes, values) -> float:
    """Least-squares slope of ``log(values)`` against ``log(sizes)``."""
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def _trial_1d(n, m, epsilon, seed, exclude_found, budget_multiplier):
    rng = np.random.default_rng(seed)
    x, _ = planted_signal(n, m, rng)
    spec, ledger = qdft_1d(x, epsilon, rng, exclude_found=exclude_found, budget_multiplier=budget_multiplier)
    converged = spec.residual_energy / spec.total_energy < epsilon
    return ledger.grover_iterations, converged


def _trial_2d(n, m, epsilon, seed, exclude_found, budget_multiplier, first_pass):
    rng = np.random.default_rng(seed)
    f = planted_image(n, m, rng)
    spec, ledger = qdft_2d(
        f, epsilon, rng, first_pass=first_pass, exclude_found=exclude_found, budget_multiplier=budget_multiplier
    )
    converged = spec.residual_energy / spec.total_energy < epsilon
    return ledger.grover_iterations, converged


def scaling_rows(
    sizes,
    trials: int,
    *,
    m: int = 4,
    epsilon: float = 0.01,
    seed: int = 0,
    kind: str = "1d",
    variants=("exclude",),
    budget_multiplier: float = DEFAULT_BUDGET_MULTIPLIER,
    first_pass: str = "sparse",
) -> list[dict]:
    """Mean total Grover iterations per size.

    Trial ``t`` uses seed ``seed + t`` for every size and variant, so
    rows are reproducible independently of each other.
    """
    rows = []
    for variant in variants:
        if variant not in ("exclude", "literal"):
            raise ValueError(f"unknown variant {variant!r}")
        exclude = variant == "exclude"
        for n in sorted(sizes):
            its, conv = [], []
            for t in range(trials):
                if kind == "1d":
                    k, ok = _trial_1d(n, m, epsilon, seed + t, exclude, budget_multiplier)
                elif kind == "2d":
                    k, ok = _trial_2d(n, m, epsilon, seed + t, exclude, budget_multiplier, first_pass)
                else:
                    raise ValueError(f"unknown bench kind {kind!r}")
                its.append(k)
                conv.append(ok)
            space = n if kind == "1d" else n * n
            mean = float(np.mean(its))
            rows.append(
                {
                    "kind": kind,
                    "variant": variant,
                    "N": n,
                    "trials": trials,
                    "mean_iterations": mean,
                    "std_iterations": float(np.std(its)),
                    "mean_over_sqrt_mN": mean / math.sqrt(m * space),
                    "converged_fraction": float(np.mean(conv)),
                    "n_log2_n": n * math.log2(n) if kind == "1d" else n * n * math.log2(n),
                }
            )
    return rows


def bench_csv(rows: list[dict], preamble: dict | None = None) -> bytes:
    buf = io.StringIO()
    for k, v in sorted((preamble or {}).items()):
        buf.write(f"# {k}={v}\n")
    buf.write(",".join(BENCH_COLUMNS) + "\n")
    for r in rows:
        cells = [format_float(r[c]) if isinstance(r[c], float) else str(r[c]) for c in BENCH_COLUMNS]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue().encode("utf-8")


def grover_deviation(sizes, max_j: int = 50) -> tuple[float, list[dict]]:
    """Sweep every marked count and iteration count; compare to the closed form.

    The first ``m`` indices are marked.  Returns the overall maximum
    deviation and one summary row per size.
    """
    worst = 0.0
    rows = []
    for n in sizes:
        worst_n = 0.0
        for m in range(n + 1):
            mask = np.zeros(n, dtype=bool)
            mask[:m] = True
            f = MarkPredicate.from_mask(mask)
            s = uniform_state(n)
            for j in range(max_j + 1):
                if j:
                    s = grover_iterate(s, f)
                p = float(np.sum(s.probabilities()[mask]))
                worst_n = max(worst_n, abs(p - success_probability(n, m, j)))
        rows.append({"n": n, "max_deviation": worst_n})
        worst = max(worst, worst_n)
    return worst, rows
