"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 invalid configuration,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict

import numpy as np

from . import bench
from .amplitude import InvariantViolation, make_rng
from .convolution import conv_via_qdft
from .core_dft import energy, idft_1d, idft_2d
from .io import ParseError, load_pgm, parse_signal_csv
from .qdft1d import DEFAULT_BUDGET_MULTIPLIER, QueryLedger, qdft_1d, reconstruct
from .qdft2d import qdft_2d
from .report import RunReport, emit_report, entry_rows

EXIT_OK, EXIT_IO, EXIT_CONFIG, EXIT_INVARIANT = 0, 1, 2, 3
GROVER_TOL = 1e-12


class ConfigError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError(f"sizes must be positive integers, got {text!r}")
    return vals


def _common(p: argparse.ArgumentParser, *, search: bool = True) -> None:
    p.add_argument("--seed", type=int, default=0, help="base seed (unsigned 64-bit)")
    p.add_argument("--output", default="-", help="report path, '-' for stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks byte-identity)")
    if search:
        p.add_argument("--epsilon", type=float, default=0.01, help="stop once residual/total < epsilon")
        p.add_argument("--literal-oracle", action="store_true", help="do not exclude found indices from marking")
        p.add_argument("--budget-multiplier", type=float, default=DEFAULT_BUDGET_MULTIPLIER)
        p.add_argument("--figure", help="also render a PNG figure to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdft", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dft1d", help="sparse DFT of a signal CSV")
    p.add_argument("--input", required=True, help="signal CSV ('re' or 're,im' per line), '-' for stdin")
    _common(p)

    p = sub.add_parser("dft2d", help="sparse 2-D DFT of a PGM image")
    p.add_argument("--input", required=True, help="P2/P5 PGM file")
    p.add_argument("--block", type=int, help="transform BxB tiles independently")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive-2d", action="store_true", help="compute W F exactly instead of searching it")
    mode.add_argument("--sparse-2d", action="store_true", help="stop the first pass at epsilon/2")
    _common(p)

    p = sub.add_parser("conv", help="periodic convolution estimate of two signal CSVs")
    p.add_argument("--input", required=True, help="first operand CSV")
    p.add_argument("--kernel", required=True, help="second operand CSV")
    _common(p)

    p = sub.add_parser("bench", help="Grover-iteration scaling over planted spectra")
    p.add_argument("--sizes", type=_int_list, default=[256, 1024, 4096])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--big", type=int, default=4, help="number of planted large coefficients")
    p.add_argument("--kind", choices=("1d", "2d"), default="1d")
    p.add_argument("--first-pass", choices=("all", "sparse", "exact"), default="sparse", help="2-D first pass mode")
    _common(p)

    p = sub.add_parser("grover-check", help="simulated vs closed-form success probability")
    p.add_argument("--sizes", type=_int_list, default=[2**k for k in range(1, 9)])
    p.add_argument("--max-j", type=int, default=50)
    _common(p, search=False)
    return parser


def _validate(args) -> None:
    if not 0 <= args.seed < 2**64:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {args.seed}")
    if hasattr(args, "epsilon") and not 0 < args.epsilon < 1:
        raise ConfigError(f"epsilon must lie in (0, 1), got {args.epsilon}")
    if hasattr(args, "budget_multiplier") and not args.budget_multiplier >= 1:
        raise ConfigError(f"budget multiplier must be >= 1, got {args.budget_multiplier}")
    if getattr(args, "block", None) is not None and args.block < 1:
        raise ConfigError(f"block size must be positive, got {args.block}")
    if getattr(args, "trials", 1) < 1:
        raise ConfigError("trials must be positive")
    if getattr(args, "big", 1) < 1:
        raise ConfigError("--big must be positive")
    if getattr(args, "max_j", 0) < 0:
        raise ConfigError("--max-j must be nonnegative")


def _config(args) -> dict:
    skip = {"output", "format", "figure", "timing", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _trace_rows(trace, **extra) -> list[dict]:
    return [dict(asdict(s), **extra) for s in trace]


def _search_opts(args) -> dict:
    return {"exclude_found": not args.literal_oracle, "budget_multiplier": args.budget_multiplier}


def run_dft1d(args) -> RunReport:
    x = parse_signal_csv(_read(args.input))
    spec, ledger = qdft_1d(x, args.epsilon, make_rng(args.seed), **_search_opts(args))
    rec = reconstruct(spec)
    if args.figure:
        from .plotting import plot_spectrum

        plot_spectrum(args.figure, x, spec, rec)
    return RunReport(
        "dft1d",
        _config(args),
        entries=entry_rows(spec.entries),
        n=spec.n,
        residual_energy=spec.residual_energy,
        total_energy=spec.total_energy,
        ledger=ledger.as_dict(),
        trace=_trace_rows(spec.trace),
        extra={"reconstruction_error_energy": energy(x - rec)},
    )


def run_dft2d(args) -> RunReport:
    img = load_pgm(_read(args.input))
    n = img.shape[0]
    first_pass = "exact" if args.exhaustive_2d else "sparse" if args.sparse_2d else "all"
    rng = make_rng(args.seed)
    b = args.block or n
    if b > n:
        raise ConfigError(f"block size {b} exceeds image side {n}")
    side = (n // b) * b
    img = img[:side, :side]
    ledger = QueryLedger()
    entries: dict = {}
    trace: list[dict] = []
    residual = total = 0.0
    coeffs = np.zeros_like(img)
    recon = np.zeros_like(img)
    for bi in range(side // b):
        for bj in range(side // b):
            tile = img[bi * b : (bi + 1) * b, bj * b : (bj + 1) * b]
            spec, led = qdft_2d(tile, args.epsilon, rng, first_pass=first_pass, **_search_opts(args))
            ledger = ledger + led
            residual += spec.residual_energy
            total += spec.total_energy
            dense = spec.dense()
            coeffs[bi * b : (bi + 1) * b, bj * b : (bj + 1) * b] = dense
            recon[bi * b : (bi + 1) * b, bj * b : (bj + 1) * b] = idft_2d(dense)
            for (i, j), c in spec.entries.items():
                key = (bi, bj, i, j) if args.block else (i, j)
                entries[key] = c
            tag = {"block": [bi, bj]} if args.block else {}
            trace.extend(_trace_rows(spec.trace, **tag))
    if args.figure:
        from .plotting import plot_image

        plot_image(args.figure, img, coeffs, recon)
    return RunReport(
        "dft2d",
        _config(args),
        entries=entry_rows(entries),
        n=side,
        residual_energy=residual,
        total_energy=total,
        ledger=ledger.as_dict(),
        trace=trace,
        extra={"first_pass": first_pass, "reconstruction_error_energy": energy(img - recon)},
    )


def run_conv(args) -> RunReport:
    u = parse_signal_csv(_read(args.input))
    v = parse_signal_csv(_read(args.kernel))
    rep = conv_via_qdft(u, v, args.epsilon, make_rng(args.seed), **_search_opts(args))
    lu, lv = rep.ledgers
    if args.figure:
        from .plotting import plot_convolution

        plot_convolution(args.figure, rep.w_exact, rep.w_hat)
    return RunReport(
        "conv",
        _config(args),
        entries=entry_rows(rep.product.entries),
        n=rep.product.n,
        ledger=(lu + lv).as_dict(),
        extra={
            "w_hat": [complex(c) for c in rep.w_hat],
            "w_exact": [complex(c) for c in rep.w_exact],
            "relative_l2_error": rep.relative_l2_error,
            "ledger_u": lu.as_dict(),
            "ledger_v": lv.as_dict(),
            "found_u": len(rep.spectra[0].entries),
            "found_v": len(rep.spectra[1].entries),
        },
    )


def run_bench(args) -> tuple[RunReport, list[dict]]:
    variants = ("exclude", "literal") if args.literal_oracle else ("exclude",)
    rows = bench.scaling_rows(
        args.sizes,
        args.trials,
        m=args.big,
        epsilon=args.epsilon,
        seed=args.seed,
        kind=args.kind,
        variants=variants,
        budget_multiplier=args.budget_multiplier,
        first_pass=args.first_pass,
    )
    slopes = {}
    for variant in variants:
        rs = [r for r in rows if r["variant"] == variant]
        if len(rs) >= 2:
            slopes[variant] = bench.loglog_slope([r["N"] for r in rs], [r["mean_iterations"] for r in rs])
    if args.figure:
        from .plotting import plot_scaling

        plot_scaling(args.figure, rows)
    report = RunReport("bench", _config(args), extra={"rows": rows, "loglog_slopes": slopes})
    return report, rows


def run_grover_check(args) -> RunReport:
    worst, rows = bench.grover_deviation(args.sizes, args.max_j)
    return RunReport(
        "grover-check",
        _config(args),
        extra={"max_deviation": worst, "tolerance": GROVER_TOL, "rows": rows, "passed": worst <= GROVER_TOL},
    )


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        t0 = time.perf_counter()
        if args.command == "bench":
            report, rows = run_bench(args)
        else:
            report = {
                "dft1d": run_dft1d,
                "dft2d": run_dft2d,
                "conv": run_conv,
                "grover-check": run_grover_check,
            }[args.command](args)
        if args.timing:
            report.wall_clock = time.perf_counter() - t0
        if args.command == "bench" and args.format == "csv":
            pre = {f"config.{k}": v for k, v in report.config.items()}
            pre.update({f"slope.{k}": v for k, v in report.extra["loglog_slopes"].items()})
            data = bench.bench_csv(rows, pre)
        else:
            data = emit_report(report, args.format)
        _write(args.output, data)
    except ConfigError as exc:
        print(f"qdft: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as exc:
        print(f"qdft: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (OSError, ParseError, ValueError) as exc:
        print(f"qdft: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.command == "grover-check" and not report.extra["passed"]:
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
