"""Figures written next to CLI reports.  Rendering only, no computation."""

from __future__ import annotations

import contextlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_RC = {
    "figure.dpi": 120,
    "savefig.bbox": "tight",
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "legend.frameon": False,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.linewidth": 1.2,
}


@contextlib.contextmanager
def _figure(path, ncols=1, width=4.5, height=3.2):
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(1, ncols, figsize=(width * ncols, height), squeeze=False)
        try:
            yield fig, axes[0]
            fig.savefig(path)
        finally:
            plt.close(fig)


def plot_spectrum(path, x, spectrum, reconstruction):
    """Coefficient energies (all vs retained) and the reconstructed signal."""
    c = np.fft.fft(np.asarray(x, dtype=complex), norm="ortho")
    with _figure(path, ncols=2) as (fig, (ax0, ax1)):
        k = np.arange(c.size)
        ax0.semilogy(k, np.maximum(np.abs(c) ** 2, 1e-300), ".", color="0.6", ms=3, label="all coefficients")
        idx = np.array(sorted(spectrum.entries), dtype=int)
        if idx.size:
            e = np.array([abs(spectrum.entries[i]) ** 2 for i in idx])
            ax0.semilogy(idx, e, "o", mfc="none", color="C3", ms=5, label=f"retained ({idx.size})")
        ax0.set_xlabel("index")
        ax0.set_ylabel("energy")
        ax0.legend()
        ax1.plot(np.real(x), color="0.3", label="signal (re)")
        ax1.plot(np.real(reconstruction), "--", color="C0", label="reconstruction (re)")
        ax1.set_xlabel("sample")
        ax1.legend()


def plot_image(path, image, coefficients, reconstruction):
    with _figure(path, ncols=3, width=3.0, height=3.0) as (fig, axes):
        axes[0].imshow(np.real(image), cmap="gray")
        axes[0].set_title("input")
        mag = np.log10(np.abs(coefficients) + 1e-12)
        axes[1].imshow(mag, cmap="magma", vmin=max(mag.max() - 6, mag.min()))
        axes[1].set_title("retained |C| (log10)")
        axes[2].imshow(np.real(reconstruction), cmap="gray")
        axes[2].set_title("reconstruction")
        for ax in axes:
            ax.set_xticks([])
            ax.set_yticks([])


def plot_convolution(path, w_exact, w_hat):
    with _figure(path) as (fig, (ax,)):
        if w_exact is not None:
            ax.plot(np.real(w_exact), color="0.3", label="direct")
        ax.plot(np.real(w_hat), "--", color="C0", label="estimate")
        ax.set_xlabel("k")
        ax.set_ylabel("w_k (re)")
        ax.legend()


def plot_scaling(path, rows):
    """Mean Grover iterations vs N on log-log axes, one line per (kind, variant)."""
    with _figure(path) as (fig, (ax,)):
        groups: dict = {}
        for r in rows:
            groups.setdefault((r["kind"], r["variant"]), []).append(r)
        for (kind, variant), rs in sorted(groups.items()):
            n = np.array([r["N"] for r in rs], dtype=float)
            mean = np.array([r["mean_iterations"] for r in rs])
            std = np.array([r["std_iterations"] for r in rs])
            ax.errorbar(n, mean, yerr=std, marker="o", ms=3, capsize=2, label=f"{kind} {variant}")
        if rows:
            ref = dict(sorted((r["N"], r["n_log2_n"]) for r in rows))
            ax.plot(list(ref), list(ref.values()), ":", color="0.5", label="N log2 N (classical FFT)")
        ax.set_xscale("log", base=2)
        ax.set_yscale("log")
        ax.set_xlabel("N")
        ax.set_ylabel("Grover iterations")
        ax.legend()
