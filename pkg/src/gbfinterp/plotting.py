"""Figure rendering for the command line reports.

Every report command writes its figures next to the CSV tables it emits.
The Agg backend is forced so rendering works in headless environments.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DPI = 150


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def save_spectrum_plot(eigenvalues: np.ndarray, path):
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(np.arange(len(eigenvalues)), eigenvalues, ".", markersize=4)
    ax.set_xlabel("index")
    ax.set_ylabel("eigenvalue")
    ax.set_title("Laplacian spectrum")
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_interpolant_plot(
    truth: np.ndarray,
    reconstruction: np.ndarray,
    sample_indices: np.ndarray,
    path,
    coords: np.ndarray | None = None,
):
    """Signal versus interpolant, plus the pointwise error.

    With 2d node coordinates the signal panel becomes a scatter of the
    interpolant over the layout with sample nodes ringed; without them it
    falls back to index plots.
    """
    if coords is not None and coords.shape[1] == 2:
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
        sc = ax1.scatter(coords[:, 0], coords[:, 1], c=reconstruction, s=18, cmap="viridis")
        ax1.scatter(
            coords[sample_indices, 0],
            coords[sample_indices, 1],
            facecolors="none",
            edgecolors="red",
            s=60,
            linewidths=0.8,
            label="samples",
        )
        fig.colorbar(sc, ax=ax1, shrink=0.85)
        ax1.set_title("interpolant over node layout")
        ax1.legend(loc="upper right", fontsize=8)
    else:
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
        idx = np.arange(len(truth))
        ax1.plot(idx, truth, "-", lw=1, label="signal")
        ax1.plot(idx, reconstruction, "--", lw=1, label="interpolant")
        ax1.plot(sample_indices, truth[sample_indices], "r.", label="samples")
        ax1.set_xlabel("node")
        ax1.legend(fontsize=8)
        ax1.set_title("signal and interpolant")
    err = np.abs(reconstruction - truth)
    ax2.semilogy(np.arange(len(err)), np.maximum(err, 1e-18), ".", markersize=3)
    ax2.set_xlabel("node")
    ax2.set_ylabel("absolute error")
    ax2.set_title("pointwise error")
    ax2.grid(True, alpha=0.3)
    _finish(fig, path)


def save_error_vs_n_plot(counts, columns: dict[str, list], path):
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, errors in columns.items():
        vals = np.asarray(errors, dtype=float)
        ax.semilogy(counts, np.maximum(vals, 1e-18), "o-", markersize=3, lw=1, label=label)
    ax.set_xlabel("number of samples")
    ax.set_ylabel("max error")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    _finish(fig, path)


def save_weights_plot(sample_indices, weights, n: int, path):
    fig, ax = plt.subplots(figsize=(6, 3.5))
    markerline, stemlines, baseline = ax.stem(sample_indices, weights)
    plt.setp(markerline, markersize=4)
    baseline.set_visible(False)
    ax.axhline(1.0 / n, color="gray", lw=0.8, ls=":", label="1/n")
    ax.set_xlabel("node")
    ax.set_ylabel("weight")
    ax.set_title("quadrature weights")
    ax.legend(fontsize=8)
    _finish(fig, path)


def save_coefficients_plot(matrix: np.ndarray, frequencies, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    im = ax.imshow(np.abs(matrix).T, aspect="auto", origin="lower", cmap="magma")
    ax.set_xlabel("node")
    ax.set_ylabel("frequency slot")
    ax.set_yticks(range(len(frequencies)))
    ax.set_yticklabels([str(k) for k in frequencies], fontsize=7)
    ax.set_title("|windowed Fourier coefficients|")
    fig.colorbar(im, ax=ax, shrink=0.85)
    _finish(fig, path)
