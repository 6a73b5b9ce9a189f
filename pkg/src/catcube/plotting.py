"""Figures written next to CLI reports. Uses the Agg backend; nothing is shown."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .spectral import spectrum  # noqa: E402
from .torus import Labeling, TorusShape  # noqa: E402

PALETTE = ["#e4572e", "#f3f3f3", "#29335c", "#76b041", "#ffc914", "#17bebb", "#a05195", "#7a7a7a"]

plt.rcParams.update({
    "font.size": 10,
    "axes.titlesize": 10,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
})


def _draw_grid(ax, grid: np.ndarray, alphabet: str, counts: np.ndarray | None = None):
    colors = matplotlib.colors.ListedColormap(PALETTE[:max(len(alphabet), 1)])
    ax.imshow(grid, cmap=colors, vmin=-0.5, vmax=len(alphabet) - 0.5)
    rows, cols = grid.shape
    size = max(4, 12 - max(rows, cols) // 3)
    for i in range(rows):
        for j in range(cols):
            text = alphabet[grid[i, j]]
            if counts is not None:
                text += f"\n{counts[i, j]}"
            dark = PALETTE[grid[i, j] % len(PALETTE)] in ("#29335c", "#a05195", "#7a7a7a")
            ax.text(j, i, text, ha="center", va="center", fontsize=size,
                    color="white" if dark else "black")
    ax.set_xticks([])
    ax.set_yticks([])


def plot_labeling(lab: Labeling, path, title: str | None = None,
                  participation: np.ndarray | None = None, max_slices: int = 4):
    """Letter grid; 1-D tori draw as one row, d >= 3 as the first few 2-D slices."""
    dims = lab.shape.dims
    counts = None
    if len(dims) == 1:
        slices = [lab.cells.reshape(1, -1)]
        if participation is not None:
            counts = [participation.reshape(1, -1)]
    else:
        flat = lab.cells.reshape(-1, dims[-2], dims[-1])
        slices = list(flat[:max_slices])
        if participation is not None:
            counts = list(participation.reshape(-1, dims[-2], dims[-1])[:max_slices])
    fig, axes = plt.subplots(1, len(slices), figsize=(3.2 * len(slices), 3.2), squeeze=False)
    for i, (ax, grid) in enumerate(zip(axes[0], slices)):
        _draw_grid(ax, grid, lab.alphabet, None if counts is None else counts[i])
        if len(slices) > 1:
            ax.set_title(f"slice {i}")
    fig.suptitle(title or f"{lab.shape} labeling")
    fig.savefig(path)
    plt.close(fig)


def plot_gallery(labs: list[Labeling], path, title: str, limit: int = 16):
    """Small multiples of up to ``limit`` labelings (2-D, or 1-D drawn as rows)."""
    labs = labs[:limit]
    if not labs:
        return
    cols = min(4, len(labs))
    rows = math.ceil(len(labs) / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(2.4 * cols, 2.4 * rows), squeeze=False)
    for ax in axes.flat:
        ax.axis("off")
    for ax, lab in zip(axes.flat, labs):
        dims = lab.shape.dims
        grid = lab.cells.reshape(1, -1) if len(dims) == 1 else lab.cells.reshape(-1, dims[-1])[:dims[-2]]
        ax.axis("on")
        _draw_grid(ax, grid, lab.alphabet)
    fig.suptitle(title)
    fig.savefig(path)
    plt.close(fig)


def plot_spectrum(shape: TorusShape, path):
    """Eigenvalue multiset with the extreme values marked."""
    lam = np.round(spectrum(shape), 9)
    values, mult = np.unique(lam, return_counts=True)
    d = shape.d
    fig, ax = plt.subplots(figsize=(6, 3.2))
    ax.vlines(values, 0, mult, color="#29335c", lw=2)
    ax.axvline(3**d - 1, ls="--", color="#76b041", label=r"$3^d-1$")
    ax.axvline(-1 - 3 ** (d - 1), ls="--", color="#e4572e", label=r"$-1-3^{d-1}$")
    ax.set_xlabel("eigenvalue")
    ax.set_ylabel("multiplicity")
    ax.set_title(f"king-move Cayley graph on {shape}")
    ax.legend(frameon=False)
    fig.savefig(path)
    plt.close(fig)


def plot_search(history: list[int], bound: int | None, best: Labeling, path):
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(7.5, 3.2))
    ax0.step(range(len(history)), history, where="post", color="#29335c")
    if bound is not None:
        ax0.axhline(bound, ls="--", color="#e4572e", label="spectral bound")
        ax0.legend(frameon=False)
    ax0.set_xlabel("restart")
    ax0.set_ylabel("best count so far")
    dims = best.shape.dims
    grid = best.cells.reshape(1, -1) if len(dims) == 1 else best.cells.reshape(-1, dims[-1])[:dims[-2]]
    _draw_grid(ax1, grid, best.alphabet)
    ax1.set_title("best labeling")
    fig.savefig(path)
    plt.close(fig)
