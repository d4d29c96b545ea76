"""Matplotlib rendering of command reports.

Every figure-producing command also drops a `summary.csv` next to its
charts, so the figures directory is self-describing.  Rendering is
presentation only: the exact-arithmetic reports are the authoritative
output, and rational values are converted to floats just for drawing.
Output is kept byte-stable (Agg backend, fixed dpi, metadata stripped).
"""

from __future__ import annotations

import csv
import os
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_SAVE_KW = {"dpi": 110, "metadata": {"Software": None}}


def _new_axes(title: str):
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.set_title(title)
    return fig, ax


def _save(fig, out_dir: str, name: str) -> str:
    path = os.path.join(out_dir, name)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path


def write_summary_csv(out_dir: str, rows: list[tuple]) -> str:
    path = os.path.join(out_dir, "summary.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in rows:
            writer.writerow([key, value])
    return path


def bar_chart(out_dir: str, name: str, title: str, labels: list[str],
              values: list, ylabel: str = "dimension") -> str:
    fig, ax = _new_axes(title)
    xs = np.arange(len(labels))
    ax.bar(xs, [float(v) for v in values], color="#4878a8")
    ax.set_xticks(xs)
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel(ylabel)
    for x, v in zip(xs, values):
        ax.annotate(str(v), (x, float(v)), ha="center", va="bottom", fontsize=8)
    return _save(fig, out_dir, name)


def matrix_sparsity(out_dir: str, name: str, title: str, entries,
                    shape: tuple[int, int]) -> str:
    """Raster of the nonzero pattern of a sparse matrix ((r, c), value)."""
    rows, cols = shape
    grid = np.zeros((max(rows, 1), max(cols, 1)))
    for (r, c), v in entries:
        if v != 0:
            grid[r, c] = 1.0
    fig, ax = _new_axes(title)
    ax.imshow(grid, aspect="auto", cmap="Greys", interpolation="nearest",
              vmin=0.0, vmax=1.0)
    ax.set_xlabel(f"{cols} columns")
    ax.set_ylabel(f"{rows} rows")
    return _save(fig, out_dir, name)


def class_coordinates(out_dir: str, name: str, title: str, coords) -> str:
    fig, ax = _new_axes(title)
    xs = np.arange(max(len(coords), 1))
    vals = [float(Fraction(c)) for c in coords] or [0.0]
    ax.stem(xs[: len(vals)], vals)
    ax.axhline(0.0, color="black", linewidth=0.6)
    ax.set_xlabel("cohomology coordinate")
    ax.set_ylabel("value")
    return _save(fig, out_dir, name)
