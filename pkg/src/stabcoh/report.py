"""Figures and delimited tables written next to each other for CLI reports."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.family": "serif",
    "font.size": 10,
    "axes.labelsize": 10,
    "axes.titlesize": 11,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def figsize(width: float = 6.0) -> tuple[float, float]:
    golden = (math.sqrt(5.0) - 1.0) / 2.0
    return width, width * golden


def write_delimited(rows: Sequence[dict], path: Path, delimiter: str = "\t") -> Path:
    """Write rows (dicts sharing keys) as a delimited table with a header line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fields = list(rows[0]) if rows else []
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, delimiter=delimiter, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return path


def plot_series(values: Sequence[int], path: Path, title: str, ylabel: str = "dimension") -> Path:
    """Bar chart of a graded dimension sequence indexed by degree."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize())
        ax.bar(range(len(values)), values, color="0.35", width=0.7)
        ax.set_xlabel("degree")
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        ax.set_xticks(range(len(values)))
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def plot_table(values: Sequence[Sequence[int]], row_labels: Sequence[str], col_labels: Sequence[str],
               path: Path, title: str, xlabel: str = "degree") -> Path:
    """Annotated heat map of an integer table."""
    with plt.rc_context(STYLE):
        width = max(4.0, 0.8 * len(col_labels) + 2.0)
        height = max(2.5, 0.35 * len(row_labels) + 1.2)
        fig, ax = plt.subplots(figsize=(width, height))
        ax.imshow(values, cmap="Greys", aspect="auto", vmin=0)
        top = max((v for row in values for v in row), default=0)
        for i, row in enumerate(values):
            for j, v in enumerate(row):
                ax.text(j, i, str(v), ha="center", va="center", fontsize=8,
                        color="white" if top and v > top / 2 else "black")
        ax.set_xticks(range(len(col_labels)), col_labels)
        ax.set_yticks(range(len(row_labels)), row_labels)
        ax.set_xlabel(xlabel)
        ax.set_title(title)
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def plot_timings(names: Sequence[str], seconds: Sequence[float], passed: Sequence[bool],
                 path: Path, title: str) -> Path:
    """Horizontal bars of check run times, failures hatched."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize())
        bars = ax.barh(range(len(names)), seconds, color="0.55")
        for bar, ok in zip(bars, passed):
            if not ok:
                bar.set_hatch("//")
                bar.set_edgecolor("black")
        ax.set_yticks(range(len(names)), names)
        ax.invert_yaxis()
        ax.set_xlabel("seconds")
        ax.set_title(title)
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def render(name: str, rows: Sequence[dict], out_dir: Path, figure: str, **kw) -> list[Path]:
    """Write ``name.tsv`` and ``name.png`` into out_dir; ``figure`` picks the plot kind."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [write_delimited(rows, out_dir / f"{name}.tsv")]
    png = out_dir / f"{name}.png"
    title = kw.get("title", name)
    if figure == "series":
        written.append(plot_series([r[kw.get("value", "dim")] for r in rows], png, title))
    elif figure == "table":
        written.append(plot_table(kw["values"], kw["row_labels"], kw["col_labels"], png, title))
    elif figure == "timings":
        written.append(plot_timings([r["name"] for r in rows], [r["seconds"] for r in rows],
                                    [r["passed"] for r in rows], png, title))
    elif figure != "none":
        raise ValueError(f"unknown figure kind {figure!r}")
    return written
