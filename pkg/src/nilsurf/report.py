"""Serialization of scan results: JSON summaries, CSV rows, PNG figures."""

from __future__ import annotations

import csv
import json
from typing import IO

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .surface import ScanReport

CSV_COLUMNS = ("x", "y", "H", "residual", "K_gauss", "K_brioschi", "skipped")


def report_to_json(report: ScanReport, **extra) -> str:
    """Deterministic JSON for a scan report (keys sorted)."""
    doc = report.to_json_dict()
    doc.update(extra)
    return json.dumps(doc, sort_keys=True)


def write_csv(report: ScanReport, stream: IO[str]) -> None:
    """Stream per-sample rows as CSV."""
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in report.rows():
        writer.writerow({k: repr(float(v)) if k != "skipped" else v for k, v in row.items()})


def render_scan_figure(report: ScanReport, path: str, title: str = "") -> None:
    """Render |H| and Gaussian-curvature heat maps next to the delimited output."""
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    extent = (
        float(report.xs.min()),
        float(report.xs.max()),
        float(report.ys.min()),
        float(report.ys.max()),
    )
    panels = (
        (np.abs(report.h_grid), "|H|"),
        (report.k_gauss_grid, "K (Gauss equation)"),
    )
    for ax, (grid, label) in zip(axes, panels):
        if np.all(~np.isfinite(grid)):
            ax.set_axis_off()
            ax.set_title(f"{label}: no data")
            continue
        im = ax.imshow(
            grid.T, origin="lower", extent=extent, aspect="auto", cmap="viridis"
        )
        fig.colorbar(im, ax=ax)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_title(label)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
