"""Turn sweep manifests and their CSV files into figures.

A manifest (JSON, produced by ``eur-hawking run``) names the CSV, its
column schema and the swept axes. One-axis data renders as line plots;
two-axis data as heatmaps, surfaces, or line families grouped by the
second axis value. Rendering never writes to its inputs.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

STYLES = ("line", "heatmap", "surface")

# caption palette first (cyan/red/magenta series, then blue/green/black)
PALETTE = ("#00b7c4", "#d62728", "#c715c7", "#1f4fd6", "#2ca02c", "#000000")

DEFAULT_SERIES = ("U_numeric", "Ub_numeric", "QD")

AXIS_LABELS = {
    "T_over_omega": "T/omega",
    "Gamma_t": "Gamma t",
    "p": "p",
    "q": "q",
    "gamma": "gamma",
}


class JobError(ValueError):
    """The plot job cannot be carried out as specified."""


@dataclass(frozen=True)
class PlotJob:
    manifest_path: Path
    style: str = "line"
    series: tuple[str, ...] = DEFAULT_SERIES
    out_path: Path = Path("figure.png")
    x_label: Optional[str] = None
    y_label: Optional[str] = None

    def validate(self) -> "PlotJob":
        if self.style not in STYLES:
            raise JobError(f"unknown style {self.style!r}, expected one of {STYLES}")
        if not self.series:
            raise JobError("at least one series column is required")
        return self


@dataclass(frozen=True)
class RenderReport:
    out_path: Path
    style: str
    series_drawn: tuple[str, ...]
    rows: int


def _load(manifest_path: Path) -> tuple[dict, list[str], np.ndarray, list[str]]:
    manifest_path = Path(manifest_path)
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise JobError(f"cannot read manifest {manifest_path}: {exc}") from exc
    csv_path = manifest_path.parent / manifest["csv_path"]
    try:
        text = csv_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise JobError(f"cannot read CSV {csv_path}: {exc}") from exc
    reader = csv.reader(text.splitlines())
    rows = list(reader)
    if not rows:
        raise JobError(f"{csv_path} is empty")
    header, data_rows = rows[0], rows[1:]
    if not data_rows:
        raise JobError(f"{csv_path} holds no data rows")
    status = [row[header.index("status")] for row in data_rows] if "status" in header else []
    numeric_cols = [c for c in header if c != "status"]
    values = np.array(
        [[float(cell) for cell in row[: len(numeric_cols)]] for row in data_rows]
    )
    return manifest, numeric_cols, values, status


def _column(values: np.ndarray, columns: list[str], name: str) -> np.ndarray:
    if name not in columns:
        raise JobError(f"column {name!r} is not in the CSV schema {columns}")
    return values[:, columns.index(name)]


def _axis_label(manifest: dict, key: str) -> str:
    name = manifest.get("axes", {}).get(key, {}).get("name", key)
    return AXIS_LABELS.get(name, name)


def render(job: PlotJob) -> RenderReport:
    """Render one job; returns what was actually drawn."""
    job.validate()
    manifest, columns, values, _ = _load(Path(job.manifest_path))
    has_y = "y" in manifest.get("axes", {})

    fig = plt.figure(figsize=(7.0, 4.8))
    try:
        if job.style == "line":
            drawn = _render_line(fig, job, manifest, columns, values, has_y)
        elif job.style == "heatmap":
            drawn = _render_grid(fig, job, manifest, columns, values, has_y, surface=False)
        else:
            drawn = _render_grid(fig, job, manifest, columns, values, has_y, surface=True)
        out = Path(job.out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, dpi=150, bbox_inches="tight")
    finally:
        plt.close(fig)
    return RenderReport(out_path=Path(job.out_path), style=job.style,
                        series_drawn=drawn, rows=values.shape[0])


def _render_line(fig, job, manifest, columns, values, has_y) -> tuple[str, ...]:
    ax = fig.add_subplot(111)
    x = _column(values, columns, "x")
    drawn = []
    color_index = 0
    if has_y:
        y = _column(values, columns, "y")
        groups = np.unique(y)
        for name in job.series:
            data = _column(values, columns, name)
            for value in groups:
                mask = y == value
                if mask.sum() < 2:
                    raise JobError("a line needs at least two points per group")
                ax.plot(x[mask], data[mask], color=PALETTE[color_index % len(PALETTE)],
                        label=f"{name} ({_axis_label(manifest, 'y')}={value:g})")
                color_index += 1
            drawn.append(name)
    else:
        if values.shape[0] < 2:
            raise JobError("a line plot needs at least two grid points")
        for name in job.series:
            ax.plot(x, _column(values, columns, name),
                    color=PALETTE[color_index % len(PALETTE)], label=name)
            color_index += 1
            drawn.append(name)
    ax.set_xlabel(job.x_label or _axis_label(manifest, "x"))
    ax.set_ylabel(job.y_label or "bits")
    ax.legend(loc="best", fontsize=8)
    ax.set_title(manifest.get("figure_id", ""))
    return tuple(drawn)


def _render_grid(fig, job, manifest, columns, values, has_y, surface: bool) -> tuple[str, ...]:
    if not has_y:
        raise JobError(f"style {job.style!r} needs a two-axis sweep")
    name = job.series[0]
    x = _column(values, columns, "x")
    y = _column(values, columns, "y")
    z = _column(values, columns, name)
    xs = np.unique(x)
    ys = np.unique(y)
    if len(xs) * len(ys) != len(z):
        raise JobError("CSV rows do not fill the declared 2-d grid")
    order = np.lexsort((y, x))
    grid = z[order].reshape(len(xs), len(ys))

    if surface:
        ax = fig.add_subplot(111, projection="3d")
        mesh_x, mesh_y = np.meshgrid(xs, ys, indexing="ij")
        ax.plot_surface(mesh_x, mesh_y, grid, cmap="viridis")
        ax.set_zlabel(name)
    else:
        ax = fig.add_subplot(111)
        mappable = ax.pcolormesh(xs, ys, grid.T, cmap="viridis", shading="nearest")
        fig.colorbar(mappable, ax=ax, label=name)
    ax.set_xlabel(job.x_label or _axis_label(manifest, "x"))
    ax.set_ylabel(job.y_label or _axis_label(manifest, "y"))
    ax.set_title(manifest.get("figure_id", ""))
    return (name,)


def default_job(manifest_path: Path, out_path: Path) -> PlotJob:
    """Style and series choice for batch mode, based on the manifest axes."""
    manifest = json.loads(Path(manifest_path).read_text(encoding="utf-8"))
    axes = manifest.get("axes", {})
    columns = manifest.get("columns", [])
    series = tuple(c for c in DEFAULT_SERIES if c in columns) or ("U_numeric",)
    if "y" in axes:
        if int(axes["y"].get("points", 0)) > 8:
            return PlotJob(manifest_path=Path(manifest_path), style="heatmap",
                           series=("U_numeric",), out_path=Path(out_path))
        return PlotJob(manifest_path=Path(manifest_path), style="line",
                       series=("U_numeric",), out_path=Path(out_path))
    return PlotJob(manifest_path=Path(manifest_path), style="line",
                   series=series, out_path=Path(out_path))


def render_batch(directory: Path, out_dir: Optional[Path] = None) -> list[RenderReport]:
    """Render every ``*.manifest.json`` under ``directory``."""
    directory = Path(directory)
    manifests = sorted(directory.glob("*.manifest.json"))
    if not manifests:
        raise JobError(f"no manifests found in {directory}")
    out_dir = Path(out_dir) if out_dir is not None else directory
    reports = []
    for manifest_path in manifests:
        stem = manifest_path.name.replace(".manifest.json", "")
        job = default_job(manifest_path, out_dir / f"{stem}.png")
        reports.append(render(job))
    return reports
