"""Figure construction from isacsim CSV files.

The renderer is a pure consumer of the documented CSV schemas (curve files
with theta_db/mode/engine/value/stderr columns, sweep files with a leading
sweep_var/sweep_value pair, fit reports with record/series/x/empirical/
fitted columns).  Analytic curves are drawn as lines and simulated ones as
markers; fit overlays draw fitted cdfs as lines over empirical markers.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
# fixed salt so SVG element ids (and thus whole files) are reproducible
matplotlib.rcParams["svg.hashsalt"] = "plotkit"

import matplotlib.pyplot as plt
import numpy as np

FIGURE_KINDS = ("ccdf", "sweep_line", "sweep_surface", "fit_overlay")

_REQUIRED_COLUMNS = {
    "ccdf": ("theta_db", "mode", "engine", "value"),
    "sweep_line": ("sweep_var", "sweep_value", "theta_db", "mode", "engine", "value"),
    "sweep_surface": ("sweep_var", "sweep_value", "theta_db", "mode", "engine", "value"),
    "fit_overlay": ("record", "series", "x", "empirical", "fitted"),
}


class MissingColumnsError(ValueError):
    """The CSV lacks columns the figure kind requires."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__(f"CSV is missing required columns: {', '.join(self.missing)}")


@dataclass(frozen=True)
class FigureSpec:
    """What to plot: a CSV path, the figure kind and an optional mode filter.

    style maps an engine name to 'line' or 'marker'; the default draws
    analytic results as lines and simulations as markers.
    """

    csv_path: str
    figure_kind: str = "ccdf"
    mode_filter: tuple[str, ...] = ()
    style: dict = field(default_factory=lambda: {"analytic": "line", "sim": "marker"})

    def __post_init__(self) -> None:
        if self.figure_kind not in FIGURE_KINDS:
            raise ValueError(
                f"figure_kind must be one of {FIGURE_KINDS}, got {self.figure_kind!r}")
        object.__setattr__(self, "mode_filter", tuple(self.mode_filter))


def _read_rows(spec: FigureSpec) -> list[dict]:
    with open(spec.csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in _REQUIRED_COLUMNS[spec.figure_kind] if c not in header]
        if missing:
            raise MissingColumnsError(missing)
        return list(reader)


def _keep_mode(spec: FigureSpec, mode: str) -> bool:
    return not spec.mode_filter or mode in spec.mode_filter


def extract_series(spec: FigureSpec) -> dict[str, dict]:
    """The exact data series the figure will draw, keyed by legend label.

    Each series carries x, y lists and a draw style ('line' or 'marker');
    this is the object golden-file tests compare.
    """
    rows = _read_rows(spec)
    series: dict[str, dict] = {}

    if spec.figure_kind == "ccdf":
        for row in rows:
            if not _keep_mode(spec, row["mode"]):
                continue
            key = f"{row['mode']}|{row['engine']}"
            entry = series.setdefault(key, {
                "x": [], "y": [],
                "style": spec.style.get(row["engine"], "line"),
            })
            entry["x"].append(float(row["theta_db"]))
            entry["y"].append(float(row["value"]))

    elif spec.figure_kind in ("sweep_line", "sweep_surface"):
        for row in rows:
            if not _keep_mode(spec, row["mode"]):
                continue
            key = f"{row['mode']}|{row['engine']}|theta_db={row['theta_db']}"
            entry = series.setdefault(key, {
                "x": [], "y": [],
                "style": spec.style.get(row["engine"], "line"),
                "theta_db": float(row["theta_db"]),
            })
            entry["x"].append(float(row["sweep_value"]))
            entry["y"].append(float(row["value"]))

    else:  # fit_overlay
        for row in rows:
            if row["record"] != "point" or not _keep_mode(spec, row["series"]):
                continue
            for column, style in (("empirical", "marker"), ("fitted", "line")):
                key = f"{row['series']}|{column}"
                entry = series.setdefault(key, {"x": [], "y": [], "style": style})
                entry["x"].append(float(row["x"]))
                entry["y"].append(float(row[column]))

    for entry in series.values():
        order = np.argsort(np.asarray(entry["x"]))
        entry["x"] = [entry["x"][i] for i in order]
        entry["y"] = [entry["y"][i] for i in order]
    return series


def _draw_line_or_markers(ax, label, entry):
    if entry["style"] == "marker":
        # thin the markers so overlays stay readable
        step = max(1, len(entry["x"]) // 40)
        ax.plot(entry["x"][::step], entry["y"][::step],
                linestyle="none", marker="o", markersize=4,
                fillstyle="none", label=label)
    else:
        ax.plot(entry["x"], entry["y"], linestyle="-", marker="", label=label)


def render(spec: FigureSpec, output_image_path: str) -> None:
    """Render the figure to a PNG/SVG/PDF path chosen by extension."""
    series = extract_series(spec)
    if spec.figure_kind == "sweep_surface":
        _render_surface(spec, series, output_image_path)
        return

    fig, ax = plt.subplots(figsize=(6.0, 4.2), dpi=120)
    for label in sorted(series):
        _draw_line_or_markers(ax, label, series[label])
    if spec.figure_kind == "ccdf":
        ax.set_xlabel("threshold (dB)")
        ax.set_ylabel("ccdf")
        ax.set_ylim(-0.02, 1.02)
    elif spec.figure_kind == "sweep_line":
        ax.set_xlabel("sweep value")
        ax.set_ylabel("value")
    else:
        ax.set_xlabel("fading power (linear)")
        ax.set_ylabel("cdf")
        ax.set_ylim(-0.02, 1.02)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(output_image_path, metadata=_stable_metadata(output_image_path))
    plt.close(fig)


def _render_surface(spec: FigureSpec, series: dict, output_image_path: str) -> None:
    """Surface of value over (sweep value, threshold) for the first mode."""
    if not series:
        raise ValueError("no data series to plot")
    first_mode = sorted(series)[0].split("|")[0]
    thetas, columns = [], []
    for label in sorted(series):
        entry = series[label]
        if label.split("|")[0] != first_mode or entry["style"] != "line":
            continue
        thetas.append(entry["theta_db"])
        columns.append((entry["x"], entry["y"]))
    if not columns:
        raise ValueError("sweep_surface needs analytic rows")
    xs = np.asarray(columns[0][0])
    z = np.asarray([c[1] for c in columns])
    order = np.argsort(thetas)
    thetas = np.asarray(thetas)[order]
    z = z[order]

    fig = plt.figure(figsize=(6.4, 4.8), dpi=120)
    ax = fig.add_subplot(projection="3d")
    xg, tg = np.meshgrid(xs, thetas)
    ax.plot_surface(xg, tg, z, cmap="viridis", edgecolor="none")
    ax.set_xlabel("sweep value")
    ax.set_ylabel("threshold (dB)")
    ax.set_zlabel(f"value ({first_mode})")
    fig.savefig(output_image_path, metadata=_stable_metadata(output_image_path))
    plt.close(fig)


def _stable_metadata(path: str):
    # SVG embeds a creation date unless suppressed; identical inputs must
    # give identical bytes
    if path.endswith(".svg"):
        return {"Date": None}
    return None
