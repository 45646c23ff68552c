"""Bit-stable CSV / JSON / PGM / SVG writers.

Floats are written with 9 significant digits. Sweep grids map to 8-bit
gray as ``round(255 * (rate - min) / (max - min))`` (all zeros when the
grid is constant); image row ``i`` is ``power_axis[i]`` and column ``j`` is
``soma_axis[j]``.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .spectral import DcTruthTable, Spectrum
from .sweep import SweepGrid
from .transient import OpticalWaveform


class ExportError(ValueError):
    pass


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.9g}"
    return str(v)


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(fmt(obj))
    if hasattr(obj, "value"):  # enums
        return obj.value
    return obj


def json_text(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def grid_gray(grid: SweepGrid) -> np.ndarray:
    c = grid.cells.astype(float)
    lo, hi = c.min(), c.max()
    if hi == lo:
        return np.zeros(c.shape, dtype=int)
    return np.rint(255.0 * (c - lo) / (hi - lo)).astype(int)


def pgm_text(grid: SweepGrid) -> str:
    g = grid_gray(grid)
    lo, hi = int(grid.cells.min()), int(grid.cells.max())
    lines = [
        "P2",
        f"# {grid.function} {grid.port}: rows power {grid.power_axis[0]:g}..{grid.power_axis[-1]:g} dBm, "
        f"cols SOMA {grid.soma_axis[0]:g}..{grid.soma_axis[-1]:g} dBm, gray 0={lo} 255={hi} Gb/s",
        f"{g.shape[1]} {g.shape[0]}",
        "255",
    ]
    lines += [" ".join(str(v) for v in row) for row in g]
    return "\n".join(lines) + "\n"


def read_pgm(path) -> np.ndarray:
    tokens = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0]
        tokens += line.split()
    if tokens[0] != "P2":
        raise ExportError("not a plain PGM file")
    w, h, _ = int(tokens[1]), int(tokens[2]), int(tokens[3])
    return np.array([int(t) for t in tokens[4 : 4 + w * h]]).reshape(h, w)


def svg_text(x, ys: dict, xlabel: str = "", ylabel: str = "", width: int = 640, height: int = 360) -> str:
    """Minimal line plot; one polyline per series."""
    x = np.asarray(x, dtype=float)
    allv = np.concatenate([np.asarray(v, dtype=float) for v in ys.values()])
    x0, x1 = x.min(), x.max()
    y0, y1 = min(allv.min(), 0.0), allv.max() or 1.0
    pad = 40
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"]

    def px(v):
        return pad + (v - x0) / ((x1 - x0) or 1.0) * (width - 2 * pad)

    def py(v):
        return height - pad - (v - y0) / ((y1 - y0) or 1.0) * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" fill="none" stroke="black"/>',
        f'<text x="{width / 2:.0f}" y="{height - 8}" text-anchor="middle">{xlabel}</text>',
        f'<text x="12" y="{height / 2:.0f}" transform="rotate(-90 12 {height / 2:.0f})" text-anchor="middle">{ylabel}</text>',
    ]
    for i, (name, v) in enumerate(ys.items()):
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, np.asarray(v, dtype=float)))
        color = colors[i % len(colors)]
        parts.append(f'<polyline fill="none" stroke="{color}" points="{pts}"/>')
        parts.append(f'<text x="{pad + 8}" y="{pad + 16 + 16 * i}" fill="{color}">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def spectrum_csv(s: Spectrum) -> str:
    return csv_text(["wavelength_nm", "drop", "through"], zip(s.wavelengths, s.drop, s.through))


def grid_csv(grid: SweepGrid) -> str:
    header = ["power_dbm"] + [f"soma_{s:g}dBm" for s in grid.soma_axis]
    rows = [[p, *row] for p, row in zip(grid.power_axis, grid.cells)]
    return csv_text(header, rows)


def truth_table_rows(table: DcTruthTable) -> list[dict]:
    return [
        {
            "x": r.x,
            "w": r.w,
            "drop_level": r.drop_level,
            "drop_bit": r.drop_bit,
            "through_level": r.through_level,
            "through_bit": r.through_bit,
        }
        for r in table.rows
    ]


def waveform_csv(drives, outputs: dict[str, OpticalWaveform]) -> str:
    dx, dw = drives
    return csv_text(
        ["t_ps", "drive_x_V", "drive_w_V", "drop_mW", "through_mW"],
        zip(dx.t, dx.samples, dw.samples, outputs["drop"].samples, outputs["through"].samples),
    )


def _render(artifact, format: str) -> str:
    if isinstance(artifact, Spectrum):
        if format == "csv":
            return spectrum_csv(artifact)
        if format == "svg":
            return svg_text(artifact.wavelengths, {"drop": artifact.drop, "through": artifact.through},
                            "wavelength (nm)", "transmission")
        if format == "json":
            return json_text({"wavelength_nm": artifact.wavelengths, "drop": artifact.drop, "through": artifact.through})
    elif isinstance(artifact, SweepGrid):
        if format == "csv":
            return grid_csv(artifact)
        if format == "pgm":
            return pgm_text(artifact)
        if format == "json":
            return json_text({"function": artifact.function, "port": artifact.port,
                              "power_axis": artifact.power_axis, "soma_axis": artifact.soma_axis,
                              "cells": artifact.cells})
    elif isinstance(artifact, DcTruthTable):
        rows = truth_table_rows(artifact)
        if format == "csv":
            return csv_text(list(rows[0]), [r.values() for r in rows])
        if format == "json":
            return json_text({"function": artifact.function, "rows": rows, "dc_oma": artifact.dc_oma})
    elif isinstance(artifact, (list, tuple)) and artifact and isinstance(artifact[0], dict):
        if format == "csv":
            return csv_text(list(artifact[0]), [r.values() for r in artifact])
        if format == "json":
            return json_text(list(artifact))
    elif isinstance(artifact, dict) and format == "json":
        return json_text(artifact)
    raise ExportError(f"cannot export {type(artifact).__name__} as {format}")


def export(artifact, format: str, path) -> Path:
    """Render ``artifact`` in ``format`` and write it to ``path``."""
    text = _render(artifact, format)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc}") from None
    return path
