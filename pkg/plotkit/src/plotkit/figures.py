"""Figure rendering from cohres sweep CSVs.

Input files are the CSV outputs of `cohres fig1` / `cohres fig2`:
a `#` configuration comment, a fixed header row, then data rows sorted by
(L, N).  Nothing is recomputed here -- every plotted number comes from the
file; a file that does not match the expected schema raises SchemaError
with a diagnostic naming the defect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["SchemaError", "FigureSpec", "read_sweep", "render", "SCHEMAS"]

SCHEMAS = {
    "fig1": ["L", "N", "A_exact", "A_approx", "A_bound"],
    "fig2": ["L", "N", "xi_exact", "xi_approx"],
}

# echoes the conventional palette: one warm-to-dark series per L, smallest first
SERIES_COLORS = ["tab:red", "gold", "black", "tab:blue", "tab:green"]


class SchemaError(ValueError):
    """The input file does not match the expected sweep schema."""


@dataclass(frozen=True)
class FigureSpec:
    """What to render: which CSV, which figure kind, where to write it.

    ``marker_stride`` thins the exact-value markers (default: every third
    point for the growth figure, every point for the error figure);
    ``inset`` adds a zoom panel over N in [150, 200] on the growth figure.
    """

    csv_path: str
    out_path: str
    kind: str
    marker_stride: int = 0  # 0 = kind default
    inset: bool = False

    def stride(self) -> int:
        if self.marker_stride > 0:
            return self.marker_stride
        return 3 if self.kind == "fig1" else 1


def read_sweep(path: str, kind: str) -> Dict[int, Dict[str, np.ndarray]]:
    """Parse a sweep CSV into {L: {column: array}}, validating the schema."""
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown figure kind {kind!r}")
    expected = SCHEMAS[kind]
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.rstrip("\n") for ln in fh]
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    rows = [ln for ln in lines if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise SchemaError(f"{path}: no header row found")
    header = [h.strip() for h in rows[0].split(",")]
    if header != expected:
        raise SchemaError(
            f"{path}: header {header} does not match the {kind} schema "
            f"{expected}")
    data = rows[1:]
    if not data:
        raise SchemaError(f"{path}: no data rows")
    out: Dict[int, Dict[str, List[float]]] = {}
    for lineno, row in enumerate(data, start=2):
        parts = row.split(",")
        if len(parts) != len(expected):
            raise SchemaError(
                f"{path}: row {lineno} has {len(parts)} fields, "
                f"expected {len(expected)}")
        try:
            L = int(parts[0])
            vals = [float(p) for p in parts[1:]]
        except ValueError as exc:
            raise SchemaError(f"{path}: row {lineno} is not numeric: "
                              f"{row!r}") from exc
        series = out.setdefault(L, {c: [] for c in expected[1:]})
        for col, v in zip(expected[1:], vals):
            series[col].append(v)
    return {L: {c: np.asarray(v) for c, v in cols.items()}
            for L, cols in out.items()}


def _render_growth(spec: FigureSpec, data) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(7.5, 5.0))
    stride = spec.stride()
    for i, L in enumerate(sorted(data)):
        cols = data[L]
        color = SERIES_COLORS[i % len(SERIES_COLORS)]
        n = cols["N"]
        ax.plot(n[::stride], cols["A_exact"][::stride], "o", ms=4,
                color=color, label=f"exact, L={L}")
        bound = float(cols["A_bound"][0])
        ax.axhline(bound, linestyle=":", color="grey", linewidth=1.0)
        ax.annotate(f"ln {L}", xy=(1.0, bound), fontsize=8, color="grey",
                    va="bottom")
    first = data[sorted(data)[0]]
    order = np.argsort(first["N"])
    ax.plot(first["N"][order], first["A_approx"][order], "-",
            color="tab:blue", linewidth=1.2, label="approximation")
    ax.set_xlabel("number of prepared qubits N")
    ax.set_ylabel("asymmetry (nats)")
    ax.legend(loc="lower right", fontsize=8)
    if spec.inset:
        axin = ax.inset_axes([0.55, 0.12, 0.4, 0.35])
        for i, L in enumerate(sorted(data)):
            cols = data[L]
            sel = (cols["N"] >= 150) & (cols["N"] <= 200)
            axin.plot(cols["N"][sel], cols["A_exact"][sel], "o", ms=2.5,
                      color=SERIES_COLORS[i % len(SERIES_COLORS)])
            axin.axhline(float(cols["A_bound"][0]), linestyle=":",
                         color="grey", linewidth=0.8)
        sel = (first["N"] >= 150) & (first["N"] <= 200)
        axin.plot(first["N"][sel], first["A_approx"][sel], "-",
                  color="tab:blue", linewidth=1.0)
        axin.set_title("N = 150..200", fontsize=8)
    return fig


def _render_error(spec: FigureSpec, data) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(7.5, 5.0))
    stride = spec.stride()
    for i, L in enumerate(sorted(data)):
        cols = data[L]
        color = SERIES_COLORS[i % len(SERIES_COLORS)]
        order = np.argsort(cols["N"])
        n = cols["N"][order]
        ax.plot(n[::stride], cols["xi_exact"][order][::stride], "x", ms=6,
                color=color, label=f"exact, L={L}")
        ax.plot(n, cols["xi_approx"][order], "--", color=color,
                linewidth=1.0, label=f"(N-1)/L, L={L}")
    ax.set_xlabel("number of prepared qubits N")
    ax.set_ylabel("trace norm of the repeatability error")
    ax.legend(loc="upper left", fontsize=8)
    return fig


def render(spec: FigureSpec) -> plt.Figure:
    """Render one figure from its CSV and write the image file.

    Returns the matplotlib figure (callers that only need the file may close
    it).  Raises SchemaError for malformed input.
    """
    data = read_sweep(spec.csv_path, spec.kind)
    if spec.kind == "fig1":
        fig = _render_growth(spec, data)
    else:
        fig = _render_error(spec, data)
    fig.savefig(spec.out_path, dpi=150, bbox_inches="tight")
    return fig
