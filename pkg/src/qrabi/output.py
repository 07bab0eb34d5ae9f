"""Deterministic CSV/JSON artifact writers.

Formatting is pinned so identical inputs produce identical bytes: floats
carry 12 significant digits (%.12g), CSV uses comma separators, UTF-8 and
LF line endings with a mandatory header row, and JSON documents are built
with a fixed key order.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .entanglement import EntropySweep
from .spectra import CrossingReport, SpectrumSweep
from .wigner import WignerGrid

__all__ = [
    "format_float",
    "round_float",
    "write_csv",
    "write_json",
    "write_manifest",
    "spectrum_table",
    "entropy_table",
    "wigner_table",
    "crossings_table",
]


def format_float(x: float) -> str:
    return f"{float(x) + 0.0:.12g}"  # + 0.0 canonicalizes -0.0


def round_float(x: float) -> float:
    """Float carrying only the 12 significant digits that the text formats
    print, so JSON and CSV agree on precision."""
    return float(format_float(x))


def _cell(value) -> str:
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_float(value)


def write_csv(path: Path, columns: list[str], rows) -> None:
    lines = [",".join(columns)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _json_row(row) -> list:
    out = []
    for v in row:
        if isinstance(v, bool) or isinstance(v, np.bool_):
            out.append(bool(v))
        elif isinstance(v, (int, np.integer)):
            out.append(int(v))
        else:
            out.append(round_float(v))
    return out


def write_json(path: Path, spec: dict, columns: list[str], rows) -> None:
    doc = {"spec": spec, "columns": columns, "rows": [_json_row(r) for r in rows]}
    path.write_text(json.dumps(doc) + "\n", encoding="utf-8", newline="\n")


def write_manifest(path: Path, spec: dict) -> None:
    path.write_text(
        json.dumps(spec, indent=2, sort_keys=True) + "\n", encoding="utf-8", newline="\n"
    )


def spectrum_table(sweep: SpectrumSweep) -> tuple[list[str], list[list]]:
    """Columns g_over_wc, E0, E1, ... and one row per grid point."""
    k = sweep.levels.shape[1]
    columns = ["g_over_wc"] + [f"E{i}" for i in range(k)]
    rows = [[g, *levels] for g, levels in zip(sweep.g_grid, sweep.levels)]
    return columns, rows


def entropy_table(sweep: EntropySweep) -> tuple[list[str], list[list]]:
    columns = ["g_over_wc", "S_qrm_bits", "S_qrma_bits"]
    rows = [[g, s0, s1] for g, s0, s1 in sweep.rows()]
    return columns, rows


def wigner_table(w: WignerGrid) -> tuple[list[str], list[list]]:
    """Long-form q, p, w rows; p varies slowest, q fastest."""
    q = w.grid.q_axis()
    p = w.grid.p_axis()
    rows = []
    for i, pv in enumerate(p):
        for j, qv in enumerate(q):
            rows.append([qv, pv, w.values[i, j]])
    return ["q", "p", "w"], rows


def crossings_table(reports: list[CrossingReport]) -> tuple[list[str], list[list]]:
    columns = ["level_lower", "level_upper", "g_at_min", "min_gap", "at_boundary"]
    rows = [
        [r.level_pair[0], r.level_pair[1], r.g_at_min, r.min_gap, r.at_boundary]
        for r in reports
    ]
    return columns, rows
