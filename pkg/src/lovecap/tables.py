"""Tabulation of the capacitance over log-spaced grids, written as CSV."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from . import large, nystrom, small
from .errors import DomainError
from .selector import capacitance

__all__ = [
    "FIG1_HEADER",
    "SMALL_O6_KAPPA_MAX",
    "LARGE_KAPPA_MIN",
    "log_grid",
    "fig1_rows",
    "write_fig1",
    "read_fig1",
    "table_rows",
    "write_table",
    "write_csv",
    "format_value",
]

FIG1_HEADER = ("kappa", "C_nystrom", "C_small_o6", "C_large")
NA = "NA"
# bands where each column is trusted to 1e-6 against the Nystrom solution
SMALL_O6_KAPPA_MAX = 0.7
LARGE_KAPPA_MIN = 5.0


def log_grid(kmin: float, kmax: float, points: int) -> np.ndarray:
    if not (0 < kmin < kmax):
        raise DomainError(f"need 0 < kmin < kmax, got kmin={kmin}, kmax={kmax}")
    if points < 2:
        raise DomainError(f"need at least 2 points, got {points}")
    return np.geomspace(kmin, kmax, points)


def format_value(value) -> str:
    """12 significant digits, ``NA`` for a missing value, strings unchanged."""
    if value is None:
        return NA
    if isinstance(value, str):
        return value
    return f"{value:.12g}"


def _fig1_row(kappa: float, tolerance: float) -> tuple:
    c_nys = c_small = c_large = None
    if nystrom.KAPPA_MIN <= kappa <= 1e7:
        c_nys = nystrom.solve_love(kappa, tolerance).capacitance
    if kappa <= SMALL_O6_KAPPA_MAX:
        c_small = small.eval_small_kappa(kappa, 6)
    if kappa >= LARGE_KAPPA_MIN:
        c_large = large.capacitance_large_series(kappa)
    return kappa, c_nys, c_small, c_large


def fig1_rows(kmin: float, kmax: float, points: int, tolerance: float = nystrom.DEFAULT_TOLERANCE) -> list:
    """Rows ``(kappa, C_nystrom, C_small_o6, C_large)``; ``None`` marks an invalid method."""
    return [_fig1_row(float(k), tolerance) for k in log_grid(kmin, kmax, points)]


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])


def write_fig1(path, kmin: float, kmax: float, points: int, tolerance: float = nystrom.DEFAULT_TOLERANCE) -> list:
    rows = fig1_rows(kmin, kmax, points, tolerance)
    write_csv(Path(path), FIG1_HEADER, rows)
    return rows


def read_fig1(path) -> list:
    """Parse a figure CSV back into rows with ``None`` for ``NA``."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != FIG1_HEADER:
            raise DomainError(f"unexpected header {header}")
        return [tuple(None if v == NA else float(v) for v in row) for row in reader]


def table_rows(kmin: float, kmax: float, points: int, method: str = "auto", order: int = small.MAX_ORDER,
               tolerance: float = nystrom.DEFAULT_TOLERANCE) -> list:
    out = []
    for k in log_grid(kmin, kmax, points):
        r = capacitance(float(k), method, order, tolerance)
        out.append((r.kappa, r.value, r.method, r.error_estimate))
    return out


def write_table(path, rows) -> None:
    write_csv(Path(path), ("kappa", "C", "method", "error_estimate"), rows)
