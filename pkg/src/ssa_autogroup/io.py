"""CSV ingestion and plain-text/CSV writers.

All files are UTF-8 with LF line endings; reals are written with 17
significant digits so they round-trip exactly.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptySeries, ParseError
from .inference import GroupingResult
from .simulation import StudyRow
from .ssa import TimeSeries


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def _column_index(header: list[str] | None, column) -> int:
    if isinstance(column, int):
        return column
    if header is not None and column in header:
        return header.index(column)
    if str(column).isdigit():
        return int(column)
    raise KeyError(f"column {column!r} not found in header {header}")


def load_csv(path, value_column=0, label_column=None, delimiter: str = ",", header: bool = True) -> TimeSeries:
    """Read one numeric column (by name or 0-based index) in file order."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh, delimiter=delimiter))
    names = rows[0] if header and rows else None
    body = rows[1:] if header else rows
    first_line = 2 if header else 1
    vi = _column_index(names, value_column)
    li = None if label_column is None else _column_index(names, label_column)
    values, labels = [], []
    for lineno, row in enumerate(body, start=first_line):
        if not row or all(not c.strip() for c in row):
            continue
        raw = row[vi] if vi < len(row) else ""
        try:
            x = float(raw)
        except ValueError:
            raise ParseError(lineno, value_column, raw) from None
        if not math.isfinite(x):
            raise ParseError(lineno, value_column, raw)
        values.append(x)
        if li is not None:
            labels.append(row[li] if li < len(row) else "")
    if not values:
        raise EmptySeries(f"{path} contains no observations")
    return TimeSeries(np.array(values), tuple(labels) if li is not None else None)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_matrix_csv(path, M: np.ndarray) -> None:
    write_csv(path, [f"c{j + 1}" for j in range(M.shape[1])], M.tolist())


def write_reconstruction_csv(path, series: TimeSeries, signal: np.ndarray, residual: np.ndarray) -> None:
    t = np.arange(1, len(series) + 1)
    if series.labels is not None:
        header = ["t", "label", "original", "signal", "residual"]
        rows = zip(t, series.labels, series.values, signal, residual)
    else:
        header = ["t", "original", "signal", "residual"]
        rows = zip(t, series.values, signal, residual)
    write_csv(path, header, rows)


def write_study_csv(path, rows: Sequence[StudyRow]) -> None:
    write_csv(path, StudyRow.CSV_COLUMNS, ([getattr(r, c) for c in StudyRow.CSV_COLUMNS] for r in rows))


def grouping_keyvalue(result: GroupingResult, extra: dict | None = None) -> str:
    """Machine-readable ``key=value`` lines; one block per tested hypothesis."""
    kv = {
        "N": result.N,
        "L": result.L,
        "d": result.d,
        "correction": result.correction.value,
        "alpha": result.alpha,
        "g_hat": result.g_hat,
    }
    kv.update({f"bootstrap.{k}": v for k, v in result.config.as_dict().items()})
    kv["bootstrap.ell_effective"] = result.config.block_size(result.N)
    kv.update(extra or {})
    for r in result.results:
        for name in ("T_obs", "p_raw", "p_adjusted", "rejected"):
            kv[f"g.{r.g}.{name}"] = getattr(r, name)
    return "".join(f"{k}={fmt(v)}\n" for k, v in kv.items())


def grouping_table(result: GroupingResult, extra: dict | None = None) -> str:
    cfg = result.config
    lines = [
        "SSA grouping report",
        f"N = {result.N}, L = {result.L}, d = {result.d}",
        f"correction = {result.correction.value}, alpha = {fmt(result.alpha)}",
        f"bootstrap: B = {cfg.B}, ell = {cfg.ell} ({cfg.block_size(result.N)}), "
        f"window = {cfg.window}, aux = {cfg.aux}, seed = {cfg.seed}",
    ]
    lines += [f"{k} = {fmt(v)}" for k, v in (extra or {}).items()]
    lines.append("")
    lines.append(f"{'g':>4} {'T_obs':>14} {'p_raw':>10} {'p_adjusted':>11} {'rejected':>9}")
    for r in result.results:
        lines.append(
            f"{r.g:>4} {r.T_obs:>14.6g} {r.p_raw:>10.4f} {r.p_adjusted:>11.4f} {('yes' if r.rejected else 'no'):>9}"
        )
    if not result.results:
        lines.append("  (no hypotheses: d <= 1)")
    lines.append("")
    lines.append(f"g_hat = {result.g_hat}")
    return "\n".join(lines) + "\n"


def study_table(rows: Sequence[StudyRow]) -> str:
    """Layout after the usual summary table: mean (sd) per signal and SNR."""
    lines = [f"{'signal':>6} {'SNR':>5} {'g*':>3} {'reps':>5} {'g_hat mean (sd)':>20} {'FWER':>6} {'HC mean (sd)':>20}"]
    for r in rows:
        lines.append(
            f"{r.signal:>6} {r.snr:>5g} {r.g_star:>3} {r.reps:>5} "
            f"{f'{r.mean_g_hat:.3f} ({r.sd_g_hat:.4f})':>20} {r.fwer_hat:>6.3f} "
            f"{f'{r.mean_g_hc:.3f} ({r.sd_g_hc:.4f})':>20}"
            + (f"  [{r.failures} failed reps]" if r.failures else "")
        )
    return "\n".join(lines) + "\n"
