"""Sampled result traces and their on-disk CSV/JSON round-trip format.

Files carry ``#``-prefixed header comment lines followed by a column-name row
and comma-separated numeric rows.  Values are printed with 17 significant
digits so a re-read reproduces every float bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .numerics import ensure_uniform_axis


class TraceKind(str, Enum):
    SIGNAL_SPECTRUM = "signal_spectrum"
    IDLER_SPECTRUM = "idler_spectrum"
    G1_MAGNITUDE = "g1_magnitude"
    G1 = "g1"
    G2 = "g2"


class Normalization(str, Enum):
    PEAK_UNITY = "peak_unity"
    UNIT_INTEGRAL = "unit_integral"
    UNIT_AT_ZERO = "unit_at_zero"


@dataclass(frozen=True)
class TraceMeta:
    kind: TraceKind
    normalization: Normalization
    scenario_hash: str | None = None
    extra: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class Trace:
    """Real-valued function of one variable on a uniform grid."""

    axis: np.ndarray
    values: np.ndarray
    meta: TraceMeta

    def __post_init__(self):
        axis = np.asarray(self.axis, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "values", values)
        ensure_uniform_axis(axis, "trace axis")
        if values.shape != axis.shape:
            raise ValueError("values must have the same shape as axis")
        if not np.all(np.isfinite(values)):
            raise ValueError("trace values must be finite")
        if np.any(values < 0):
            raise ValueError("trace values must be non-negative")

    @property
    def spacing(self) -> float:
        return float(self.axis[-1] - self.axis[0]) / (self.axis.size - 1)

    def with_hash(self, scenario_hash: str) -> "Trace":
        return replace(self, meta=replace(self.meta, scenario_hash=scenario_hash))


@dataclass(frozen=True, eq=False)
class ComplexTrace:
    """Complex-valued function of one variable on a uniform grid."""

    axis: np.ndarray
    values: np.ndarray
    meta: TraceMeta

    def __post_init__(self):
        axis = np.asarray(self.axis, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "values", values)
        ensure_uniform_axis(axis, "trace axis")
        if values.shape != axis.shape:
            raise ValueError("values must have the same shape as axis")
        if not np.all(np.isfinite(values)):
            raise ValueError("trace values must be finite")

    @property
    def spacing(self) -> float:
        return float(self.axis[-1] - self.axis[0]) / (self.axis.size - 1)

    def magnitude(self) -> Trace:
        meta = replace(self.meta, kind=TraceKind.G1_MAGNITUDE)
        return Trace(self.axis, np.abs(self.values), meta)


def format_float(value: float) -> str:
    """17-significant-digit decimal form; round-trips any float64 exactly."""
    return format(float(value), ".17g")


def write_table_csv(
    path: str | Path,
    comments: Sequence[str],
    column_names: Sequence[str],
    columns: Sequence[np.ndarray],
) -> None:
    if len(column_names) != len(columns):
        raise ValueError("one name per column required")
    n_rows = len(columns[0])
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(column_names))
    cols = [np.asarray(c) for c in columns]
    for i in range(n_rows):
        lines.append(",".join(format_float(col[i]) for col in cols))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_table_csv(path: str | Path):
    """Inverse of :func:`write_table_csv`: (comments, names, columns)."""
    comments: list[str] = []
    names: list[str] | None = None
    rows: list[list[float]] = []
    for line in Path(path).read_text(encoding="ascii").splitlines():
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif names is None:
            names = line.split(",")
        else:
            rows.append([float(tok) for tok in line.split(",")])
    if names is None:
        raise ValueError(f"{path}: no column header found")
    data = np.array(rows, dtype=float)
    columns = [data[:, i] for i in range(len(names))]
    return comments, names, columns


def _json_safe(value):
    if isinstance(value, float) and not np.isfinite(value):
        return repr(value)
    return value


def write_table_json(
    path: str | Path,
    meta: Mapping[str, object],
    column_names: Sequence[str],
    columns: Sequence[np.ndarray],
) -> None:
    payload = {
        "meta": {k: _json_safe(v) for k, v in sorted(meta.items())},
        "columns": list(column_names),
        "data": [[float(col[i]) for col in columns] for i in range(len(columns[0]))],
    }
    Path(path).write_text(
        json.dumps(payload, indent=1, sort_keys=True) + "\n", encoding="ascii"
    )
