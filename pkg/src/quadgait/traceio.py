"""CSV serialization of simulation traces.

Column order: t, body_x, body_y, body_z, body_yaw, then leg{i}_x, leg{i}_y,
leg{i}_z, leg{i}_support for each leg i in 1..4, then margin. Floats are
printed with 17 significant digits so a read-back reproduces every value
bit-exactly; support flags are 0/1. Output uses '\n' line endings and the C
locale's decimal point regardless of platform.
"""

from __future__ import annotations

import csv
from typing import List

import numpy as np

from .model import LEG_IDS
from .simulate import SimTrace

COLUMNS: List[str] = (
    ["t", "body_x", "body_y", "body_z", "body_yaw"]
    + [
        f"leg{leg}_{axis}"
        for leg in LEG_IDS
        for axis in ("x", "y", "z", "support")
    ]
    + ["margin"]
)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_trace_csv(trace: SimTrace, path: str) -> None:
    """Write one row per sample; deterministic byte-for-byte output."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(COLUMNS) + "\n")
        for i in range(trace.n_samples):
            row = [
                _fmt(trace.t[i]),
                _fmt(trace.body[i, 0]),
                _fmt(trace.body[i, 1]),
                _fmt(trace.body[i, 2]),
                _fmt(trace.yaw[i]),
            ]
            for j in range(4):
                row.append(_fmt(trace.feet[i, j, 0]))
                row.append(_fmt(trace.feet[i, j, 1]))
                row.append(_fmt(trace.feet[i, j, 2]))
                row.append("1" if trace.support[i, j] else "0")
            row.append(_fmt(trace.margin[i]))
            fh.write(",".join(row) + "\n")


def read_trace_csv(path: str) -> SimTrace:
    """Read a trace written by write_trace_csv (events/phases are not stored)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"'{path}' is empty, expected a trace header")
        if header != COLUMNS:
            raise ValueError(f"'{path}' does not have the trace column layout")
        rows = [row for row in reader if row]
    for row in rows:
        if len(row) != len(COLUMNS):
            raise ValueError(f"'{path}' has a row with {len(row)} fields")

    n = len(rows)
    t = np.empty(n)
    body = np.empty((n, 3))
    yaw = np.empty(n)
    feet = np.empty((n, 4, 3))
    support = np.empty((n, 4), dtype=bool)
    margin = np.empty(n)
    for i, row in enumerate(rows):
        t[i] = float(row[0])
        body[i] = (float(row[1]), float(row[2]), float(row[3]))
        yaw[i] = float(row[4])
        for j in range(4):
            base = 5 + 4 * j
            feet[i, j] = (
                float(row[base]),
                float(row[base + 1]),
                float(row[base + 2]),
            )
            support[i, j] = row[base + 3] == "1"
        margin[i] = float(row[21])

    if n >= 2:
        dt = float(min(np.diff(t)))
    else:
        dt = 1e-3
    return SimTrace(
        dt=dt,
        t=t,
        body=body,
        yaw=yaw,
        feet=feet,
        support=support,
        margin=margin,
        events=[],
        phases=[],
    )
