"""Minimal standalone SVG line plots for simulation traces.

Two plots: the x-z trajectory of the body and of legs 1 and 2, and the
stability margin versus time. No plotting dependency; the files are plain
polylines with axes, ticks, and labels. Long traces are thinned to a few
thousand points per series, always keeping the first, last, and extreme
samples so minima survive thinning.
"""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

import numpy as np

from .simulate import SimTrace

_WIDTH = 800
_HEIGHT = 500
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 25, 45, 55
_MAX_POINTS = 4000


def _nice_step(span: float, target: int) -> float:
    raw = span / max(target, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if mag * mult >= raw - 1e-12 * raw:
            return mag * mult
    return mag * 10.0


def _ticks(lo: float, hi: float, target: int = 5) -> List[float]:
    step = _nice_step(hi - lo, target)
    first = math.ceil(lo / step - 1e-9) * step
    out = []
    v = first
    while v <= hi + 1e-9 * max(1.0, abs(hi)):
        out.append(0.0 if abs(v) < step * 1e-9 else v)
        v += step
    return out


def _expand(lo: float, hi: float) -> Tuple[float, float]:
    if hi - lo < 1e-12:
        return lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _thin(n: int, *keep: int) -> List[int]:
    if n <= _MAX_POINTS:
        return list(range(n))
    stride = (n + _MAX_POINTS - 1) // _MAX_POINTS
    idx = set(range(0, n, stride))
    idx.add(n - 1)
    idx.update(k for k in keep if 0 <= k < n)
    return sorted(idx)


class _Frame:
    """Maps data coordinates onto the SVG pixel grid."""

    def __init__(self, xlo, xhi, ylo, yhi):
        self.xlo, self.xhi = _expand(xlo, xhi)
        self.ylo, self.yhi = _expand(ylo, yhi)
        self.pw = _WIDTH - _LEFT - _RIGHT
        self.ph = _HEIGHT - _TOP - _BOTTOM

    def px(self, x: float) -> float:
        return _LEFT + (x - self.xlo) / (self.xhi - self.xlo) * self.pw

    def py(self, y: float) -> float:
        return _TOP + (self.yhi - y) / (self.yhi - self.ylo) * self.ph

    def polyline(self, xs, ys, color: str, name: str) -> str:
        pts = " ".join(
            f"{self.px(x):.2f},{self.py(y):.2f}" for x, y in zip(xs, ys)
        )
        return (
            f'<polyline id="{name}" fill="none" stroke="{color}" '
            f'stroke-width="1.5" points="{pts}"/>'
        )

    def axes(self, xlabel: str, ylabel: str, title: str) -> List[str]:
        x0, x1 = _LEFT, _WIDTH - _RIGHT
        y0, y1 = _TOP, _HEIGHT - _BOTTOM
        parts = [
            f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
            f'<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}" stroke="black"/>',
            f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
            f'<text x="{(x0 + x1) / 2:.0f}" y="22" text-anchor="middle" '
            f'font-size="15">{title}</text>',
            f'<text x="{(x0 + x1) / 2:.0f}" y="{_HEIGHT - 12}" '
            f'text-anchor="middle" font-size="13">{xlabel}</text>',
            f'<text x="16" y="{(y0 + y1) / 2:.0f}" text-anchor="middle" '
            f'font-size="13" transform="rotate(-90 16 {(y0 + y1) / 2:.0f})">'
            f"{ylabel}</text>",
        ]
        for v in _ticks(self.xlo, self.xhi):
            p = self.px(v)
            parts.append(
                f'<line x1="{p:.2f}" y1="{y1}" x2="{p:.2f}" y2="{y1 + 5}" '
                f'stroke="black"/>'
            )
            parts.append(
                f'<text x="{p:.2f}" y="{y1 + 19}" text-anchor="middle" '
                f'font-size="11">{v:g}</text>'
            )
        for v in _ticks(self.ylo, self.yhi):
            p = self.py(v)
            parts.append(
                f'<line x1="{x0 - 5}" y1="{p:.2f}" x2="{x0}" y2="{p:.2f}" '
                f'stroke="black"/>'
            )
            parts.append(
                f'<text x="{x0 - 8}" y="{p + 4:.2f}" text-anchor="end" '
                f'font-size="11">{v:g}</text>'
            )
        return parts


def _document(body: Sequence[str]) -> str:
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">'
    )
    return head + "\n" + "\n".join(body) + "\n</svg>\n"


def _check_nonempty(trace: SimTrace) -> None:
    if trace.n_samples == 0:
        raise ValueError("cannot plot an empty trace")


def write_trajectory_svg(trace: SimTrace, path: str) -> None:
    """Side view (x vs z) of the body center and the feet of legs 1 and 2."""
    _check_nonempty(trace)
    series = [
        ("body", trace.body[:, 0], trace.body[:, 2], "#000000"),
        ("leg1", trace.feet[:, 0, 0], trace.feet[:, 0, 2], "#1f77b4"),
        ("leg2", trace.feet[:, 1, 0], trace.feet[:, 1, 2], "#d62728"),
    ]
    xlo = min(float(xs.min()) for _, xs, _, _ in series)
    xhi = max(float(xs.max()) for _, xs, _, _ in series)
    ylo = min(float(ys.min()) for _, _, ys, _ in series)
    yhi = max(float(ys.max()) for _, _, ys, _ in series)
    frame = _Frame(xlo, xhi, ylo, yhi)
    parts = frame.axes("x [m]", "z [m]", "body and foot trajectories (x-z)")
    for i, (name, xs, ys, color) in enumerate(series):
        idx = _thin(len(xs), int(np.argmin(ys)), int(np.argmax(ys)))
        parts.append(frame.polyline(xs[idx], ys[idx], color, name))
        parts.append(
            f'<text x="{_WIDTH - _RIGHT - 8}" y="{_TOP + 16 + 16 * i}" '
            f'text-anchor="end" font-size="12" fill="{color}">{name}</text>'
        )
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(_document(parts))


def write_margin_svg(trace: SimTrace, path: str) -> None:
    """Stability margin against time."""
    _check_nonempty(trace)
    ts = trace.t
    ms = trace.margin
    frame = _Frame(float(ts.min()), float(ts.max()), float(ms.min()), float(ms.max()))
    parts = frame.axes("t [s]", "stability margin [m]", "stability margin over time")
    idx = _thin(len(ts), int(np.argmin(ms)), int(np.argmax(ms)))
    parts.append(frame.polyline(ts[idx], ms[idx], "#1f77b4", "margin"))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(_document(parts))


def write_plots_svg(trace: SimTrace, path_prefix: str) -> Tuple[str, str]:
    """Both plots; returns (trajectory path, margin path)."""
    _check_nonempty(trace)
    traj = f"{path_prefix}_trajectory.svg"
    marg = f"{path_prefix}_margin.svg"
    write_trajectory_svg(trace, traj)
    write_margin_svg(trace, marg)
    return traj, marg
