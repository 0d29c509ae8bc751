"""Swing trajectories: smooth quintic profiles for a foot in flight.

A swing is parameterized by its total displacement (x_f, y_f, z_f), its
duration t_sw, and two shape numbers derived from the terrain it flies over:

  d_s   horizontal distance (along the path) at which the apex is reached,
  h_s   height of the highest landing-side ground relative to the start.

Horizontal motion follows a single quintic ramp from 0 to the full
displacement: both velocity and acceleration vanish at liftoff and
touchdown. Vertical motion climbs from 0 to the apex h_s + delta_h while the
foot covers the first d_s of ground, then settles to z_f over the rest of
the swing, again with zero boundary velocity and acceleration.

For a swing over flat ground the apex sits at mid-path (d_s = L/2) at height
delta_h. For a swing that crosses terrain level changes, d_s is the distance
to the last level change, so the foot is at full apex height when it clears
the final edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple


def ramp(u: float) -> float:
    """Quintic smoothstep: 0 -> 1 on [0, 1] with zero end velocity/acceleration."""
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 1.0
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u))


def ramp_d(u: float) -> float:
    """First derivative of ramp with respect to u."""
    if u <= 0.0 or u >= 1.0:
        return 0.0
    return 30.0 * u * u * (1.0 + u * (-2.0 + u))


def ramp_dd(u: float) -> float:
    """Second derivative of ramp with respect to u."""
    if u <= 0.0 or u >= 1.0:
        return 0.0
    return 60.0 * u * (1.0 + u * (-3.0 + 2.0 * u))


def solve_apex_time(d_s: float, length: float, t_sw: float) -> float:
    """Time at which the horizontal ramp has covered d_s of a length-L path.

    Inverts ramp by bisection (the ramp is strictly increasing on (0, 1)).
    A degenerate path (length 0) puts the apex at mid-swing.
    """
    if length <= 0.0:
        return 0.5 * t_sw
    target = min(max(d_s / length, 1e-12), 1.0 - 1e-12)
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if ramp(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi) * t_sw


@dataclass(frozen=True)
class SwingSpec:
    """A fully determined swing trajectory, in displacement coordinates."""

    x_f: float
    y_f: float
    z_f: float
    t_sw: float
    d_s: float
    h_s: float
    delta_h: float

    @property
    def length(self) -> float:
        return math.hypot(self.x_f, self.y_f)

    @property
    def apex(self) -> float:
        return self.h_s + self.delta_h

    @property
    def t_s(self) -> float:
        return solve_apex_time(self.d_s, self.length, self.t_sw)


def make_swing_spec(
    x_f: float,
    y_f: float,
    z_f: float,
    t_sw: float,
    delta_h: float,
    crossings: Sequence[Tuple[float, float]] = (),
) -> SwingSpec:
    """Build a SwingSpec from the terrain level changes under the path.

    crossings lists (distance along the path, ground height after the change
    relative to the start) for each level change, in path order. The apex is
    placed over the last change; with no changes it sits at mid-path. The
    apex height clears the landing level (h_s = max(0, z_f)) by delta_h.
    """
    if t_sw <= 0.0:
        raise ValueError("t_sw must be positive")
    length = math.hypot(x_f, y_f)
    d_s = crossings[-1][0] if crossings else 0.5 * length
    h_s = max(0.0, z_f)
    return SwingSpec(x_f, y_f, z_f, t_sw, d_s, h_s, delta_h)


def swing_xy(spec: SwingSpec, t: float) -> Tuple[float, float]:
    """Horizontal displacement at swing time t (clamped to the swing)."""
    q = ramp(t / spec.t_sw)
    return (spec.x_f * q, spec.y_f * q)


def swing_xy_vel(spec: SwingSpec, t: float) -> Tuple[float, float]:
    """Horizontal velocity at swing time t."""
    qd = ramp_d(t / spec.t_sw) / spec.t_sw
    return (spec.x_f * qd, spec.y_f * qd)


def swing_z(spec: SwingSpec, t: float) -> float:
    """Vertical displacement at swing time t (clamped to the swing)."""
    t_s = spec.t_s
    if t <= t_s:
        return spec.apex * ramp(t / t_s) if t_s > 0.0 else spec.apex
    rest = spec.t_sw - t_s
    if rest <= 0.0:
        return spec.z_f
    return spec.apex + (spec.z_f - spec.apex) * ramp((t - t_s) / rest)


def swing_z_vel(spec: SwingSpec, t: float) -> float:
    """Vertical velocity at swing time t."""
    t_s = spec.t_s
    if t <= t_s:
        return spec.apex * ramp_d(t / t_s) / t_s if t_s > 0.0 else 0.0
    rest = spec.t_sw - t_s
    if rest <= 0.0:
        return 0.0
    return (spec.z_f - spec.apex) * ramp_d((t - t_s) / rest) / rest


def swing_displacement(spec: SwingSpec, t: float) -> Tuple[float, float, float]:
    """Full displacement (x, y, z) at swing time t relative to liftoff."""
    x, y = swing_xy(spec, t)
    return (x, y, swing_z(spec, t))
