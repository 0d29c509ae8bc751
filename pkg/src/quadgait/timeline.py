"""Timed motion plans: contiguous segments of body motion plus swing records.

A Segment moves the body at a constant velocity and yaw rate over [t0, t1]
and carries at most one swing record. Supporting feet keep the world
positions they had at t0. A swing record is evaluated in one of two frames:

  "world"  the foot flies from a world-frame liftoff point by the spec's
           displacement (wave gaits, transitions);
  "body"   the foot flies along a body-frame chord anchored at its liftoff
           body-frame position, so it turns with the body (spinning gaits).

A Timeline is an initial state plus contiguous segments whose poses chain.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from .errors import MalformedTimeline
from .model import (
    LEG_IDS,
    MIRROR_LEG,
    RobotState,
    Vec3,
    body_to_world,
    world_to_body,
)
from .swing import SwingSpec, swing_displacement

_TOL = 1e-9


@dataclass(frozen=True)
class SwingRecord:
    leg: int
    spec: SwingSpec
    start: Vec3
    target: Vec3
    mode: str = "world"

    def __post_init__(self) -> None:
        if self.mode not in ("world", "body"):
            raise ValueError("swing mode must be 'world' or 'body'")


@dataclass(frozen=True)
class Segment:
    t0: float
    t1: float
    velocity: Vec3
    yaw_rate: float
    body0: Vec3
    yaw0: float
    feet0: Dict[int, Vec3]
    swing: Optional[SwingRecord] = None
    label: str = ""

    @property
    def duration(self) -> float:
        return self.t1 - self.t0

    def body_at(self, t: float) -> Vec3:
        dt = t - self.t0
        return (
            self.body0[0] + self.velocity[0] * dt,
            self.body0[1] + self.velocity[1] * dt,
            self.body0[2] + self.velocity[2] * dt,
        )

    def yaw_at(self, t: float) -> float:
        return self.yaw0 + self.yaw_rate * (t - self.t0)

    def foot_at(self, t: float, leg: int) -> Vec3:
        if self.swing is None or self.swing.leg != leg:
            return self.feet0[leg]
        rec = self.swing
        local_t = min(max(t - self.t0, 0.0), rec.spec.t_sw)
        dx, dy, dz = swing_displacement(rec.spec, local_t)
        sx, sy, sz = rec.start
        point = (sx + dx, sy + dy, sz + dz)
        if rec.mode == "world":
            return point
        return body_to_world(self.body_at(t), self.yaw_at(t), point)

    def feet_at(self, t: float) -> Dict[int, Vec3]:
        return {leg: self.foot_at(t, leg) for leg in LEG_IDS}

    def state_at(self, t: float) -> RobotState:
        support = {leg: True for leg in LEG_IDS}
        if self.swing is not None and self.t0 < t < self.t1:
            support[self.swing.leg] = False
        return RobotState(
            body=self.body_at(t),
            yaw=self.yaw_at(t),
            feet=self.feet_at(t),
            support=support,
        )


def _close(a: Vec3, b: Vec3, tol: float = _TOL) -> bool:
    return all(abs(x - y) <= tol for x, y in zip(a, b))


@dataclass(frozen=True)
class Timeline:
    initial_state: RobotState
    segments: Tuple[Segment, ...]

    def __init__(self, initial_state: RobotState, segments) -> None:
        object.__setattr__(self, "initial_state", initial_state)
        object.__setattr__(self, "segments", tuple(segments))
        self._validate()

    def _validate(self) -> None:
        prev_t = None
        prev_state: Optional[RobotState] = self.initial_state
        for i, seg in enumerate(self.segments):
            if seg.t1 < seg.t0 - _TOL:
                raise MalformedTimeline(f"segment {i} runs backward in time")
            if seg.swing is not None and seg.swing.spec.t_sw > seg.duration + _TOL:
                raise MalformedTimeline(f"segment {i} swing outlasts the segment")
            if prev_t is not None and abs(seg.t0 - prev_t) > _TOL:
                raise MalformedTimeline(
                    f"segment {i} starts at {seg.t0}, previous ended at {prev_t}"
                )
            if prev_state is not None:
                if not _close(seg.body0, prev_state.body):
                    raise MalformedTimeline(f"segment {i} body pose does not chain")
                if abs(seg.yaw0 - prev_state.yaw) > _TOL:
                    raise MalformedTimeline(f"segment {i} yaw does not chain")
                for leg in LEG_IDS:
                    if not _close(seg.feet0[leg], prev_state.feet[leg]):
                        raise MalformedTimeline(
                            f"segment {i} foot {leg} does not chain"
                        )
            prev_t = seg.t1
            prev_state = seg.state_at(seg.t1)

    @property
    def t_start(self) -> float:
        if self.segments:
            return self.segments[0].t0
        return 0.0

    @property
    def t_end(self) -> float:
        if self.segments:
            return self.segments[-1].t1
        return self.t_start

    @property
    def final_state(self) -> RobotState:
        if not self.segments:
            return self.initial_state
        last = self.segments[-1]
        return last.state_at(last.t1)

    def segment_at(self, t: float) -> Segment:
        if not self.segments:
            raise MalformedTimeline("empty timeline has no segments")
        starts = [s.t0 for s in self.segments]
        i = bisect.bisect_right(starts, t) - 1
        i = min(max(i, 0), len(self.segments) - 1)
        return self.segments[i]

    def state_at(self, t: float) -> RobotState:
        if not self.segments:
            return self.initial_state
        t = min(max(t, self.t_start), self.t_end)
        return self.segment_at(t).state_at(t)

    def boundaries(self) -> List[float]:
        out = [self.t_start]
        for seg in self.segments:
            out.append(seg.t1)
        return out


def concatenate(timelines: List[Timeline]) -> Timeline:
    """Join timelines whose end/start states and times coincide."""
    timelines = [t for t in timelines if t is not None]
    if not timelines:
        raise MalformedTimeline("nothing to concatenate")
    segs: List[Segment] = []
    for tl in timelines:
        segs.extend(tl.segments)
    return Timeline(timelines[0].initial_state, segs)


class TimelineBuilder:
    """Accumulates segments while tracking the current pose and feet."""

    def __init__(self, initial_state: RobotState, t0: float = 0.0) -> None:
        self.initial_state = initial_state
        self.t = t0
        self.body = initial_state.body
        self.yaw = initial_state.yaw
        self.feet = dict(initial_state.feet)
        self.segments: List[Segment] = []

    def advance(
        self,
        duration: float,
        velocity: Vec3 = (0.0, 0.0, 0.0),
        yaw_rate: float = 0.0,
        swing: Optional[Tuple[int, SwingSpec, str]] = None,
        label: str = "",
    ) -> Segment:
        if duration < 0.0:
            raise MalformedTimeline("segment duration must be >= 0")
        record = None
        if swing is not None:
            leg, spec, mode = swing
            if mode == "world":
                start = self.feet[leg]
            else:
                start = world_to_body(self.body, self.yaw, self.feet[leg])
            dx, dy, dz = spec.x_f, spec.y_f, spec.z_f
            target = (start[0] + dx, start[1] + dy, start[2] + dz)
            record = SwingRecord(leg, spec, start, target, mode)
        seg = Segment(
            t0=self.t,
            t1=self.t + duration,
            velocity=velocity,
            yaw_rate=yaw_rate,
            body0=self.body,
            yaw0=self.yaw,
            feet0=dict(self.feet),
            swing=record,
            label=label,
        )
        self.segments.append(seg)
        self.t = seg.t1
        self.body = seg.body_at(seg.t1)
        self.yaw = seg.yaw_at(seg.t1)
        self.feet = seg.feet_at(seg.t1)
        return seg

    def state(self) -> RobotState:
        return RobotState(body=self.body, yaw=self.yaw, feet=dict(self.feet))

    def build(self) -> Timeline:
        return Timeline(self.initial_state, self.segments)


def mirror_vec(v: Vec3) -> Vec3:
    return (v[0], -v[1], v[2])


def mirror_state(state: RobotState) -> RobotState:
    feet = {MIRROR_LEG[leg]: mirror_vec(p) for leg, p in state.feet.items()}
    support = {MIRROR_LEG[leg]: s for leg, s in state.support.items()}
    return RobotState(
        body=mirror_vec(state.body), yaw=-state.yaw, feet=feet, support=support
    )


def mirror_timeline(timeline: Timeline) -> Timeline:
    """Reflect a timeline across the world x-z plane, relabeling legs."""
    segs = []
    for seg in timeline.segments:
        swing = None
        if seg.swing is not None:
            rec = seg.swing
            swing = SwingRecord(
                leg=MIRROR_LEG[rec.leg],
                spec=replace(rec.spec, y_f=-rec.spec.y_f),
                start=mirror_vec(rec.start),
                target=mirror_vec(rec.target),
                mode=rec.mode,
            )
        segs.append(
            Segment(
                t0=seg.t0,
                t1=seg.t1,
                velocity=mirror_vec(seg.velocity),
                yaw_rate=-seg.yaw_rate,
                body0=mirror_vec(seg.body0),
                yaw0=-seg.yaw0,
                feet0={MIRROR_LEG[leg]: mirror_vec(p) for leg, p in seg.feet0.items()},
                swing=swing,
                label=seg.label,
            )
        )
    return Timeline(mirror_state(timeline.initial_state), segs)
