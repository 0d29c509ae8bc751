"""Kinematic replay of timelines and the stock stair-spin-stair scenario.

The simulator samples a timeline on a fixed dt grid with every segment
boundary inserted exactly, so lift and touchdown states are captured
bit-exactly. At each sample it records the robot state and the stability
margin and checks the physical invariants (margin >= 0, support feet inside
their workspaces, swing feet above the terrain, no support-foot slip). Violations
are logged in the trace, never raised: replaying a deliberately bad plan is
a supported use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .errors import InfeasiblePlan
from .model import (
    LEG_IDS,
    RobotModel,
    RobotState,
    default_stance,
    rot_z,
    workspace_clearance,
)
from .spin import run_spin_cycle, spin_cycle_fractions, spin_geometry
from .stability import stability_margin
from .terrain import CompositeTerrain, FlatTerrain, StairProfile, Terrain
from .timeline import (
    Timeline,
    TimelineBuilder,
    concatenate,
    mirror_state,
    mirror_timeline,
)
from .transition import (
    plan_reset_transition,
    plan_spin_transition,
    plan_wave_transition,
    run_transition,
    state_config,
)
from .wave import GaitParams, check_stroke, cycles_to_clear, footprint_spacing, run_wave_cycles

_SNAP = 1e-9

# Order in which event kinds sharing a timestamp are logged.
_EVENT_RANK = {"touchdown": 0, "boundary": 1, "lift": 2, "violation": 3}


@dataclass(frozen=True)
class Event:
    t: float
    kind: str  # "lift" | "touchdown" | "boundary" | "violation"
    leg: Optional[int] = None
    detail: str = ""


@dataclass
class SimTrace:
    """Sampled replay of a timeline.

    Arrays are aligned: row i of body/yaw/feet/support/margin describes the
    state at t[i]. Feet rows are ordered by leg id 1..4.
    """

    dt: float
    t: np.ndarray  # (n,)
    body: np.ndarray  # (n, 3)
    yaw: np.ndarray  # (n,)
    feet: np.ndarray  # (n, 4, 3)
    support: np.ndarray  # (n, 4) bool
    margin: np.ndarray  # (n,)
    events: List[Event] = field(default_factory=list)
    phases: List[Tuple[str, float, float]] = field(default_factory=list)

    @property
    def n_samples(self) -> int:
        return len(self.t)

    @property
    def violations(self) -> List[Event]:
        return [e for e in self.events if e.kind == "violation"]

    @property
    def min_margin(self) -> float:
        return float(self.margin.min())

    def state(self, i: int) -> RobotState:
        feet = {leg: tuple(self.feet[i, j]) for j, leg in enumerate(LEG_IDS)}
        support = {leg: bool(self.support[i, j]) for j, leg in enumerate(LEG_IDS)}
        return RobotState(
            body=tuple(self.body[i]),
            yaw=float(self.yaw[i]),
            feet=feet,
            support=support,
        )

    def phase_of(self, t: float) -> str:
        """Label of the phase containing t (boundary instants belong to the
        later phase, matching segment ownership of boundary samples)."""
        if not self.phases:
            return ""
        label = self.phases[0][0]
        for name, p0, _ in self.phases:
            if p0 <= t:
                label = name
            else:
                break
        return label


def _sample_times(timeline: Timeline, dt: float) -> List[float]:
    """Fixed dt grid over the timeline with exact boundary times spliced in."""
    t0, t1 = timeline.t_start, timeline.t_end
    n = int(math.floor((t1 - t0) / dt + _SNAP))
    times = [t0 + k * dt for k in range(n + 1)]
    for b in sorted(set(timeline.boundaries())):
        idx = int(round((b - t0) / dt))
        if 0 <= idx < len(times) and abs(times[idx] - b) <= _SNAP:
            times[idx] = b
            continue
        lo, hi = 0, len(times)
        while lo < hi:
            mid = (lo + hi) // 2
            if times[mid] < b:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(times) and abs(times[lo] - b) <= _SNAP:
            times[lo] = b
        elif lo > 0 and abs(times[lo - 1] - b) <= _SNAP:
            times[lo - 1] = b
        else:
            times.insert(lo, b)
    return times


def _merge_phases(timeline: Timeline) -> List[Tuple[str, float, float]]:
    phases: List[Tuple[str, float, float]] = []
    for seg in timeline.segments:
        if phases and phases[-1][0] == seg.label:
            name, p0, _ = phases[-1]
            phases[-1] = (name, p0, seg.t1)
        else:
            phases.append((seg.label, seg.t0, seg.t1))
    return phases


def simulate(
    timeline: Timeline,
    model: RobotModel,
    terrain: Optional[Terrain] = None,
    dt: float = 1e-3,
) -> SimTrace:
    """Replay a timeline at fixed step dt and validate every sample.

    Body poses integrate exactly (each segment has constant velocity and yaw
    rate, evaluated from the segment anchor, so there is no accumulation
    error). Violations are recorded as events; only a malformed timeline
    raises, and that happens at construction, not here.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    terrain = terrain if terrain is not None else FlatTerrain(0.0)

    if not timeline.segments:
        state = timeline.initial_state
        return SimTrace(
            dt=dt,
            t=np.array([timeline.t_start]),
            body=np.array([state.body]),
            yaw=np.array([state.yaw]),
            feet=np.array([[state.feet[leg] for leg in LEG_IDS]]),
            support=np.array([[state.support[leg] for leg in LEG_IDS]]),
            margin=np.array([stability_margin(state)]),
            events=[],
            phases=[],
        )

    segs = timeline.segments
    times = _sample_times(timeline, dt)
    n = len(times)

    t_arr = np.empty(n)
    body_arr = np.empty((n, 3))
    yaw_arr = np.empty(n)
    feet_arr = np.empty((n, 4, 3))
    support_arr = np.empty((n, 4), dtype=bool)
    margin_arr = np.empty(n)

    events: List[Event] = []
    for seg in segs:
        events.append(Event(seg.t0, "boundary", None, seg.label))
        if seg.swing is not None:
            events.append(Event(seg.t0, "lift", seg.swing.leg))
            events.append(Event(seg.t1, "touchdown", seg.swing.leg))
    events.append(Event(timeline.t_end, "boundary", None, "end"))

    idx = 0
    prev_feet = None
    prev_support = None
    for i, t in enumerate(times):
        while idx + 1 < len(segs) and segs[idx + 1].t0 <= t:
            idx += 1
        seg = segs[idx]
        state = seg.state_at(t)
        margin = stability_margin(state)

        t_arr[i] = t
        body_arr[i] = state.body
        yaw_arr[i] = state.yaw
        for j, leg in enumerate(LEG_IDS):
            feet_arr[i, j] = state.feet[leg]
            support_arr[i, j] = state.support[leg]
        margin_arr[i] = margin

        if margin < 0.0:
            events.append(
                Event(t, "violation", None, f"stability margin {margin:.3e}")
            )
        for j, leg in enumerate(LEG_IDS):
            # The workspace cube constrains feet on the ground (a support
            # foot drifts through the cube and must lift before exiting);
            # a foot in flight is checked against the terrain instead.
            if not support_arr[i, j]:
                continue
            c = workspace_clearance(model, state, leg)
            if c < -_SNAP:
                events.append(
                    Event(
                        t,
                        "violation",
                        leg,
                        f"leg {leg} outside its workspace by {-c:.3e}",
                    )
                )
        if seg.swing is not None and seg.t0 < t < seg.t1:
            leg = seg.swing.leg
            fx, fy, fz = state.feet[leg]
            gap = fz - terrain.height_at(fx, fy)
            if gap < -_SNAP:
                events.append(
                    Event(t, "violation", leg, f"leg {leg} below terrain by {-gap:.3e}")
                )
        if prev_feet is not None:
            for j, leg in enumerate(LEG_IDS):
                if not (prev_support[j] and support_arr[i, j]):
                    continue
                slip = max(abs(a - b) for a, b in zip(prev_feet[j], feet_arr[i, j]))
                if slip > _SNAP:
                    events.append(
                        Event(t, "violation", leg, f"leg {leg} slipped {slip:.3e}")
                    )
        prev_feet = feet_arr[i]
        prev_support = support_arr[i]

    events.sort(key=lambda e: (e.t, _EVENT_RANK[e.kind]))
    return SimTrace(
        dt=dt,
        t=t_arr,
        body=body_arr,
        yaw=yaw_arr,
        feet=feet_arr,
        support=support_arr,
        margin=margin_arr,
        events=events,
        phases=_merge_phases(timeline),
    )


def margin_trace(trace: SimTrace) -> np.ndarray:
    """The aligned (t, margin) series, one row per sample."""
    return np.column_stack((trace.t, trace.margin))


def build_case_study(
    model: RobotModel,
    params: GaitParams,
    stairs: StairProfile,
    level_cycles: int = 2,
    spin_target_deg: float = 90.0,
    spin_direction: str = "ccw",
) -> Tuple[Timeline, Terrain]:
    """Assemble the full scenario timeline and its terrain.

    The robot starts at the origin facing +x with every foot at its
    workspace center, shifts into the forward gait, walks level_cycles
    cycles, climbs a flight placed level_cycles strides ahead, parks its
    feet, shifts into the spinning gait, turns in place, parks again, shifts
    back to the forward gait, and walks down a matching flight laid along
    the new heading. The stairs argument supplies tread width, riser height,
    and riser count; both flights are positioned by this planner so the
    landing pattern stays mid-tread.
    """
    if level_cycles < 1:
        raise InfeasiblePlan("the scenario needs at least one level cycle")
    if abs(stairs.width - params.stair_width) > _SNAP or abs(
        stairs.height - params.stair_height
    ) > _SNAP:
        raise ValueError("stair profile does not match the gait parameters")
    if spin_direction not in ("ccw", "cw"):
        raise ValueError("direction must be 'ccw' or 'cw'")
    check_stroke(model, params, stairs=True)

    spacing = footprint_spacing(params)
    sign = 1.0 if spin_direction == "ccw" else -1.0
    target = math.radians(spin_target_deg)
    heading = rot_z(sign * target, 1.0, 0.0)
    if abs(heading[0]) > _SNAP or abs(abs(heading[1]) - 1.0) > _SNAP:
        raise InfeasiblePlan(
            "the scenario needs the spin to end on the +y or -y heading"
        )
    sense = 1 if heading[1] > 0.0 else -1

    extent = model.p_x / 2.0 + params.stroke_value / 2.0
    clearance = extent + stairs.width / 4.0
    ascent = StairProfile(
        start=level_cycles * spacing,
        count=stairs.count,
        width=stairs.width,
        height=stairs.height,
        ascending=True,
        axis="x",
    )
    if ascent.start < clearance - _SNAP:
        raise InfeasiblePlan("the level approach is too short to clear the stairs")
    n_total = cycles_to_clear(model, params, ascent, 0.0)
    n_climb = n_total - level_cycles

    drop_lead = max(1, math.ceil((clearance - _SNAP) / spacing))
    descent = StairProfile(
        start=sense * drop_lead * spacing,
        count=stairs.count,
        width=stairs.width,
        height=stairs.height,
        ascending=False,
        axis="y",
        sense=sense,
    )
    n_down = math.ceil(
        (drop_lead * spacing + (stairs.count - 1) * stairs.width + clearance)
        / spacing
    )
    terrain = CompositeTerrain([ascent, descent])

    timelines: List[Timeline] = []
    state = default_stance(model)
    t = params.t_0

    def phase(fn) -> None:
        nonlocal state, t
        builder = TimelineBuilder(state, t)
        fn(builder)
        tl = builder.build()
        timelines.append(tl)
        state = tl.final_state
        t = tl.t_end

    phase(
        lambda b: run_transition(
            model, params, b, plan_wave_transition(model, params), terrain
        )
    )
    phase(lambda b: run_wave_cycles(model, params, b, terrain, level_cycles, "walk"))
    phase(lambda b: run_wave_cycles(model, params, b, terrain, n_climb, "climb"))
    phase(
        lambda b: run_transition(
            model,
            params,
            b,
            plan_reset_transition(model, state_config(model, state)),
            terrain,
        )
    )
    phase(
        lambda b: run_transition(
            model,
            params,
            b,
            plan_spin_transition(
                model, params, spin_direction, state_config(model, state)
            ),
            terrain,
        )
    )

    geo = spin_geometry(model)
    fracs = spin_cycle_fractions(geo, params, target)
    if spin_direction == "ccw":
        builder = TimelineBuilder(state, t)
        for frac in fracs:
            run_spin_cycle(model, params, geo, builder, frac)
        spin_tl = builder.build()
    else:
        builder = TimelineBuilder(mirror_state(state), t)
        for frac in fracs:
            run_spin_cycle(model, params, geo, builder, frac)
        spin_tl = mirror_timeline(builder.build())
    timelines.append(spin_tl)
    state = spin_tl.final_state
    t = spin_tl.t_end

    phase(
        lambda b: run_transition(
            model,
            params,
            b,
            plan_reset_transition(model, state_config(model, state)),
            terrain,
        )
    )
    phase(
        lambda b: run_transition(
            model,
            params,
            b,
            plan_wave_transition(model, params, state_config(model, state)),
            terrain,
        )
    )
    phase(lambda b: run_wave_cycles(model, params, b, terrain, n_down, "descend"))

    return concatenate(timelines), terrain


def run_case_study(
    model: RobotModel,
    params: GaitParams,
    stairs: StairProfile,
    level_cycles: int = 2,
    spin_target_deg: float = 90.0,
    spin_direction: str = "ccw",
    dt: float = 1e-3,
) -> SimTrace:
    """Plan the full scenario and replay it at step dt."""
    timeline, terrain = build_case_study(
        model, params, stairs, level_cycles, spin_target_deg, spin_direction
    )
    return simulate(timeline, model, terrain, dt)
