"""Wave-gait planning: level walking and stair ascent/descent.

The gait swings legs in the order 1, 4, 2, 3 (left rear, left front, right
rear, right front) at quarter-cycle phase offsets while the body translates
at the constant speed stroke/(beta*T). Each foot lands at the front of its
stroke window and drifts to the rear of the window during support, lifting
when the window is exhausted. Swing targets follow the terrain: the landing
height is the tread height under the landing point and the body's vertical
rate over each quarter cycle is that quarter's swing rise divided by the
cycle time, which reduces to a constant-slope climb on a uniform staircase
and to zero on level ground.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import InfeasiblePlan
from .model import (
    LEG_IDS,
    FootholdConfig,
    RobotModel,
    RobotState,
    rot_z,
    world_to_body,
)
from .swing import make_swing_spec
from .terrain import FlatTerrain, StairProfile, Terrain, crossings
from .timeline import Timeline, TimelineBuilder

WAVE_SEQUENCE = (1, 4, 2, 3)

# Fraction of the cycle at which each leg lifts.
LIFT_PHASE = {1: 0.0, 4: 0.25, 2: 0.5, 3: 0.75}

_TOL = 1e-9


@dataclass(frozen=True)
class GaitParams:
    """Shared gait parameters.

    stroke defaults to the stair minimum 2 * stair_width * beta when unset,
    which on stairs advances each foot exactly two treads per cycle.
    """

    beta: float = 0.75
    cycle_time: float = 8.0
    stroke: Optional[float] = None
    delta_h: float = 0.02
    stair_width: float = 0.5
    stair_height: float = 0.13
    t_0: float = 0.0

    def __post_init__(self) -> None:
        if not (0.75 <= self.beta < 1.0):
            raise ValueError("beta must lie in [3/4, 1)")
        if self.cycle_time <= 0.0:
            raise ValueError("cycle_time must be positive")
        if self.delta_h <= 0.0:
            raise ValueError("delta_h must be positive")
        if self.stair_width <= 0.0 or self.stair_height <= 0.0:
            raise ValueError("stair dimensions must be positive")
        if self.stroke is not None and self.stroke <= 0.0:
            raise ValueError("stroke must be positive")
        if self.t_0 < 0.0:
            raise ValueError("t_0 must be nonnegative")

    @property
    def stroke_value(self) -> float:
        if self.stroke is not None:
            return self.stroke
        return 2.0 * self.stair_width * self.beta

    @property
    def swing_time(self) -> float:
        return (1.0 - self.beta) * self.cycle_time


def footprint_spacing(params: GaitParams) -> float:
    """Ground distance between successive footprints of one leg: stroke/beta."""
    return params.stroke_value / params.beta


def min_stroke(params: GaitParams) -> tuple:
    """Minimum (horizontal, vertical) stroke for a two-treads-per-cycle climb."""
    return (
        2.0 * params.stair_width * params.beta,
        2.0 * params.stair_height * params.beta,
    )


def check_stroke(model: RobotModel, params: GaitParams, stairs: bool = False) -> None:
    stroke = params.stroke_value
    if stroke > model.r_x + _TOL:
        raise InfeasiblePlan(
            f"stroke {stroke:.6g} exceeds the workspace extent r_x={model.r_x:.6g}"
        )
    if stairs:
        horiz, vert = min_stroke(params)
        if stroke < horiz - _TOL:
            raise InfeasiblePlan(
                f"stroke {stroke:.6g} is below the stair minimum {horiz:.6g}"
            )
        if model.r_z < vert - _TOL:
            raise InfeasiblePlan(
                f"vertical workspace {model.r_z:.6g} is below the stair minimum {vert:.6g}"
            )


def desired_wave_config(model: RobotModel, params: GaitParams) -> FootholdConfig:
    """Foot placement at a cycle start: each leg reaches the rear of its
    stroke window exactly at its lift phase under constant body speed."""
    check_stroke(model, params)
    stroke = params.stroke_value
    spacing = footprint_spacing(params)
    config = {}
    for leg in LEG_IDS:
        cx, cy, cz = model.workspace_center(leg)
        x = cx - stroke / 2.0 + spacing * LIFT_PHASE[leg]
        config[leg] = (x, cy, -model.body_height)
    margin = _config_xy_margin(model, config)
    if margin < -_TOL:
        raise InfeasiblePlan("desired wave configuration exits a workspace cube")
    return config


def _config_xy_margin(model: RobotModel, config: FootholdConfig) -> float:
    worst = math.inf
    for leg in LEG_IDS:
        cx, cy, _ = model.workspace_center(leg)
        px, py, _ = config[leg]
        worst = min(
            worst,
            model.r_x / 2.0 - abs(px - cx),
            model.r_y / 2.0 - abs(py - cy),
        )
    return worst


def wave_start_state(
    model: RobotModel,
    params: GaitParams,
    terrain: Terrain,
    body_xy=(0.0, 0.0),
    yaw: float = 0.0,
) -> RobotState:
    """World state for a gait start: desired config xy, feet on the terrain,
    body at nominal height above the ground under its center."""
    config = desired_wave_config(model, params)
    ground = terrain.height_at(body_xy[0], body_xy[1])
    body = (body_xy[0], body_xy[1], ground + model.body_height)
    feet = {}
    for leg in LEG_IDS:
        lx, ly, _ = config[leg]
        wx, wy = rot_z(yaw, lx, ly)
        x, y = body_xy[0] + wx, body_xy[1] + wy
        feet[leg] = (x, y, terrain.height_at(x, y))
    return RobotState(body=body, yaw=yaw, feet=feet)


def run_wave_cycles(
    model: RobotModel,
    params: GaitParams,
    builder: TimelineBuilder,
    terrain: Terrain,
    n_cycles: int,
    label: str = "wave",
) -> None:
    """Append n_cycles of the wave gait to the builder.

    The builder's current feet must sit at the desired configuration
    (horizontally, in the body frame); landing heights come from the terrain.
    """
    if n_cycles < 0:
        raise ValueError("n_cycles must be >= 0")
    if n_cycles == 0:
        return
    check_stroke(model, params)
    desired = desired_wave_config(model, params)
    for leg in LEG_IDS:
        local = world_to_body(builder.body, builder.yaw, builder.feet[leg])
        if (
            abs(local[0] - desired[leg][0]) > 1e-6
            or abs(local[1] - desired[leg][1]) > 1e-6
        ):
            raise InfeasiblePlan(
                f"wave gait must start from its desired configuration (leg {leg})"
            )

    T = params.cycle_time
    stroke = params.stroke_value
    spacing = footprint_spacing(params)
    t_sw = params.swing_time
    quarter = T / 4.0
    yaw = builder.yaw
    fwd = rot_z(yaw, 1.0, 0.0)
    speed = spacing / T

    for _ in range(n_cycles):
        cycle_body = builder.body
        for leg in WAVE_SEQUENCE:
            phase = LIFT_PHASE[leg]
            t_land = (phase * T) + t_sw
            cx, cy, _ = model.workspace_center(leg)
            along = cx + stroke / 2.0
            adv = speed * t_land
            lx, ly = rot_z(yaw, along, cy)
            land_x = cycle_body[0] + fwd[0] * adv + lx
            land_y = cycle_body[1] + fwd[1] * adv + ly
            land_z = terrain.height_at(land_x, land_y)
            lift = builder.feet[leg]
            x_f, y_f, z_f = land_x - lift[0], land_y - lift[1], land_z - lift[2]
            cross = [
                (d, z - lift[2])
                for d, z in crossings(terrain, (lift[0], lift[1]), (land_x, land_y))
            ]
            spec = make_swing_spec(x_f, y_f, z_f, t_sw, params.delta_h, cross)
            velocity = (fwd[0] * speed, fwd[1] * speed, z_f / T)
            builder.advance(t_sw, velocity, 0.0, (leg, spec, "world"), label)
            gap = quarter - t_sw
            if gap > 1e-12:
                builder.advance(gap, velocity, 0.0, None, label)


def plan_level_walk(
    model: RobotModel,
    params: GaitParams,
    n_cycles: int,
    terrain: Optional[Terrain] = None,
    start_state: Optional[RobotState] = None,
) -> Timeline:
    """Wave gait over level ground (or any terrain the caller supplies)."""
    terrain = terrain if terrain is not None else FlatTerrain(0.0)
    if start_state is None:
        start_state = wave_start_state(model, params, terrain)
    builder = TimelineBuilder(start_state, params.t_0)
    run_wave_cycles(model, params, builder, terrain, n_cycles)
    return builder.build()


def _stair_start_x(model: RobotModel, params: GaitParams, stairs: StairProfile) -> float:
    """Starting body abscissa for a stair gait: whole cycles before the first
    riser, keeping the landing pattern aligned mid-tread with the risers."""
    stroke = params.stroke_value
    spacing = footprint_spacing(params)
    front = model.p_x / 2.0 - stroke / 2.0 + spacing * 0.75
    clearance = front + stairs.width / 4.0
    k = max(1, math.ceil(clearance / spacing))
    return stairs.start - k * spacing


def cycles_to_clear(
    model: RobotModel, params: GaitParams, stairs: StairProfile, x0: float
) -> int:
    """Cycles needed for the rearmost foot to pass the last riser from x0."""
    spacing = footprint_spacing(params)
    rear = model.p_x / 2.0 + params.stroke_value / 2.0
    need = stairs.top() + rear + stairs.width / 4.0 - x0
    return max(0, math.ceil(need / spacing))


def plan_stair_ascent(
    model: RobotModel,
    params: GaitParams,
    stairs: StairProfile,
    n_cycles: Optional[int] = None,
    start_state: Optional[RobotState] = None,
) -> Timeline:
    """Wave gait up an ascending flight, starting on the flat approach."""
    if not stairs.ascending:
        raise InfeasiblePlan("plan_stair_ascent needs an ascending profile")
    return _plan_stairs(model, params, stairs, n_cycles, start_state)


def plan_stair_descent(
    model: RobotModel,
    params: GaitParams,
    stairs: StairProfile,
    n_cycles: Optional[int] = None,
    start_state: Optional[RobotState] = None,
) -> Timeline:
    """Wave gait down a descending flight; the mirror of the ascent."""
    if stairs.ascending:
        raise InfeasiblePlan("plan_stair_descent needs a descending profile")
    return _plan_stairs(model, params, stairs, n_cycles, start_state)


def _plan_stairs(
    model: RobotModel,
    params: GaitParams,
    stairs: StairProfile,
    n_cycles: Optional[int],
    start_state: Optional[RobotState],
) -> Timeline:
    check_stroke(model, params, stairs=True)
    if start_state is None:
        x0 = _stair_start_x(model, params, stairs)
        xy = (x0, 0.0) if stairs.axis == "x" else (0.0, x0)
        yaw = 0.0 if stairs.axis == "x" else math.pi / 2.0
        start_state = wave_start_state(model, params, stairs, xy, yaw)
    if n_cycles is None:
        along = start_state.body[0] if stairs.axis == "x" else start_state.body[1]
        n_cycles = cycles_to_clear(model, params, stairs, along)
    builder = TimelineBuilder(start_state, params.t_0)
    run_wave_cycles(model, params, builder, stairs, n_cycles)
    return builder.build()
