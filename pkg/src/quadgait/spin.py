"""Spinning gait: rotation in place about the body center.

All four feet travel on one circle of radius rho = sqrt(p_x^2 + p_y^2)/2
through the workspace centers. Each leg owns the maximal arc of that circle
that fits inside its workspace rectangle; per cycle the body rotates while
each foot drifts (in the body frame) from the leading end of its arc to the
trailing end, then swings across the chord back to the leading end. The lift
order for a counterclockwise spin visits the corners clockwise when seen
from above: left rear, right rear, right front, left front. A clockwise
cycle is the left-right mirror image.

The arc is computed for the first-quadrant (left-front) leg and mapped to
the other quadrants by reflection. When the circle leaves the rectangle
through its two horizontal edges, closed forms give the arc endpoints;
otherwise exact circle/edge intersection does (with the stock robot the
circle exits through a vertical edge, so the general path is the one that
matters).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .errors import InfeasiblePlan
from .model import (
    LEG_IDS,
    LEG_LEFT_FRONT,
    LEG_LEFT_REAR,
    LEG_RIGHT_FRONT,
    LEG_RIGHT_REAR,
    MIRROR_LEG,
    FootholdConfig,
    RobotModel,
    RobotState,
    body_to_world,
    world_to_body,
)
from .swing import make_swing_spec
from .terrain import FlatTerrain, Terrain
from .timeline import Timeline, TimelineBuilder, mirror_state, mirror_timeline
from .wave import GaitParams

SPIN_SEQUENCE_CCW = (1, 2, 3, 4)

_TOL = 1e-9


@dataclass(frozen=True)
class SpinGeometry:
    rho: float
    delta: float
    gamma: float
    phi: float
    s_x: float
    s_y: float
    closed_form: bool

    def arc_point(self, angle: float) -> Tuple[float, float]:
        return (self.rho * math.cos(angle), self.rho * math.sin(angle))


def _first_quadrant_rect(model: RobotModel) -> Tuple[float, float, float, float]:
    cx, cy = model.p_x / 2.0, model.p_y / 2.0
    hx, hy = model.r_x / 2.0, model.r_y / 2.0
    return (cx - hx, cx + hx, cy - hy, cy + hy)


def spin_geometry(model: RobotModel) -> SpinGeometry:
    """Arc and chord of the spinning gait for the first-quadrant leg."""
    rho = math.hypot(model.p_x, model.p_y) / 2.0
    x_min, x_max, y_min, y_max = _first_quadrant_rect(model)

    # Closed forms for the case where the circle crosses both horizontal
    # edges inside the rectangle's x-range.
    rad_lo = rho * rho - y_min * y_min
    rad_hi = rho * rho - y_max * y_max
    if rad_lo > 0.0 and rad_hi > 0.0:
        x_lo = math.sqrt(rad_lo)
        x_hi = math.sqrt(rad_hi)
        if x_min - _TOL <= x_hi <= x_max + _TOL and x_min - _TOL <= x_lo <= x_max + _TOL:
            delta = math.atan2(y_min, x_lo)
            gamma = math.atan2(x_hi, y_max)
            phi = math.pi / 2.0 - (delta + gamma)
            _check_phi(phi)
            return SpinGeometry(
                rho=rho,
                delta=delta,
                gamma=gamma,
                phi=phi,
                s_x=x_hi - x_lo,
                s_y=y_max - y_min,
                closed_form=True,
            )

    # General case: exact circle/edge intersections bracketing the workspace
    # center's polar angle.
    angles = []
    for x_edge in (x_min, x_max):
        rad = rho * rho - x_edge * x_edge
        if rad >= 0.0:
            for y in (math.sqrt(rad), -math.sqrt(rad)):
                if y_min - _TOL <= y <= y_max + _TOL:
                    angles.append(math.atan2(y, x_edge))
    for y_edge in (y_min, y_max):
        rad = rho * rho - y_edge * y_edge
        if rad >= 0.0:
            for x in (math.sqrt(rad), -math.sqrt(rad)):
                if x_min - _TOL <= x <= x_max + _TOL:
                    angles.append(math.atan2(y_edge, x))
    if not angles:
        raise InfeasiblePlan("the foot circle misses the leg workspace")
    theta_c = math.atan2(model.p_y / 2.0, model.p_x / 2.0)
    lower = [a for a in angles if a <= theta_c + _TOL]
    upper = [a for a in angles if a >= theta_c - _TOL]
    if not lower or not upper:
        raise InfeasiblePlan("the foot circle misses the leg workspace")
    theta_lo = max(lower)
    theta_hi = min(upper)
    phi = theta_hi - theta_lo
    _check_phi(phi)
    ax, ay = rho * math.cos(theta_lo), rho * math.sin(theta_lo)
    bx, by = rho * math.cos(theta_hi), rho * math.sin(theta_hi)
    return SpinGeometry(
        rho=rho,
        delta=theta_lo,
        gamma=math.pi / 2.0 - theta_lo - phi,
        phi=phi,
        s_x=bx - ax,
        s_y=by - ay,
        closed_form=False,
    )


def _check_phi(phi: float) -> None:
    if phi <= _TOL:
        raise InfeasiblePlan("spin arc is degenerate (phi ~ 0)")
    if phi >= math.pi / 2.0:
        raise InfeasiblePlan("spin arc exceeds a quarter turn; geometry unsupported")


def body_rotation_swing(params: GaitParams, geo: SpinGeometry) -> float:
    """Body rotation during one swing interval."""
    return (1.0 / params.beta - 1.0) * geo.phi


def body_rotation_support(params: GaitParams, geo: SpinGeometry) -> float:
    """Body rotation during one all-support interval."""
    return (2.0 - 3.0 / (2.0 * params.beta)) * geo.phi


def leg_arc(geo: SpinGeometry, leg: int) -> Tuple[float, float]:
    """(trailing, leading) polar angles of the leg's arc for a ccw spin."""
    lo, hi = geo.delta, geo.delta + geo.phi
    if leg == LEG_LEFT_FRONT:
        return lo, hi
    if leg == LEG_RIGHT_FRONT:
        return -hi, -lo
    if leg == LEG_LEFT_REAR:
        return math.pi - hi, math.pi - lo
    return math.pi + lo, math.pi + hi


def _arc_fractions(beta: float) -> Dict[int, float]:
    """Fraction of the stroke each foot has left to drift at cycle start."""
    return {
        1: 0.0,
        2: (2.0 * beta - 1.0) / (2.0 * beta),
        3: 1.0 / (2.0 * beta),
        4: 1.0,
    }


def desired_spin_config(
    model: RobotModel, params: GaitParams, direction: str = "ccw"
) -> FootholdConfig:
    """Foot placement at a spin cycle start: each foot positioned on its arc
    so its path margin reaches zero exactly at its lift time."""
    _check_direction(direction)
    geo = spin_geometry(model)
    fracs = _arc_fractions(params.beta)
    config = {}
    for leg in LEG_IDS:
        lo, _ = leg_arc(geo, leg)
        angle = lo + fracs[leg] * geo.phi
        x, y = geo.arc_point(angle)
        config[leg] = (x, y, -model.body_height)
    if direction == "cw":
        config = {
            MIRROR_LEG[leg]: (p[0], -p[1], p[2]) for leg, p in config.items()
        }
    return config


def _check_direction(direction: str) -> None:
    if direction not in ("ccw", "cw"):
        raise ValueError("direction must be 'ccw' or 'cw'")


def run_spin_cycle(
    model: RobotModel,
    params: GaitParams,
    geo: SpinGeometry,
    builder: TimelineBuilder,
    arc_frac: float = 1.0,
    label: str = "spin",
) -> None:
    """Append one ccw spin cycle (optionally with a scaled-down arc).

    A scaled cycle (0 < arc_frac <= 1) sweeps phi' = arc_frac * phi per leg
    but keeps the full cycle time, so it starts and ends at the same desired
    configuration while rotating the body by phi'/beta.
    """
    if not 0.0 < arc_frac <= 1.0 + 1e-12:
        raise InfeasiblePlan("arc_frac must lie in (0, 1]")
    beta = params.beta
    T = params.cycle_time
    phi = geo.phi
    phi_p = min(arc_frac, 1.0) * phi
    omega = phi_p / (beta * T)
    t_sw = params.swing_time
    support = (4.0 * beta - 3.0) * T / 2.0
    fracs = _arc_fractions(beta)

    desired = desired_spin_config(model, params, "ccw")
    for leg in LEG_IDS:
        local = world_to_body(builder.body, builder.yaw, builder.feet[leg])
        if (
            abs(local[0] - desired[leg][0]) > 1e-6
            or abs(local[1] - desired[leg][1]) > 1e-6
        ):
            raise InfeasiblePlan(
                f"spin cycle must start from its desired configuration (leg {leg})"
            )

    def swing(leg: int) -> None:
        lo, _ = leg_arc(geo, leg)
        lift = lo + fracs[leg] * (phi - phi_p)
        land = lift + phi_p
        ax, ay = geo.arc_point(lift)
        bx, by = geo.arc_point(land)
        spec = make_swing_spec(bx - ax, by - ay, 0.0, t_sw, params.delta_h, ())
        builder.advance(t_sw, (0.0, 0.0, 0.0), omega, (leg, spec, "body"), label)

    swing(1)
    builder.advance(support, (0.0, 0.0, 0.0), omega, None, label)
    swing(2)
    swing(3)
    builder.advance(support, (0.0, 0.0, 0.0), omega, None, label)
    swing(4)


def spin_start_state(
    model: RobotModel,
    params: GaitParams,
    direction: str = "ccw",
    body_xy=(0.0, 0.0),
    yaw: float = 0.0,
    terrain: Optional[Terrain] = None,
) -> RobotState:
    """World state with feet at the spin's desired configuration."""
    terrain = terrain if terrain is not None else FlatTerrain(0.0)
    config = desired_spin_config(model, params, direction)
    ground = terrain.height_at(body_xy[0], body_xy[1])
    body = (body_xy[0], body_xy[1], ground + model.body_height)
    feet = {}
    for leg in LEG_IDS:
        wx, wy, _ = body_to_world(body, yaw, config[leg])
        feet[leg] = (wx, wy, terrain.height_at(wx, wy))
    return RobotState(body=body, yaw=yaw, feet=feet)


def plan_spin_cycle(
    model: RobotModel,
    params: GaitParams,
    direction: str = "ccw",
    start_state: Optional[RobotState] = None,
) -> Timeline:
    """One full spin cycle from the desired configuration."""
    return plan_spin_cycles(model, params, [1.0], direction, start_state)


def spin_cycle_fractions(
    geo: SpinGeometry, params: GaitParams, target_yaw: float
) -> list:
    """Arc fractions of the cycles needed to rotate by target_yaw.

    Whole cycles rotate phi/beta each; any remainder becomes one scaled
    cycle, so the fractions sum to target_yaw * beta / phi exactly.
    """
    if target_yaw <= 0.0:
        raise InfeasiblePlan("target_yaw must be positive")
    per_cycle = geo.phi / params.beta
    n_full = int(math.floor(target_yaw / per_cycle + 1e-12))
    remainder = target_yaw - n_full * per_cycle
    fracs = [1.0] * n_full
    if remainder > 1e-12:
        fracs.append(remainder * params.beta / geo.phi)
    return fracs


def plan_spin(
    model: RobotModel,
    params: GaitParams,
    target_yaw: float,
    direction: str = "ccw",
    start_state: Optional[RobotState] = None,
) -> Timeline:
    """Spin by target_yaw (positive angle; direction picks the sense)."""
    geo = spin_geometry(model)
    fracs = spin_cycle_fractions(geo, params, target_yaw)
    return plan_spin_cycles(model, params, fracs, direction, start_state)


def plan_spin_cycles(
    model: RobotModel,
    params: GaitParams,
    arc_fracs,
    direction: str = "ccw",
    start_state: Optional[RobotState] = None,
) -> Timeline:
    _check_direction(direction)
    if start_state is None:
        start_state = spin_start_state(model, params, direction)
    if direction == "cw":
        ccw = plan_spin_cycles(
            model, params, arc_fracs, "ccw", mirror_state(start_state)
        )
        return mirror_timeline(ccw)
    geo = spin_geometry(model)
    builder = TimelineBuilder(start_state, params.t_0)
    for frac in arc_fracs:
        run_spin_cycle(model, params, geo, builder, frac)
    return builder.build()
