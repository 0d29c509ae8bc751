"""Robot geometry: body frame, leg workspaces, and state containers.

The body frame has +x forward, +y left, +z up, origin at the body center
(which is also the center of mass). Legs are numbered clockwise when seen
from above, starting at the left-rear corner:

    1 = left rear,  2 = right rear,  3 = right front,  4 = left front.

Each leg owns an axis-aligned cubic workspace of half-extents
(r_x/2, r_y/2, r_z/2) centered at (+-p_x/2, +-p_y/2, -body_height) in the
body frame. Foot positions are world-frame 3-vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Dict, Tuple

from .errors import InfeasibleState

Vec3 = Tuple[float, float, float]

LEG_LEFT_REAR = 1
LEG_RIGHT_REAR = 2
LEG_RIGHT_FRONT = 3
LEG_LEFT_FRONT = 4
LEG_IDS = (LEG_LEFT_REAR, LEG_RIGHT_REAR, LEG_RIGHT_FRONT, LEG_LEFT_FRONT)

# Signs of the workspace-center offsets (x, y) per leg.
_CORNER_SIGNS: Dict[int, Tuple[int, int]] = {
    LEG_LEFT_REAR: (-1, 1),
    LEG_RIGHT_REAR: (-1, -1),
    LEG_RIGHT_FRONT: (1, -1),
    LEG_LEFT_FRONT: (1, 1),
}

# Mirror across the body x-axis (swap left/right legs).
MIRROR_LEG: Dict[int, int] = {
    LEG_LEFT_REAR: LEG_RIGHT_REAR,
    LEG_RIGHT_REAR: LEG_LEFT_REAR,
    LEG_RIGHT_FRONT: LEG_LEFT_FRONT,
    LEG_LEFT_FRONT: LEG_RIGHT_FRONT,
}

_EPS = 1e-9


def rot_z(yaw: float, x: float, y: float) -> Tuple[float, float]:
    """Rotate (x, y) by yaw radians about +z."""
    c, s = math.cos(yaw), math.sin(yaw)
    return (c * x - s * y, s * x + c * y)


@dataclass(frozen=True)
class RobotModel:
    """Kinematic envelope of the quadruped.

    p_x, p_y: spacing between workspace centers along body x and y.
    r_x, r_y, r_z: full edge lengths of each cubic foot workspace.
    body_height: nominal height of the body center above the feet.
    """

    p_x: float
    p_y: float
    r_x: float
    r_y: float
    r_z: float
    body_height: float

    def __post_init__(self) -> None:
        for name in ("p_x", "p_y", "r_x", "r_y", "r_z", "body_height"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if self.r_x >= self.p_x:
            raise ValueError("r_x must be < p_x (front/rear workspaces overlap)")
        if self.r_y >= self.p_y:
            raise ValueError("r_y must be < p_y (left/right workspaces overlap)")

    def workspace_center(self, leg: int) -> Vec3:
        """Center of the leg's workspace cube, in the body frame."""
        sx, sy = _CORNER_SIGNS[leg]
        return (sx * self.p_x / 2.0, sy * self.p_y / 2.0, -self.body_height)

    def workspace_bounds(self, leg: int) -> Tuple[Vec3, Vec3]:
        """(lower, upper) corners of the leg's workspace cube, body frame."""
        cx, cy, cz = self.workspace_center(leg)
        hx, hy, hz = self.r_x / 2.0, self.r_y / 2.0, self.r_z / 2.0
        return ((cx - hx, cy - hy, cz - hz), (cx + hx, cy + hy, cz + hz))


@dataclass(frozen=True)
class RobotState:
    """World-frame snapshot: body position, yaw, foot positions, support flags."""

    body: Vec3
    yaw: float
    feet: Dict[int, Vec3]
    support: Dict[int, bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if sorted(self.feet) != list(LEG_IDS):
            raise ValueError("feet must map exactly legs 1..4")
        if not self.support:
            object.__setattr__(self, "support", {leg: True for leg in LEG_IDS})
        elif sorted(self.support) != list(LEG_IDS):
            raise ValueError("support must map exactly legs 1..4")

    def supporting_feet(self) -> Dict[int, Vec3]:
        return {leg: self.feet[leg] for leg in LEG_IDS if self.support[leg]}

    def with_foot(self, leg: int, pos: Vec3) -> "RobotState":
        feet = dict(self.feet)
        feet[leg] = pos
        return replace(self, feet=feet)


def body_to_world(body: Vec3, yaw: float, point: Vec3) -> Vec3:
    """Map a body-frame point to the world frame."""
    x, y = rot_z(yaw, point[0], point[1])
    return (body[0] + x, body[1] + y, body[2] + point[2])


def world_to_body(body: Vec3, yaw: float, point: Vec3) -> Vec3:
    """Map a world-frame point to the body frame."""
    dx, dy = point[0] - body[0], point[1] - body[1]
    x, y = rot_z(-yaw, dx, dy)
    return (x, y, point[2] - body[2])


def foot_offset(model: RobotModel, state: RobotState, leg: int) -> Vec3:
    """Foot position relative to its workspace center, in the body frame."""
    local = world_to_body(state.body, state.yaw, state.feet[leg])
    cx, cy, cz = model.workspace_center(leg)
    return (local[0] - cx, local[1] - cy, local[2] - cz)


def workspace_clearance(model: RobotModel, state: RobotState, leg: int) -> float:
    """Distance from the foot to the nearest face of its workspace cube.

    Positive inside, negative outside (by the exit depth).
    """
    ox, oy, oz = foot_offset(model, state, leg)
    half = (model.r_x / 2.0, model.r_y / 2.0, model.r_z / 2.0)
    return min(h - abs(o) for o, h in zip((ox, oy, oz), half))


def kinematic_margin(
    model: RobotModel, state: RobotState, leg: int, direction: Vec3
) -> float:
    """How far the foot can travel along a body-frame direction inside its cube.

    Returns the largest d >= 0 such that foot + d * direction stays inside the
    workspace; 0 when the foot already touches the face it is heading for.
    A foot outside the cube by more than 1e-9 raises InfeasibleState.
    """
    if workspace_clearance(model, state, leg) < -_EPS:
        raise InfeasibleState(f"leg {leg} foot lies outside its workspace")
    norm = math.sqrt(sum(c * c for c in direction))
    if norm == 0.0:
        raise ValueError("direction must be nonzero")
    offset = foot_offset(model, state, leg)
    half = (model.r_x / 2.0, model.r_y / 2.0, model.r_z / 2.0)
    d = math.inf
    for o, h, c in zip(offset, half, direction):
        c /= norm
        if c > 0.0:
            d = min(d, max(h - o, 0.0) / c)
        elif c < 0.0:
            d = min(d, max(h + o, 0.0) / -c)
    return d


def check_state(model: RobotModel, state: RobotState) -> float:
    """Min workspace clearance over all legs. Raises InfeasibleState if any leg is out."""
    worst = min(workspace_clearance(model, state, leg) for leg in LEG_IDS)
    if worst < -_EPS:
        raise InfeasibleState("a foot lies outside its workspace")
    return max(worst, 0.0)


def default_stance(
    model: RobotModel,
    body_xy: Tuple[float, float] = (0.0, 0.0),
    yaw: float = 0.0,
    ground_z: float = 0.0,
) -> RobotState:
    """All feet at their workspace centers, body at nominal height over ground_z."""
    body = (body_xy[0], body_xy[1], ground_z + model.body_height)
    feet = {
        leg: body_to_world(body, yaw, model.workspace_center(leg))
        for leg in LEG_IDS
    }
    return RobotState(body=body, yaw=yaw, feet=feet)


# A foothold configuration maps each leg to a body-frame foot position.
FootholdConfig = Dict[int, Vec3]


def initial_configuration(model: RobotModel) -> FootholdConfig:
    """Every foot at the center of its workspace."""
    return {leg: model.workspace_center(leg) for leg in LEG_IDS}


def config_margin(model: RobotModel, config: FootholdConfig) -> float:
    """Min distance of the config's feet to their cube faces (negative = outside)."""
    worst = math.inf
    for leg in LEG_IDS:
        cx, cy, cz = model.workspace_center(leg)
        px, py, pz = config[leg]
        offset = (px - cx, py - cy, pz - cz)
        half = (model.r_x / 2.0, model.r_y / 2.0, model.r_z / 2.0)
        worst = min(worst, min(h - abs(o) for o, h in zip(offset, half)))
    return worst


def config_to_world(
    config: FootholdConfig, body: Vec3, yaw: float
) -> Dict[int, Vec3]:
    """Map a body-frame foothold configuration to world-frame foot positions."""
    return {leg: body_to_world(body, yaw, config[leg]) for leg in LEG_IDS}
