"""Stationary-body transitions between foothold configurations.

A transition relocates feet one at a time while the body stays put. During
each move the center of mass must lie inside or on the triangle of the
three stationary feet, so a move's stability margin is a single constant
number. Plans are searched over a small per-leg target vocabulary: the
leg's start and goal positions, its workspace center, and the four points
where the center axes meet the workspace faces (useful parking spots when
straight-to-goal orderings deadlock).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InfeasiblePlan
from .model import (
    LEG_IDS,
    FootholdConfig,
    RobotModel,
    RobotState,
    Vec3,
    body_to_world,
    config_margin,
    initial_configuration,
    world_to_body,
)
from .stability import convex_hull, point_polygon_margin

_TOL = 1e-9


@dataclass(frozen=True)
class TransitionMove:
    leg: int
    target: Vec3  # body frame


@dataclass(frozen=True)
class TransitionPlan:
    start: FootholdConfig
    goal: FootholdConfig
    moves: Tuple[TransitionMove, ...]

    def __init__(self, start, goal, moves) -> None:
        object.__setattr__(self, "start", dict(start))
        object.__setattr__(self, "goal", dict(goal))
        object.__setattr__(self, "moves", tuple(moves))

    def apply(self) -> FootholdConfig:
        config = dict(self.start)
        for move in self.moves:
            config[move.leg] = move.target
        return config


def _triple_margin(positions: Sequence[Vec3]) -> float:
    """Stability margin of the body center over the given support feet."""
    hull = convex_hull([(p[0], p[1]) for p in positions])
    return point_polygon_margin((0.0, 0.0), hull)


def step_margins(plan: TransitionPlan) -> List[float]:
    """Stability margin of each move (support = the three stationary feet)."""
    config = dict(plan.start)
    margins = []
    for move in plan.moves:
        others = [config[leg] for leg in LEG_IDS if leg != move.leg]
        margins.append(_triple_margin(others))
        config[move.leg] = move.target
    return margins


def verify_transition(plan: TransitionPlan, model: RobotModel) -> float:
    """Minimum stability margin over the plan's moves (inf for an empty plan).

    Also confirms the plan lands on its goal; a plan that does not reach the
    goal within 1e-9 m is malformed and raises InfeasiblePlan.
    """
    final = plan.apply()
    for leg in LEG_IDS:
        if any(abs(a - b) > _TOL for a, b in zip(final[leg], plan.goal[leg])):
            raise InfeasiblePlan(f"plan leaves leg {leg} short of its goal")
    margins = step_margins(plan)
    return min(margins) if margins else math.inf


def _configs_equal(a: FootholdConfig, b: FootholdConfig, tol: float = _TOL) -> bool:
    return all(
        abs(x - y) <= tol for leg in LEG_IDS for x, y in zip(a[leg], b[leg])
    )


def _candidates(
    model: RobotModel, start: FootholdConfig, goal: FootholdConfig
) -> Dict[int, List[Vec3]]:
    """Per-leg target vocabulary, deduplicated, in a fixed order."""
    out: Dict[int, List[Vec3]] = {}
    for leg in LEG_IDS:
        cx, cy, cz = model.workspace_center(leg)
        raw = [
            start[leg],
            goal[leg],
            (cx, cy, cz),
            (cx - model.r_x / 2.0, cy, cz),
            (cx + model.r_x / 2.0, cy, cz),
            (cx, cy - model.r_y / 2.0, cz),
            (cx, cy + model.r_y / 2.0, cz),
        ]
        seen = []
        for p in raw:
            if not any(all(abs(a - b) <= 1e-12 for a, b in zip(p, q)) for q in seen):
                seen.append(p)
        out[leg] = seen
    return out


def search_transition(
    model: RobotModel,
    start: FootholdConfig,
    goal: FootholdConfig,
    max_moves: int = 6,
) -> TransitionPlan:
    """Minimum-move stable transition from start to goal.

    Exhaustive over per-leg vocabularies; among move-minimal plans the one
    with the largest sorted per-move margin profile wins, then the
    lexicographically smallest (leg, target-index) sequence. Deterministic.
    """
    if config_margin(model, start) < -_TOL or config_margin(model, goal) < -_TOL:
        raise InfeasiblePlan("start or goal configuration exits a workspace cube")
    if _configs_equal(start, goal):
        return TransitionPlan(start, goal, [])

    cands = _candidates(model, start, goal)
    legs = list(LEG_IDS)

    def find_index(leg: int, p: Vec3) -> int:
        for i, q in enumerate(cands[leg]):
            if all(abs(a - b) <= 1e-12 for a, b in zip(p, q)):
                return i
        raise AssertionError("candidate bookkeeping broke")

    start_key = tuple(find_index(leg, start[leg]) for leg in legs)
    goal_key = tuple(find_index(leg, goal[leg]) for leg in legs)

    margin_cache: Dict[Tuple[int, Tuple[int, ...]], float] = {}

    def move_margin(key: Tuple[int, ...], leg_pos: int) -> float:
        others = tuple(key[i] for i in range(4) if i != leg_pos)
        cache_key = (leg_pos, others)
        if cache_key not in margin_cache:
            pts = [cands[legs[i]][key[i]] for i in range(4) if i != leg_pos]
            margin_cache[cache_key] = _triple_margin(pts)
        return margin_cache[cache_key]

    def neighbors(key: Tuple[int, ...]):
        for leg_pos in range(4):
            margin = move_margin(key, leg_pos)
            if margin < 0.0:
                continue
            for j in range(len(cands[legs[leg_pos]])):
                if j == key[leg_pos]:
                    continue
                yield leg_pos, j, margin

    def bfs_dist(source: Tuple[int, ...]) -> Dict[Tuple[int, ...], int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            key = queue.popleft()
            for leg_pos, j, _ in neighbors(key):
                nxt = key[:leg_pos] + (j,) + key[leg_pos + 1 :]
                if nxt not in dist:
                    dist[nxt] = dist[key] + 1
                    queue.append(nxt)
        return dist

    # Move feasibility does not depend on the moving leg's endpoints, so the
    # move graph is undirected and one sweep from the goal gives exact
    # remaining-distance bounds.
    dist_to_goal = bfs_dist(goal_key)
    if goal_key not in dist_to_goal or start_key not in dist_to_goal:
        raise InfeasiblePlan("no stable transition exists over the vocabulary")
    best_len = dist_to_goal[start_key]
    if best_len > max_moves:
        raise InfeasiblePlan(
            f"transition needs {best_len} moves, more than the {max_moves} allowed"
        )

    best: Optional[Tuple[Tuple[float, ...], Tuple[Tuple[int, int], ...]]] = None

    def dfs(key, depth, moves: List[Tuple[int, int]], margins: List[float]):
        nonlocal best
        if depth == best_len:
            if key == goal_key:
                profile = tuple(sorted(margins))
                seq = tuple(moves)
                if best is None or _better(profile, seq, best):
                    best = (profile, seq)
            return
        for leg_pos, j, margin in neighbors(key):
            nxt = key[:leg_pos] + (j,) + key[leg_pos + 1 :]
            if dist_to_goal.get(nxt, math.inf) > best_len - depth - 1:
                continue
            moves.append((leg_pos, j))
            margins.append(margin)
            dfs(nxt, depth + 1, moves, margins)
            moves.pop()
            margins.pop()

    def _better(profile, seq, incumbent) -> bool:
        inc_profile, inc_seq = incumbent
        if profile != inc_profile:
            return profile > inc_profile
        return seq < inc_seq

    dfs(start_key, 0, [], [])
    if best is None:
        raise InfeasiblePlan("no stable transition exists over the vocabulary")
    _, seq = best
    moves = [
        TransitionMove(legs[leg_pos], cands[legs[leg_pos]][j]) for leg_pos, j in seq
    ]
    return TransitionPlan(start, goal, moves)


def plan_wave_transition(
    model: RobotModel,
    params: "GaitParams",
    start: Optional[FootholdConfig] = None,
    goal: Optional[FootholdConfig] = None,
) -> TransitionPlan:
    """Five-move transition into the forward-gait start configuration.

    Legs move in the fixed order 2, 3, 4, 1, 3: leg 3 first shifts to a
    staging point along its start-to-goal line (the placement that maximizes
    the sorted per-move margin profile), the other legs go straight to their
    goals, and leg 3 finishes. Falls back to an empty plan when the start
    already matches the goal.
    """
    from .wave import desired_wave_config

    if goal is None:
        goal = desired_wave_config(model, params)
    if start is None:
        start = initial_configuration(model)
    if _configs_equal(start, goal):
        return TransitionPlan(start, goal, [])
    if config_margin(model, goal) < -_TOL:
        raise InfeasiblePlan("goal configuration exits a workspace cube")

    sx, sy, sz = start[3]
    gx, gy, gz = goal[3]
    best_plan = None
    best_profile = None
    for k in range(1, 8):
        f = k / 8.0
        stage = (sx + f * (gx - sx), sy + f * (gy - sy), sz + f * (gz - sz))
        moves = [
            TransitionMove(2, goal[2]),
            TransitionMove(3, stage),
            TransitionMove(4, goal[4]),
            TransitionMove(1, goal[1]),
            TransitionMove(3, goal[3]),
        ]
        plan = TransitionPlan(start, goal, moves)
        margins = step_margins(plan)
        if min(margins) < 0.0:
            continue
        profile = tuple(sorted(margins))
        if best_profile is None or profile > best_profile:
            best_profile = profile
            best_plan = plan
    if best_plan is None:
        raise InfeasiblePlan("no stable five-move ordering with leg-3 staging")
    return best_plan


def plan_spin_transition(
    model: RobotModel,
    params: "GaitParams",
    direction: str = "ccw",
    start: Optional[FootholdConfig] = None,
    max_moves: int = 6,
) -> TransitionPlan:
    """Searched transition into the spinning gait's start configuration."""
    from .spin import desired_spin_config

    if start is None:
        start = initial_configuration(model)
    goal = desired_spin_config(model, params, direction)
    return search_transition(model, start, goal, max_moves)


def plan_reset_transition(
    model: RobotModel, start: FootholdConfig, max_moves: int = 6
) -> TransitionPlan:
    """Return all feet to their workspace centers."""
    return search_transition(model, start, initial_configuration(model), max_moves)


def run_transition(
    model: RobotModel,
    params: "GaitParams",
    builder,
    plan: TransitionPlan,
    terrain,
    label: str = "transition",
) -> None:
    """Append a transition's moves to a timeline builder.

    The body stays put; each move swings one foot to its target over the
    gait's swing time with a flat-ground clearance profile (terrain level
    changes under the path, if any, shape the apex placement).
    """
    from .swing import make_swing_spec
    from .terrain import crossings

    margins = step_margins(plan)
    if margins and min(margins) < 0.0:
        raise InfeasiblePlan("transition plan is statically unstable")
    t_sw = params.swing_time
    for move in plan.moves:
        wx, wy, _ = body_to_world(builder.body, builder.yaw, move.target)
        wz = terrain.height_at(wx, wy)
        lift = builder.feet[move.leg]
        cross = [
            (d, z - lift[2])
            for d, z in crossings(terrain, (lift[0], lift[1]), (wx, wy))
        ]
        spec = make_swing_spec(
            wx - lift[0], wy - lift[1], wz - lift[2], t_sw, params.delta_h, cross
        )
        builder.advance(t_sw, (0.0, 0.0, 0.0), 0.0, (move.leg, spec, "world"), label)


def world_plan(
    plan: TransitionPlan, body: Vec3, yaw: float
) -> List[Tuple[int, Vec3]]:
    """Map a body-frame plan to world-frame (leg, target) pairs."""
    return [(m.leg, body_to_world(body, yaw, m.target)) for m in plan.moves]


def state_config(model: RobotModel, state: RobotState) -> FootholdConfig:
    """The body-frame foothold configuration of a world state."""
    return {
        leg: world_to_body(state.body, state.yaw, state.feet[leg])
        for leg in LEG_IDS
    }
