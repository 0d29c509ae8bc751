"""Stationary-body transitions: search, fixed planners, replay."""

import math

import numpy as np
import pytest

from quadgait import (
    LEG_IDS,
    FlatTerrain,
    InfeasiblePlan,
    StairProfile,
    TimelineBuilder,
    TransitionPlan,
    convex_hull,
    default_stance,
    desired_spin_config,
    desired_wave_config,
    initial_configuration,
    plan_reset_transition,
    plan_spin_transition,
    plan_wave_transition,
    point_polygon_margin,
    run_transition,
    search_transition,
    state_config,
    step_margins,
    verify_transition,
    wave_start_state,
    world_to_body,
)


# ---------------------------------------------------------------------------
# Oracle: iterative-deepening enumeration of every move sequence over the
# same per-leg vocabulary, with no graph pruning. Certifies minimality and
# the (sorted margin profile, lexicographic) ranking of the search.
# ---------------------------------------------------------------------------

def vocabulary(model, start, goal):
    out = {}
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
            if not any(
                all(abs(a - b) <= 1e-12 for a, b in zip(p, q)) for q in seen
            ):
                seen.append(p)
        out[leg] = seen
    return out


def enumerate_best(model, start, goal, max_depth=4):
    cands = vocabulary(model, start, goal)
    legs = list(LEG_IDS)

    def index_of(leg, p):
        for i, q in enumerate(cands[leg]):
            if all(abs(a - b) <= 1e-12 for a, b in zip(p, q)):
                return i
        raise AssertionError
    start_key = tuple(index_of(leg, start[leg]) for leg in legs)
    goal_key = tuple(index_of(leg, goal[leg]) for leg in legs)

    margin_cache = {}

    def margin(key, leg_pos):
        others = tuple(key[i] for i in range(4) if i != leg_pos)
        ck = (leg_pos, others)
        if ck not in margin_cache:
            pts = [cands[legs[i]][key[i]] for i in range(4) if i != leg_pos]
            hull = convex_hull([(p[0], p[1]) for p in pts])
            margin_cache[ck] = point_polygon_margin((0.0, 0.0), hull)
        return margin_cache[ck]

    for depth in range(max_depth + 1):
        solutions = []

        def rec(key, moves, margins, last_leg):
            if len(moves) == depth:
                if key == goal_key:
                    solutions.append((tuple(sorted(margins)), tuple(moves)))
                return
            for leg_pos in range(4):
                # Two consecutive moves of one leg always collapse into one
                # (the support triangle is identical), so minimal sequences
                # never contain them.
                if leg_pos == last_leg:
                    continue
                m = margin(key, leg_pos)
                if m < 0.0:
                    continue
                for j in range(len(cands[legs[leg_pos]])):
                    if j == key[leg_pos]:
                        continue
                    rec(
                        key[:leg_pos] + (j,) + key[leg_pos + 1 :],
                        moves + [(leg_pos, j)],
                        margins + [m],
                        leg_pos,
                    )

        rec(start_key, [], [], None)
        if solutions:
            best_profile = max(p for p, _ in solutions)
            best_seq = min(s for p, s in solutions if p == best_profile)
            moves = [
                (legs[leg_pos], cands[legs[leg_pos]][j]) for leg_pos, j in best_seq
            ]
            return depth, best_profile, moves
    return None


def random_config(model, rng):
    config = {}
    for leg in LEG_IDS:
        cx, cy, cz = model.workspace_center(leg)
        config[leg] = (
            cx + float(rng.uniform(-0.45, 0.45)) * model.r_x,
            cy + float(rng.uniform(-0.45, 0.45)) * model.r_y,
            cz,
        )
    return config


def test_wave_transition_plan(model, params):
    plan = plan_wave_transition(model, params)
    assert [m.leg for m in plan.moves] == [2, 3, 4, 1, 3]
    margins = step_margins(plan)
    assert margins == pytest.approx([0.0, 0.039043, 0.070835, 0.0, 0.0], abs=1e-6)
    assert verify_transition(plan, model) >= 0.0
    assert plan.apply() == plan.goal
    # Already at the goal: nothing to do.
    goal = desired_wave_config(model, params)
    assert plan_wave_transition(model, params, start=goal).moves == ()


def test_wave_transition_stages_leg_three(model, params):
    plan = plan_wave_transition(model, params)
    third = [m for m in plan.moves if m.leg == 3]
    assert len(third) == 2
    start = initial_configuration(model)[3]
    goal = desired_wave_config(model, params)[3]
    stage = third[0].target
    f = (stage[0] - start[0]) / (goal[0] - start[0])
    assert 0.0 < f < 1.0
    assert stage[1] == pytest.approx(start[1], abs=1e-12)


def test_spin_transition_and_reset_are_reverses(model, params):
    into = plan_spin_transition(model, params)
    assert [m.leg for m in into.moves] == [2, 1, 4, 3, 4]
    assert verify_transition(into, model) >= 0.0
    back = plan_reset_transition(model, desired_spin_config(model, params))
    assert [m.leg for m in back.moves] == [4, 3, 4, 1, 2]
    a = step_margins(into)
    b = step_margins(back)
    assert a == pytest.approx(list(reversed(b)), abs=1e-9)


def test_search_handles_trivial_and_bad_inputs(model):
    config = initial_configuration(model)
    plan = search_transition(model, config, config)
    assert plan.moves == ()
    assert verify_transition(plan, model) == math.inf
    bad = dict(config)
    cx, cy, cz = config[1]
    bad[1] = (cx - model.r_x, cy, cz)
    with pytest.raises(InfeasiblePlan):
        search_transition(model, bad, config)
    with pytest.raises(InfeasiblePlan):
        search_transition(model, config, bad)


def test_verify_rejects_short_plans(model, params):
    start = initial_configuration(model)
    goal = desired_wave_config(model, params)
    short = TransitionPlan(start, goal, [])
    with pytest.raises(InfeasiblePlan):
        verify_transition(short, model)


def test_search_matches_enumeration_on_random_instances(model):
    rng = np.random.default_rng(59)
    checked = 0
    while checked < 20:
        start = random_config(model, rng)
        goal = random_config(model, rng)
        plan = search_transition(model, start, goal)
        if len(plan.moves) > 4:
            continue  # enumeration above depth 4 is impractically wide
        want = enumerate_best(model, start, goal)
        assert want is not None
        depth, profile, moves = want
        assert len(plan.moves) == depth
        assert step_margins(plan) is not None
        assert tuple(sorted(step_margins(plan))) == pytest.approx(
            profile, abs=1e-12
        )
        assert [m.leg for m in plan.moves] == [leg for leg, _ in moves]
        for got, (_, target) in zip(plan.moves, moves):
            assert got.target == pytest.approx(target, abs=1e-12)
        assert verify_transition(plan, model) >= 0.0
        checked += 1


def test_searched_plans_reach_their_goals(model, params):
    rng = np.random.default_rng(61)
    for _ in range(10):
        start = random_config(model, rng)
        goal = random_config(model, rng)
        plan = search_transition(model, start, goal)
        final = plan.apply()
        for leg in LEG_IDS:
            assert final[leg] == pytest.approx(goal[leg], abs=1e-9)
        assert min(step_margins(plan)) >= 0.0


def test_run_transition_replay(model, params):
    terrain = FlatTerrain(0.0)
    state = default_stance(model)
    plan = plan_wave_transition(model, params)
    builder = TimelineBuilder(state, 0.0)
    run_transition(model, params, builder, plan, terrain)
    tl = builder.build()
    assert len(tl.segments) == len(plan.moves)
    assert tl.t_end == pytest.approx(len(plan.moves) * params.swing_time, abs=1e-12)
    end = tl.final_state
    assert end.body == state.body  # the body never moves
    assert end.yaw == state.yaw
    got = state_config(model, end)
    want = desired_wave_config(model, params)
    for leg in LEG_IDS:
        assert got[leg] == pytest.approx(want[leg], abs=1e-9)


def test_run_transition_lands_on_terrain(model, params):
    stairs = StairProfile(start=0.2, count=2, width=0.5, height=0.13)
    state = wave_start_state(model, params, FlatTerrain(0.0))
    # Plan back to centers while standing just before a flight: targets that
    # reach onto the treads must land on the tread height.
    plan = plan_reset_transition(model, state_config(model, state))
    builder = TimelineBuilder(state, 0.0)
    run_transition(model, params, builder, plan, stairs)
    end = builder.build().final_state
    for leg in LEG_IDS:
        x, y, z = end.feet[leg]
        assert z == pytest.approx(stairs.height_at(x, y), abs=1e-12)


def test_run_transition_rejects_unstable_plans(model, params):
    start = initial_configuration(model)
    goal = desired_wave_config(model, params)
    # After leg 2 steps forward to its gait slot, lifting leg 1 leaves the
    # body center outside the 2-3-4 triangle: a genuinely unstable order.
    from quadgait import TransitionMove

    bad = TransitionPlan(
        start,
        goal,
        [
            TransitionMove(2, goal[2]),
            TransitionMove(1, goal[1]),
            TransitionMove(4, goal[4]),
            TransitionMove(3, goal[3]),
        ],
    )
    assert min(step_margins(bad)) < 0.0
    builder = TimelineBuilder(default_stance(model), 0.0)
    with pytest.raises(InfeasiblePlan):
        run_transition(model, params, builder, bad, FlatTerrain(0.0))
