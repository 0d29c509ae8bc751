"""Release gate: one test per acceptance criterion.

`pytest -v tests/test_acceptance.py` prints one pass/fail line per
criterion. Each test states its tolerance inline; the shared scenario run
(walk, climb, spin a quarter turn, descend) is built once per module.
"""

import math
import time

import numpy as np
import pytest

from test_spin import arc_endpoints_oracle, closed_form_model
from test_transition import enumerate_best, random_config

from quadgait import (
    LEG_IDS,
    GaitParams,
    RobotModel,
    StairProfile,
    SwingSpec,
    body_rotation_support,
    body_rotation_swing,
    desired_spin_config,
    desired_wave_config,
    footprint_spacing,
    initial_configuration,
    leg_arc,
    plan_level_walk,
    plan_reset_transition,
    plan_spin_cycle,
    plan_spin_cycles,
    plan_spin_transition,
    plan_stair_ascent,
    plan_stair_descent,
    plan_wave_transition,
    search_transition,
    simulate,
    solve_apex_time,
    spin_geometry,
    step_margins,
    swing_xy,
    swing_xy_vel,
    swing_z,
    swing_z_vel,
    verify_transition,
    world_to_body,
)
from quadgait.simulate import run_case_study

H = 0.13
W = 0.5


@pytest.fixture(scope="module")
def scenario(model, params, stairs):
    t0 = time.perf_counter()
    trace = run_case_study(model, params, stairs, dt=1e-3)
    return trace, time.perf_counter() - t0


def test_criterion_01_scenario_margin_nonnegative_low_only_in_transitions(
    scenario,
):
    trace, runtime = scenario
    assert trace.min_margin >= -1e-9
    low = np.flatnonzero(trace.margin < 1e-6)
    assert low.size > 0  # the gait does touch zero margin
    for i in low:
        assert trace.phase_of(float(trace.t[i])) == "transition"
    assert runtime < 30.0


def test_criterion_02_scenario_final_yaw_height_and_climb_rate(scenario, params):
    trace, _ = scenario
    spin = next(p for p in trace.phases if p[0] == "spin")
    i_spin = int(np.flatnonzero(trace.t == spin[2])[0])
    assert abs(trace.yaw[i_spin] - math.pi / 2.0) <= 1e-6
    assert abs(trace.yaw[-1] - math.pi / 2.0) <= 1e-6
    assert abs(trace.body[-1, 2] - trace.body[0, 2]) <= 1e-6

    climb = next(p for p in trace.phases if p[0] == "climb")
    bounds = np.arange(climb[1], climb[2] + 1e-9, params.cycle_time)
    zs = []
    for t in bounds:
        i = int(np.flatnonzero(np.abs(trace.t - t) <= 1e-9)[0])
        zs.append(float(trace.body[i, 2]))
    rises = np.diff(zs)
    steady = [r for r in rises if abs(r - 2.0 * H) <= 1e-6]
    assert len(steady) >= 2  # full-flight cycles gain two risers each
    assert max(rises) <= 2.0 * H + 1e-6
    assert abs(zs[-1] - trace.body[0, 2] - 8 * H) <= 1e-6


def test_criterion_03_swing_endpoint_apex_and_inversion_contracts():
    rng = np.random.default_rng(17)

    def random_spec():
        while True:
            x_f = float(rng.uniform(-0.8, 0.8))
            y_f = float(rng.uniform(-0.8, 0.8))
            length = math.hypot(x_f, y_f)
            if length > 0.05:
                break
        z_f = float(rng.uniform(-0.3, 0.3))
        t_sw = float(rng.uniform(0.5, 3.0))
        d_s = float(rng.uniform(0.05, 0.95)) * length
        return SwingSpec(
            x_f, y_f, z_f, t_sw, d_s, max(0.0, z_f), float(rng.uniform(0.005, 0.05))
        )

    def accel(vel, t0, h, sign):
        # Exact for degree-4 polynomials; each velocity branch is one, so
        # only rounding error remains as long as 4h stays on the branch.
        v = [vel(t0 + sign * k * h) for k in range(5)]
        return (
            sign
            * (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4])
            / (12 * h)
        )

    for _ in range(25):
        spec = random_spec()
        x1, y1 = swing_xy(spec, spec.t_sw)
        assert abs(x1 - spec.x_f) <= 1e-9 and abs(y1 - spec.y_f) <= 1e-9
        assert math.hypot(*swing_xy(spec, 0.0)) <= 1e-9
        assert abs(swing_z(spec, 0.0)) <= 1e-9
        assert abs(swing_z(spec, spec.t_sw) - spec.z_f) <= 1e-9
        for t in (0.0, spec.t_sw):
            vx, vy = swing_xy_vel(spec, t)
            assert max(abs(vx), abs(vy), abs(swing_z_vel(spec, t))) <= 1e-9
        for vel, t0, sign, h in (
            (lambda t: swing_xy_vel(spec, t)[0], 0.0, +1.0, spec.t_sw / 8),
            (lambda t: swing_xy_vel(spec, t)[0], spec.t_sw, -1.0, spec.t_sw / 8),
            (lambda t: swing_z_vel(spec, t), 0.0, +1.0, spec.t_s / 8),
            (
                lambda t: swing_z_vel(spec, t),
                spec.t_sw,
                -1.0,
                (spec.t_sw - spec.t_s) / 8,
            ),
        ):
            assert abs(accel(vel, t0, h, sign)) <= 1e-9
        assert abs(swing_z(spec, spec.t_s) - (spec.h_s + spec.delta_h)) <= 1e-9
        eps = 1e-6 * spec.t_sw
        for frac in np.linspace(0.1, 0.9, 9):
            t = float(frac) * spec.t_sw
            if abs(t - spec.t_s) < 10 * eps:
                continue
            vx, vy = swing_xy_vel(spec, t)
            vz = swing_z_vel(spec, t)
            fx = (swing_xy(spec, t + eps)[0] - swing_xy(spec, t - eps)[0]) / (2 * eps)
            fy = (swing_xy(spec, t + eps)[1] - swing_xy(spec, t - eps)[1]) / (2 * eps)
            fz = (swing_z(spec, t + eps) - swing_z(spec, t - eps)) / (2 * eps)
            for got, fd in ((vx, fx), (vy, fy), (vz, fz)):
                assert abs(got - fd) <= 1e-5 * max(1.0, abs(got))

    for _ in range(100):
        spec = random_spec()
        t_s = solve_apex_time(spec.d_s, spec.length, spec.t_sw)
        assert abs(math.hypot(*swing_xy(spec, t_s)) - spec.d_s) <= 1e-10


def test_criterion_04_stair_swings_clear_the_terrain(model, params):
    up = StairProfile(start=2.0, count=8, width=W, height=H)
    down = StairProfile(start=2.0, count=8, width=W, height=H, ascending=False)
    cases = [
        (plan_stair_ascent(model, params, up), up),
        (plan_stair_descent(model, params, down), down),
    ]
    for timeline, terrain in cases:
        trace = simulate(timeline, model, terrain, dt=1e-3)
        assert trace.violations == []
        checked = 0
        for i in range(trace.n_samples):
            sup = trace.support[i]
            if sup.all():
                continue
            j = int(np.flatnonzero(~sup)[0])
            fx, fy, fz = trace.feet[i, j]
            assert fz - terrain.height_at(fx, fy) > 0.0  # strict off the ground
            checked += 1
        assert checked > 1000
        for e in trace.events:
            if e.kind not in ("lift", "touchdown"):
                continue
            i = int(np.flatnonzero(trace.t == e.t)[0])
            fx, fy, fz = trace.feet[i, e.leg - 1]
            assert abs(fz - terrain.height_at(fx, fy)) <= 1e-12


def test_criterion_05_footprint_spacing_and_stair_strides(model, params):
    lam = footprint_spacing(params)
    assert abs(lam - params.stroke_value / params.beta) <= 1e-15

    def marks(timeline):
        out = {leg: [] for leg in LEG_IDS}
        for seg in timeline.segments:
            if seg.swing is not None:
                out[seg.swing.leg].append(seg.swing.target)
        return out

    level = plan_level_walk(model, params, 3)
    pairs = 0
    for leg, pts in marks(level).items():
        for a, b in zip(pts, pts[1:]):
            assert abs((b[0] - a[0]) - lam) <= 1e-6
            assert abs(b[1] - a[1]) <= 1e-6
            assert abs(b[2] - a[2]) <= 1e-6
            pairs += 1
    assert pairs >= 8

    up = StairProfile(start=2.0, count=8, width=W, height=H)
    down = StairProfile(start=2.0, count=8, width=W, height=H, ascending=False)
    for timeline, terrain, dz in (
        (plan_stair_ascent(model, params, up), up, +2.0 * H),
        (plan_stair_descent(model, params, down), down, -2.0 * H),
    ):
        checked = 0
        for leg, pts in marks(timeline).items():
            for a, b in zip(pts, pts[1:]):
                if a[0] >= terrain.start and b[0] <= terrain.top():
                    assert abs((b[0] - a[0]) - 2.0 * W) <= 1e-6
                    assert abs(b[1] - a[1]) <= 1e-6
                    assert abs((b[2] - a[2]) - dz) <= 1e-6
                    checked += 1
        assert checked >= 4


def test_criterion_06_spin_closed_forms_match_the_sampling_oracle():
    rng = np.random.default_rng(211)
    for _ in range(100):
        model = closed_form_model(rng)
        geo = spin_geometry(model)
        lo, hi = arc_endpoints_oracle(model)
        assert abs(geo.delta - lo) <= 1e-9
        assert abs((geo.delta + geo.phi) - hi) <= 1e-9
        assert abs(geo.gamma - (math.pi / 2.0 - hi)) <= 1e-9
        assert abs(geo.s_x - geo.rho * (math.cos(hi) - math.cos(lo))) <= 1e-9
        assert abs(geo.s_y - geo.rho * (math.sin(hi) - math.sin(lo))) <= 1e-9

    example = RobotModel(p_x=1.0, p_y=0.5, r_x=0.4, r_y=0.3, r_z=0.5, body_height=0.5)
    geo = spin_geometry(example)
    lo, hi = arc_endpoints_oracle(example)
    assert abs(geo.phi - (hi - lo)) <= 1e-9  # the oracle pins the exact value
    assert abs(geo.phi - 0.61789) <= 5e-3  # rounded reference digits
    assert abs(geo.s_y - example.r_y) <= 1e-12


def test_criterion_07_spin_schedule_identities(model):
    geo = spin_geometry(model)
    for beta in (0.75, 0.8, 0.875, 0.95):
        params = GaitParams(beta=beta)
        d_sw = body_rotation_swing(params, geo)
        d_sup = body_rotation_support(params, geo)
        assert abs(4.0 * d_sw + 2.0 * d_sup - geo.phi / beta) <= 1e-12
        timeline = plan_spin_cycle(model, params)
        durs = [s.t1 - s.t0 for s in timeline.segments]
        assert len(durs) == 6
        assert timeline.t_end - timeline.t_start == params.cycle_time
        assert sum(durs) == pytest.approx(params.cycle_time, abs=1e-12)
        rate = geo.phi / (beta * params.cycle_time)
        for seg in timeline.segments:
            assert abs(seg.yaw_rate - rate) <= 1e-12
        if beta == 0.75:
            assert d_sup == 0.0
            assert sorted(durs)[:2] == [0.0, 0.0]
        else:
            assert min(durs) > 0.0


def test_criterion_08_transition_plans_are_stable_minimal_and_searched(
    model, params
):
    wave = plan_wave_transition(model, params)
    assert [m.leg for m in wave.moves] == [2, 3, 4, 1, 3]
    assert min(step_margins(wave)) >= -1e-12
    goal = desired_wave_config(model, params)
    final = wave.apply()
    for leg in LEG_IDS:
        assert max(abs(a - b) for a, b in zip(final[leg], goal[leg])) <= 1e-9

    for direction in ("ccw", "cw"):
        spin = plan_spin_transition(model, params, direction)
        assert min(step_margins(spin)) >= -1e-12
        goal = desired_spin_config(model, params, direction)
        final = spin.apply()
        for leg in LEG_IDS:
            assert max(abs(a - b) for a, b in zip(final[leg], goal[leg])) <= 1e-9
        reset = plan_reset_transition(model, spin.apply())
        assert min(step_margins(reset)) >= -1e-12
        back = reset.apply()
        centers = initial_configuration(model)
        for leg in LEG_IDS:
            assert max(abs(a - b) for a, b in zip(back[leg], centers[leg])) <= 1e-9

    rng = np.random.default_rng(307)
    checked = 0
    while checked < 20:
        start = random_config(model, rng)
        goal = random_config(model, rng)
        plan = search_transition(model, start, goal)
        if len(plan.moves) > 4:
            continue
        want = enumerate_best(model, start, goal)
        assert want is not None
        depth, profile, moves = want
        assert len(plan.moves) == depth
        assert tuple(sorted(step_margins(plan))) == pytest.approx(profile, abs=1e-12)
        assert [m.leg for m in plan.moves] == [leg for leg, _ in moves]
        assert verify_transition(plan, model) >= 0.0
        checked += 1


def test_criterion_09_periodicity_no_slip_support_determinism(
    scenario, model, params, stairs
):
    T = params.cycle_time
    cyclic = [
        plan_level_walk(model, params, 2),
        plan_spin_cycles(model, params, [1.0, 1.0]),
    ]
    for timeline in cyclic:
        t0 = timeline.t_start
        for frac in np.linspace(0.0, 1.0, 23):
            a = timeline.state_at(t0 + float(frac) * T)
            b = timeline.state_at(t0 + float(frac) * T + T)
            for leg in LEG_IDS:
                pa = world_to_body(a.body, a.yaw, a.feet[leg])
                pb = world_to_body(b.body, b.yaw, b.feet[leg])
                assert max(abs(x - y) for x, y in zip(pa, pb)) <= 1e-9

    trace, _ = scenario
    both = trace.support[:-1] & trace.support[1:]
    drift = np.linalg.norm(trace.feet[1:] - trace.feet[:-1], axis=2)
    assert float(drift[both].max()) <= 1e-9
    assert int(trace.support.sum(axis=1).min()) >= 3

    again = run_case_study(model, params, stairs, dt=1e-3)
    assert np.array_equal(again.t, trace.t)
    assert np.array_equal(again.body, trace.body)
    assert np.array_equal(again.yaw, trace.yaw)
    assert np.array_equal(again.feet, trace.feet)
    assert np.array_equal(again.support, trace.support)
    assert np.array_equal(again.margin, trace.margin)
    assert again.events == trace.events
    assert again.phases == trace.phases
