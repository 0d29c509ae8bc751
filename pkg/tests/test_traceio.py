"""Trace CSV round trips and format checks."""

import numpy as np
import pytest

from quadgait import plan_level_walk, read_trace_csv, simulate, write_trace_csv
from quadgait.traceio import COLUMNS


@pytest.fixture(scope="module")
def trace(model, params):
    return simulate(plan_level_walk(model, params, 1), model)


def test_round_trip_is_bit_exact(trace, tmp_path):
    path = str(tmp_path / "walk.csv")
    write_trace_csv(trace, path)
    back = read_trace_csv(path)
    assert np.array_equal(back.t, trace.t)
    assert np.array_equal(back.body, trace.body)
    assert np.array_equal(back.yaw, trace.yaw)
    assert np.array_equal(back.feet, trace.feet)
    assert np.array_equal(back.support, trace.support)
    assert np.array_equal(back.margin, trace.margin)
    assert back.dt == pytest.approx(trace.dt, abs=1e-12)


def test_awkward_floats_survive(tmp_path, model):
    # Values whose shortest repr needs all 17 digits.
    from quadgait import Timeline, default_stance
    from quadgait.simulate import SimTrace

    t = np.array([0.0, 0.1 + 0.2])  # 0.30000000000000004
    body = np.array([[1 / 3, -1e-17, 2.0**-40], [np.pi, 1e300, -0.0]])
    yaw = np.array([np.e, -np.pi / 7])
    feet = np.arange(24, dtype=float).reshape(2, 4, 3) / 7.0
    support = np.array([[True] * 4, [True, False, True, True]])
    margin = np.array([0.1, -1e-9])
    trace = SimTrace(
        dt=0.3,
        t=t,
        body=body,
        yaw=yaw,
        feet=feet,
        support=support,
        margin=margin,
        events=[],
        phases=[],
    )
    path = str(tmp_path / "odd.csv")
    write_trace_csv(trace, path)
    back = read_trace_csv(path)
    assert np.array_equal(back.body, body)
    assert np.array_equal(back.yaw, yaw)
    assert np.array_equal(back.feet, feet)
    assert np.array_equal(back.margin, margin)
    # -0.0 keeps its sign bit.
    assert np.signbit(back.body[1, 2])


def test_header_and_width(trace, tmp_path):
    path = str(tmp_path / "walk.csv")
    write_trace_csv(trace, path)
    with open(path) as fh:
        header = fh.readline().rstrip("\n").split(",")
        first = fh.readline().rstrip("\n").split(",")
    assert header == COLUMNS
    assert len(COLUMNS) == 22
    assert len(first) == 22
    # Support flags are bare 0/1.
    assert first[8] in ("0", "1")


def test_read_rejects_foreign_files(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ValueError, match="empty"):
        read_trace_csv(str(empty))

    wrong = tmp_path / "wrong.csv"
    wrong.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError, match="column layout"):
        read_trace_csv(str(wrong))

    ragged = tmp_path / "ragged.csv"
    ragged.write_text(",".join(COLUMNS) + "\n1,2,3\n")
    with pytest.raises(ValueError, match="fields"):
        read_trace_csv(str(ragged))


def test_write_is_deterministic(trace, tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    write_trace_csv(trace, str(a))
    write_trace_csv(trace, str(b))
    assert a.read_bytes() == b.read_bytes()
