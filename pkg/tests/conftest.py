"""Shared fixtures: the stock robot and gait used throughout the tests."""

import pytest

from quadgait import GaitParams, RobotModel, StairProfile


@pytest.fixture(scope="session")
def model():
    return RobotModel(p_x=0.8, p_y=0.54, r_x=0.76, r_y=0.5, r_z=0.5, body_height=0.5)


@pytest.fixture(scope="session")
def params():
    return GaitParams(
        beta=0.75,
        cycle_time=8.0,
        stroke=None,
        delta_h=0.02,
        stair_width=0.5,
        stair_height=0.13,
        t_0=0.0,
    )


@pytest.fixture(scope="session")
def stairs():
    return StairProfile(start=0.0, count=8, width=0.5, height=0.13)
