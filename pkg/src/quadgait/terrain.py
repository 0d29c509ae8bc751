"""Terrain height fields: flat ground, stair flights, and their sums.

A terrain exposes height_at(x, y) -> z. Stair treads are horizontal and the
height field is piecewise constant; a point exactly on a riser edge belongs
to the upper tread (on an ascending flight the edge is the base of the wall
you are about to climb, on a descending flight it is the nose you are about
to step off).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

Point2 = Tuple[float, float]

_EDGE_TOL = 1e-12


class Terrain:
    def height_at(self, x: float, y: float) -> float:
        raise NotImplementedError

    def _break_params(self, p0: Point2, p1: Point2) -> List[float]:
        """Segment parameters in (0, 1] where this terrain's height may change."""
        return []


@dataclass(frozen=True)
class FlatTerrain(Terrain):
    z: float = 0.0

    def height_at(self, x: float, y: float) -> float:
        return self.z


@dataclass(frozen=True)
class StairProfile(Terrain):
    """A flight of stairs crossing one world axis.

    start: coordinate of the first riser along the axis.
    count: number of risers (= number of level changes).
    width: tread depth W.  height: riser height H.
    ascending: True climbs along the flight's run direction, False descends.
    axis: "x" or "y", the axis the risers are perpendicular to.
    base: height of the ground before the first riser.
    sense: +1 runs the flight toward +axis, -1 toward -axis.
    """

    start: float
    count: int
    width: float
    height: float
    ascending: bool = True
    axis: str = "x"
    base: float = 0.0
    sense: int = 1

    def __post_init__(self) -> None:
        if self.width <= 0.0 or self.height <= 0.0 or self.count < 1:
            raise ValueError("stair profile needs width > 0, height > 0, count >= 1")
        if self.axis not in ("x", "y"):
            raise ValueError("axis must be 'x' or 'y'")
        if self.sense not in (1, -1):
            raise ValueError("sense must be +1 or -1")

    def _coord(self, x: float, y: float) -> float:
        return x if self.axis == "x" else y

    def riser_positions(self) -> List[float]:
        return [self.start + self.sense * k * self.width for k in range(self.count)]

    def top(self) -> float:
        """Coordinate of the last riser (start of the final level)."""
        return self.start + self.sense * (self.count - 1) * self.width

    def height_at(self, x: float, y: float) -> float:
        s = self.sense * (self._coord(x, y) - self.start)
        if self.ascending:
            if s < -_EDGE_TOL:
                return self.base
            k = min(int(math.floor(s / self.width + _EDGE_TOL)) + 1, self.count)
            return self.base + k * self.height
        if s <= _EDGE_TOL:
            return self.base
        k = min(int(math.ceil(s / self.width - _EDGE_TOL)), self.count)
        return self.base - k * self.height

    def _break_params(self, p0: Point2, p1: Point2) -> List[float]:
        s0 = self._coord(*p0)
        s1 = self._coord(*p1)
        if s1 == s0:
            return []
        params = []
        for riser in self.riser_positions():
            t = (riser - s0) / (s1 - s0)
            if _EDGE_TOL < t <= 1.0 + _EDGE_TOL:
                params.append(min(t, 1.0))
        return params


@dataclass(frozen=True)
class CompositeTerrain(Terrain):
    """Sum of component height fields."""

    parts: Tuple[Terrain, ...]

    def __init__(self, parts: Sequence[Terrain]):
        object.__setattr__(self, "parts", tuple(parts))

    def height_at(self, x: float, y: float) -> float:
        return sum(p.height_at(x, y) for p in self.parts)

    def _break_params(self, p0: Point2, p1: Point2) -> List[float]:
        params: List[float] = []
        for p in self.parts:
            params.extend(p._break_params(p0, p1))
        return params


def crossings(
    terrain: Terrain, p0: Point2, p1: Point2
) -> List[Tuple[float, float]]:
    """Terrain level changes under the segment p0 -> p1.

    Returns (distance along the segment, absolute height after the change)
    for each change, in path order. Changes of zero height are dropped.
    """
    length = math.hypot(p1[0] - p0[0], p1[1] - p0[1])
    if length == 0.0:
        return []
    params = sorted(set(terrain._break_params(p0, p1)))
    out: List[Tuple[float, float]] = []
    level = terrain.height_at(*p0)
    bounds = params + [1.0]
    for i, t in enumerate(params):
        # Sample the level on the far side of the break, before the next one.
        t_next = bounds[i + 1]
        t_mid = min(t + 0.25 * (t_next - t), 1.0) if t_next > t else t
        probe = (
            p0[0] + t_mid * (p1[0] - p0[0]),
            p0[1] + t_mid * (p1[1] - p0[1]),
        )
        new_level = terrain.height_at(*probe)
        if abs(new_level - level) > 1e-12:
            out.append((t * length, new_level))
            level = new_level
    return out
