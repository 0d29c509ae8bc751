"""Static stability: support polygon and signed margin of the CoM projection.

The margin is the distance from the horizontal projection of the center of
mass to the boundary of the support polygon (the convex hull of the
supporting feet, projected to the ground plane). Positive inside, negative
outside. Distances within 1e-9 of the boundary snap to exactly 0.

Degenerate supports follow the same definition: with two supporting feet the
hull is a segment and the margin is -distance(point, segment) (0 only on the
segment); with one foot it is -distance(point, foot).
"""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

from .errors import NoSupport
from .model import RobotState

Point2 = Tuple[float, float]

_SNAP = 1e-9


def convex_hull(points: Sequence[Point2]) -> List[Point2]:
    """Convex hull in counterclockwise order (Andrew's monotone chain).

    Collinear points on the hull boundary are dropped. Returns the input
    (deduplicated) for fewer than three distinct points.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o: Point2, a: Point2, b: Point2) -> float:
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: List[Point2] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        # All points collinear: keep the two extremes.
        return [pts[0], pts[-1]]
    return hull


def _point_segment_distance(p: Point2, a: Point2, b: Point2) -> float:
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    if denom == 0.0:
        return math.hypot(p[0] - ax, p[1] - ay)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / denom
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - (ax + t * dx), p[1] - (ay + t * dy))


def point_polygon_margin(point: Point2, polygon: Sequence[Point2]) -> float:
    """Signed distance from point to the polygon boundary (+ inside, - outside).

    polygon must be convex and counterclockwise. Hulls that collapse to a
    segment or single point give non-positive margins.
    """
    n = len(polygon)
    if n == 0:
        raise NoSupport("empty support polygon")
    if n == 1:
        d = -math.hypot(point[0] - polygon[0][0], point[1] - polygon[0][1])
        return 0.0 if d > -_SNAP else d
    if n == 2:
        d = -_point_segment_distance(point, polygon[0], polygon[1])
        return 0.0 if d > -_SNAP else d

    inside = True
    boundary = math.inf
    for i in range(n):
        a = polygon[i]
        b = polygon[(i + 1) % n]
        cross = (b[0] - a[0]) * (point[1] - a[1]) - (b[1] - a[1]) * (point[0] - a[0])
        if cross < 0.0:
            inside = False
        boundary = min(boundary, _point_segment_distance(point, a, b))
    d = boundary if inside else -boundary
    return 0.0 if abs(d) <= _SNAP else d


def support_polygon(state: RobotState) -> List[Point2]:
    """Convex hull (ccw) of the supporting feet, projected to the ground plane."""
    feet = state.supporting_feet()
    if not feet:
        raise NoSupport("no supporting feet")
    return convex_hull([(p[0], p[1]) for p in feet.values()])


def stability_margin(state: RobotState) -> float:
    """Signed distance from the CoM projection to the support polygon boundary.

    The CoM coincides with the body center. Positive means statically stable.
    """
    return point_polygon_margin((state.body[0], state.body[1]), support_polygon(state))
