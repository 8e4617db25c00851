"""2D wall geometry: segments, poses, ray casting and collision queries.

The world is a set of infinitely thin straight wall segments in a flat
plane. All lengths are in inches, all angles in radians. Everything here
is immutable and purely functional, so values can be shared freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Point = tuple[float, float]

# Denominator cutoff below which a ray is treated as parallel to a segment.
_PARALLEL_EPS = 1e-12
# Hits closer than this are the degenerate origin-on-wall case and are skipped.
_MIN_HIT = 1e-9


def normalize_angle(theta: float) -> float:
    """Wrap an angle to [-pi, pi)."""
    return (theta + math.pi) % math.tau - math.pi


@dataclass(frozen=True)
class WallSegment:
    """Straight wall from endpoint ``a`` to endpoint ``b`` (inches)."""

    a: Point
    b: Point

    def __post_init__(self) -> None:
        ax, ay = self.a
        bx, by = self.b
        if not all(math.isfinite(v) for v in (ax, ay, bx, by)):
            raise ValueError(f"wall coordinates must be finite: {self.a} -> {self.b}")
        if ax == bx and ay == by:
            raise ValueError(f"zero-length wall at {self.a}")
        object.__setattr__(self, "a", (float(ax), float(ay)))
        object.__setattr__(self, "b", (float(bx), float(by)))


@dataclass(frozen=True)
class Environment:
    """A set of walls plus the axis-aligned rectangle enclosing them.

    ``bounds`` is ``(xmin, ymin, xmax, ymax)``. If omitted it is computed
    from the wall endpoints; if given it must contain every endpoint.
    """

    walls: tuple[WallSegment, ...]
    bounds: tuple[float, float, float, float] | None = None

    def __post_init__(self) -> None:
        walls = tuple(self.walls)
        if not walls:
            raise ValueError("environment needs at least one wall")
        object.__setattr__(self, "walls", walls)
        xs = [c for w in walls for c in (w.a[0], w.b[0])]
        ys = [c for w in walls for c in (w.a[1], w.b[1])]
        computed = (min(xs), min(ys), max(xs), max(ys))
        if self.bounds is None:
            object.__setattr__(self, "bounds", computed)
        else:
            xmin, ymin, xmax, ymax = self.bounds
            if xmin > computed[0] or ymin > computed[1] or xmax < computed[2] or ymax < computed[3]:
                raise ValueError("bounds do not enclose every wall endpoint")
            object.__setattr__(self, "bounds", (float(xmin), float(ymin), float(xmax), float(ymax)))


@dataclass(frozen=True)
class Pose:
    """Vehicle position (inches) and heading (radians, wrapped to [-pi, pi))."""

    x: float
    y: float
    heading: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.heading)):
            raise ValueError("pose components must be finite")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        # wrap only when out of range: in-range headings pass through bit-exact
        h = float(self.heading)
        if h >= math.pi or h < -math.pi:
            h = normalize_angle(h)
        object.__setattr__(self, "heading", h)

    @property
    def position(self) -> Point:
        return (self.x, self.y)


def _ray_segment_hit(origin: Point, dx: float, dy: float, wall: WallSegment) -> float | None:
    """Distance along the unit ray (px,py)+t*(dx,dy) to ``wall``, or None.

    Solves origin + t*d = a + u*(b-a) for t > 0, u in [0, 1]. Rays parallel
    to the segment (|cross product| < 1e-12) never hit.
    """
    px, py = origin
    ax, ay = wall.a
    sx = wall.b[0] - ax
    sy = wall.b[1] - ay
    den = dx * sy - dy * sx
    if abs(den) < _PARALLEL_EPS:
        return None
    qx = ax - px
    qy = ay - py
    t = (qx * sy - qy * sx) / den
    if t <= _MIN_HIT:
        return None
    u = (qx * dy - qy * dx) / den
    if u < 0.0 or u > 1.0:
        return None
    return t


def cast_ray(origin: Point, direction: float, env: Environment, max_range: float) -> float:
    """Distance to the nearest wall along a ray, capped at ``max_range``.

    Returns ``max_range`` exactly when no wall is hit within range. The
    result is always in (0, max_range]; an origin lying exactly on a wall
    does not count as a hit at distance zero.
    """
    if max_range <= 0:
        raise ValueError("max_range must be positive")
    if not math.isfinite(direction):
        raise ValueError("ray direction must be finite")
    dx = math.cos(direction)
    dy = math.sin(direction)
    best = max_range
    for wall in env.walls:
        t = _ray_segment_hit(origin, dx, dy, wall)
        if t is not None and t < best:
            best = t
    return best


def _point_segment_distance(p: Point, a: Point, b: Point) -> float:
    px, py = p
    ax, ay = a
    vx = b[0] - ax
    vy = b[1] - ay
    wx = px - ax
    wy = py - ay
    c1 = vx * wx + vy * wy
    if c1 <= 0.0:
        return math.hypot(wx, wy)
    c2 = vx * vx + vy * vy
    if c1 >= c2:
        return math.hypot(px - b[0], py - b[1])
    t = c1 / c2
    return math.hypot(px - (ax + t * vx), py - (ay + t * vy))


def point_in_collision(p: Point, body_radius: float, env: Environment) -> bool:
    """True iff any wall lies within ``body_radius`` of ``p`` (inclusive)."""
    if body_radius < 0:
        raise ValueError("body_radius must be non-negative")
    return any(_point_segment_distance(p, w.a, w.b) <= body_radius for w in env.walls)
