import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallbot.world import (
    Environment,
    Pose,
    WallSegment,
    cast_ray,
    normalize_angle,
    point_in_collision,
)


def seg(x1, y1, x2, y2):
    return WallSegment((x1, y1), (x2, y2))


def ray_march_oracle(origin, direction, env, max_range, coarse=1e-3, tol=1e-9):
    """Brute-force hit finder: march along the ray, bisect the first crossing.

    Independent of the closed-form intersection: relies only on
    point-to-segment distance.
    """

    def _seg_dist(p, wall):
        (ax, ay), (bx, by) = wall.a, wall.b
        vx, vy = bx - ax, by - ay
        wx, wy = p[0] - ax, p[1] - ay
        c1 = vx * wx + vy * wy
        c2 = vx * vx + vy * vy
        t = min(max(c1 / c2, 0.0), 1.0)
        return math.hypot(p[0] - (ax + t * vx), p[1] - (ay + t * vy))

    dx, dy = math.cos(direction), math.sin(direction)

    def min_dist(t):
        p = (origin[0] + t * dx, origin[1] + t * dy)
        return min(_seg_dist(p, w) for w in env.walls)

    t = coarse
    while t <= max_range:
        if min_dist(t) < coarse:
            lo, hi = max(t - coarse, 0.0), t
            while hi - lo > tol:
                mid = (lo + hi) / 2
                if min_dist(mid) < coarse:
                    hi = mid
                else:
                    lo = mid
            # refine: walk hi down to the actual zero crossing
            d = min_dist(hi)
            return hi - d if d < coarse else hi
        t += coarse
    return max_range


class TestWallSegment:
    def test_zero_length_rejected(self):
        with pytest.raises(ValueError):
            seg(1, 2, 1, 2)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            seg(0, 0, math.inf, 1)


class TestEnvironment:
    def test_needs_walls(self):
        with pytest.raises(ValueError):
            Environment(())

    def test_bounds_computed(self):
        env = Environment((seg(0, 0, 10, 0), seg(10, 0, 10, 5)))
        assert env.bounds == (0.0, 0.0, 10.0, 5.0)

    def test_bounds_must_enclose(self):
        with pytest.raises(ValueError):
            Environment((seg(0, 0, 10, 0),), bounds=(0, 0, 5, 5))


class TestPose:
    @pytest.mark.parametrize("heading", [0.0, 3.5, -3.5, 10 * math.pi, math.pi])
    def test_heading_normalized(self, heading):
        p = Pose(0, 0, heading)
        assert -math.pi <= p.heading < math.pi

    def test_normalize_angle_identity_in_range(self):
        assert normalize_angle(0.5) == 0.5
        assert normalize_angle(math.pi) == -math.pi


class TestCastRay:
    def test_perpendicular_hit(self):
        env = Environment((seg(10, -5, 10, 5),))
        assert cast_ray((0, 0), 0.0, env, 100.0) == pytest.approx(10.0, abs=1e-12)

    def test_miss_returns_max_range(self):
        env = Environment((seg(-10, -5, -10, 5),))
        assert cast_ray((0, 0), 0.0, env, 100.0) == 100.0

    def test_diagonal_hit_matches_closed_form_and_march_oracle(self):
        env = Environment((seg(10, 0, 10, 20),))
        expected = 10.0 * math.sqrt(2.0)
        got = cast_ray((0, 0), math.pi / 4, env, 100.0)
        assert got == pytest.approx(expected, abs=1e-9)
        oracle = ray_march_oracle((0, 0), math.pi / 4, env, 100.0)
        assert got == pytest.approx(oracle, abs=5e-3)

    def test_hit_beyond_max_range_is_capped(self):
        env = Environment((seg(10, -5, 10, 5),))
        assert cast_ray((0, 0), 0.0, env, 4.0) == 4.0

    def test_hit_identical_for_any_larger_max_range(self):
        env = Environment((seg(10, -5, 10, 5),))
        d1 = cast_ray((0, 0), 0.0, env, 11.0)
        d2 = cast_ray((0, 0), 0.0, env, 1e6)
        assert d1 == d2 == pytest.approx(10.0)

    def test_origin_on_wall_not_a_zero_hit(self):
        # origin sits exactly on one wall; the hit must be the far wall
        env = Environment((seg(0, -5, 0, 5), seg(10, -5, 10, 5)))
        assert cast_ray((0, 0), 0.0, env, 100.0) == pytest.approx(10.0)

    def test_ray_along_own_wall_misses(self):
        # origin on a wall, ray parallel to it: no strictly-positive hit
        env = Environment((seg(0, -5, 0, 5),))
        assert cast_ray((0, 0), math.pi / 2, env, 50.0) == 50.0

    def test_wall_order_irrelevant(self):
        walls = [seg(10, -5, 10, 5), seg(4, -1, 4, 1), seg(20, -9, 20, 9), seg(-3, -1, -3, 1)]
        rnd = random.Random(42)
        base = cast_ray((0, 0), 0.0, Environment(tuple(walls)), 100.0)
        for _ in range(10):
            rnd.shuffle(walls)
            assert cast_ray((0, 0), 0.0, Environment(tuple(walls)), 100.0) == base

    @given(
        tx=st.floats(-1000, 1000),
        ty=st.floats(-1000, 1000),
        direction=st.floats(-math.pi, math.pi),
    )
    @settings(max_examples=60, deadline=None)
    def test_translation_invariance(self, tx, ty, direction):
        walls = [seg(10, -5, 10, 5), seg(3, 2, 8, 9), seg(-4, -4, 4, -6)]
        env = Environment(tuple(walls))
        moved = Environment(
            tuple(seg(w.a[0] + tx, w.a[1] + ty, w.b[0] + tx, w.b[1] + ty) for w in walls)
        )
        d0 = cast_ray((0, 0), direction, env, 50.0)
        d1 = cast_ray((tx, ty), direction, moved, 50.0)
        assert d1 == pytest.approx(d0, abs=1e-9)

    def test_bad_args(self):
        env = Environment((seg(10, -5, 10, 5),))
        with pytest.raises(ValueError):
            cast_ray((0, 0), 0.0, env, 0.0)
        with pytest.raises(ValueError):
            cast_ray((0, 0), math.nan, env, 10.0)


class TestPointInCollision:
    def test_wall_inside_radius(self):
        env = Environment((seg(0.5, -5, 0.5, 5),))
        assert point_in_collision((0, 0), 1.0, env)

    def test_wall_outside_radius(self):
        env = Environment((seg(5, -5, 5, 5),))
        assert not point_in_collision((0, 0), 1.0, env)

    def test_boundary_counts_as_collision(self):
        env = Environment((seg(1.0, -5, 1.0, 5),))
        assert point_in_collision((0, 0), 1.0, env)

    def test_endpoint_distance_used_past_segment_end(self):
        env = Environment((seg(2, 1, 5, 1),))
        # nearest point is the endpoint (2, 1), at distance sqrt(5)
        assert not point_in_collision((0, 0), 2.0, env)
        assert point_in_collision((0, 0), math.sqrt(5.0), env)

    def test_negative_radius_rejected(self):
        env = Environment((seg(1, -1, 1, 1),))
        with pytest.raises(ValueError):
            point_in_collision((0, 0), -0.1, env)
