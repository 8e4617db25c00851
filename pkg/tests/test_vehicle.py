import math

import pytest

from wallbot.vehicle import (
    MotionConfig,
    StepCommand,
    SteerOutOfRangeError,
    drive,
    step_distance,
    turn_step_count,
)
from wallbot.world import Pose

DEFAULT = MotionConfig()


def oracle_turn_steps(cfg: MotionConfig, target: float) -> int:
    """Independent oracle: accumulate per-step heading until it crosses target."""
    dh = (step_distance(cfg) / cfg.wheelbase) * math.tan(cfg.turn_steer_angle)
    h, n = 0.0, 0
    while h < target:
        h += dh
        n += 1
    return n


class TestStepDistance:
    @pytest.mark.parametrize(
        "steps,expected", [(1400, 6.0 / 1400), (6, 1.0), (1, 6.0)]
    )
    def test_examples(self, steps, expected):
        assert step_distance(MotionConfig(steps_per_6in=steps)) == pytest.approx(expected, rel=1e-15)


class TestDrive:
    def test_full_calibrated_run_moves_six_inches(self):
        end = drive(Pose(0, 0, 0), StepCommand(1400, 0.0), DEFAULT)
        assert end.x == pytest.approx(6.0, rel=1e-12)
        assert end.y == 0.0
        assert end.heading == 0.0

    def test_zero_steps_identity(self):
        pose = Pose(3, -2, 0.7)
        assert drive(pose, StepCommand(0, 0.3), DEFAULT) == pose

    def test_straight_displacement_exactness_along_heading(self):
        h = 0.9
        n = 500
        end = drive(Pose(0, 0, h), StepCommand(n, 0.0), DEFAULT)
        d = n * step_distance(DEFAULT)
        assert end.x == pytest.approx(d * math.cos(h), rel=1e-12)
        assert end.y == pytest.approx(d * math.sin(h), rel=1e-12)
        assert end.heading == h

    def test_composition_is_bitwise(self):
        steer = math.radians(35)
        for n1, n2 in [(0, 100), (1, 1), (137, 263), (1400, 718)]:
            split = drive(drive(Pose(0, 0, 0), StepCommand(n1, steer), DEFAULT), StepCommand(n2, steer), DEFAULT)
            whole = drive(Pose(0, 0, 0), StepCommand(n1 + n2, steer), DEFAULT)
            assert (split.x, split.y, split.heading) == (whole.x, whole.y, whole.heading)

    def test_left_right_mirror_symmetry(self):
        steer = math.radians(60)
        n = turn_step_count(DEFAULT, math.pi / 2)
        left = drive(Pose(0, 0, 0), StepCommand(n, -steer), DEFAULT)
        right = drive(Pose(0, 0, 0), StepCommand(n, steer), DEFAULT)
        assert left.x == pytest.approx(right.x, abs=1e-9)
        assert left.y == pytest.approx(-right.y, abs=1e-9)
        assert left.heading == pytest.approx(-right.heading, abs=1e-9)

    def test_heading_stays_normalized_through_long_turns(self):
        pose = drive(Pose(0, 0, 0), StepCommand(20000, math.radians(60)), DEFAULT)
        assert -math.pi <= pose.heading < math.pi

    def test_steer_out_of_range(self):
        with pytest.raises(SteerOutOfRangeError):
            drive(Pose(0, 0, 0), StepCommand(10, math.pi / 2), DEFAULT)


class TestTurnStepCount:
    def test_tiny_heading_change_needs_one_step(self):
        assert turn_step_count(DEFAULT, 1e-12) == 1

    def test_quarter_turn_matches_integration_oracle(self):
        # frozen from the oracle below: 2117 steps for 90 degrees at the defaults
        n = turn_step_count(DEFAULT, math.pi / 2)
        assert n == oracle_turn_steps(DEFAULT, math.pi / 2)
        assert n == 2117

    def test_quantized_crossing_verified_by_drive(self):
        n = turn_step_count(DEFAULT, math.pi / 2)
        dh = (step_distance(DEFAULT) / DEFAULT.wheelbase) * math.tan(DEFAULT.turn_steer_angle)
        assert (n - 1) * dh < math.pi / 2 <= n * dh
        under = drive(Pose(0, 0, 0), StepCommand(n - 1, DEFAULT.turn_steer_angle), DEFAULT)
        over = drive(Pose(0, 0, 0), StepCommand(n, DEFAULT.turn_steer_angle), DEFAULT)
        assert abs(under.heading) < math.pi / 2 <= abs(over.heading)

    def test_doubling_target_at_most_doubles_plus_one(self):
        for target in (0.3, math.pi / 2, 1.9):
            n1 = turn_step_count(DEFAULT, target)
            n2 = turn_step_count(DEFAULT, 2 * target)
            assert n2 <= 2 * n1 + 1
            assert n2 >= n1

    def test_requires_positive_target(self):
        with pytest.raises(ValueError):
            turn_step_count(DEFAULT, 0.0)


class TestMotionConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            MotionConfig(steps_per_6in=0)
        with pytest.raises(ValueError):
            MotionConfig(wheelbase=0.0)
        with pytest.raises(ValueError):
            MotionConfig(turn_steer_angle=math.pi / 2)
        with pytest.raises(ValueError):
            MotionConfig(scan_angles=(0.0, 1.0, 2.0, 3.0))
        with pytest.raises(ValueError):
            StepCommand(-1)
