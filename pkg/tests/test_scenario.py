import math

import pytest

from wallbot.scenario import (
    Scenario,
    ScenarioInvariantError,
    ScenarioParseError,
    dump_scenario,
    load_builtin_scenario,
    load_scenario,
    parse_scenario,
)

MINIMAL = "WALL 0 10 100 10\nWALL 0 -10 100 -10\nSTART 5 0 0\n"


class TestParseScenario:
    def test_minimal_loads(self):
        sc = parse_scenario(MINIMAL)
        assert len(sc.env.walls) == 2
        assert sc.start.x == 5.0
        assert sc.goal is None
        assert sc.max_ticks == 100

    def test_reference_scenario_has_right_angle_corners(self):
        sc = load_builtin_scenario("reference")
        assert sc.goal is not None
        for a, b in zip(sc.env.walls, sc.env.walls[1:]):
            if a.b == b.a:  # joined corner
                va = (a.b[0] - a.a[0], a.b[1] - a.a[1])
                vb = (b.b[0] - b.a[0], b.b[1] - b.a[1])
                assert va[0] * vb[0] + va[1] * vb[1] == pytest.approx(0.0)

    def test_deadend_scenario_loads(self):
        sc = load_builtin_scenario("deadend")
        assert sc.goal is None

    def test_zero_walls_rejected(self):
        with pytest.raises(ScenarioInvariantError):
            parse_scenario("START 0 0 0\n")

    def test_missing_start_rejected(self):
        with pytest.raises(ScenarioInvariantError):
            parse_scenario("WALL 0 0 1 0\n")

    def test_wall_with_three_coordinates_is_parse_error_at_line(self):
        text = "WALL 0 10 100 10\nWALL 0 -10 100\nSTART 5 0 0\n"
        with pytest.raises(ScenarioParseError) as exc:
            parse_scenario(text)
        assert exc.value.line_no == 2

    def test_unknown_record_rejected(self):
        with pytest.raises(ScenarioParseError):
            parse_scenario(MINIMAL + "TELEPORT 1 2\n")

    def test_unknown_set_key_rejected(self):
        with pytest.raises(ScenarioParseError, match="unknown SET key"):
            parse_scenario(MINIMAL + "SET warp_speed 9\n")

    def test_unparseable_set_value_rejected(self):
        with pytest.raises(ScenarioParseError, match="bad value"):
            parse_scenario(MINIMAL + "SET th ninety\n")

    def test_duplicate_start_rejected(self):
        with pytest.raises(ScenarioParseError):
            parse_scenario(MINIMAL + "START 6 0 0\n")

    def test_non_finite_start_is_parse_error_with_line(self):
        with pytest.raises(ScenarioParseError) as exc:
            parse_scenario("WALL 0 10 100 10\nSTART nan 0 0\n")
        assert exc.value.line_no == 2

    def test_start_in_collision_rejected(self):
        text = "WALL 0 1 100 1\nWALL 0 -10 100 -10\nSTART 5 0 0\n"
        with pytest.raises(ScenarioInvariantError, match="collision"):
            parse_scenario(text)

    def test_zero_max_ticks_rejected(self):
        with pytest.raises(ScenarioInvariantError):
            parse_scenario(MINIMAL + "SET max_ticks 0\n")

    def test_goal_radius_must_be_positive(self):
        with pytest.raises(ScenarioInvariantError):
            parse_scenario(MINIMAL + "GOAL 50 0 0\n")

    def test_set_overrides_propagate(self):
        text = MINIMAL + (
            "SET th 120\nSET max_range 40\nSET steps_per_6in 700\nSET wheelbase 8\n"
            "SET body_radius 2\nSET turn_steer_deg 45\nSET activation_threshold 0.7\n"
            "SET turn_heading_deg 45\nSET collision_check_interval 5\n"
            "SET forward_steps 350\nSET max_ticks 9\n"
        )
        sc = parse_scenario(text)
        assert sc.sensor.th == 120
        assert sc.sensor.max_range == 40.0
        assert sc.motion.steps_per_6in == 700
        assert sc.motion.wheelbase == 8.0
        assert sc.motion.body_radius == 2.0
        assert sc.motion.turn_steer_angle == pytest.approx(math.radians(45))
        assert sc.decision.activation_threshold == 0.7
        assert sc.controller.turn_heading_change == pytest.approx(math.radians(45))
        assert sc.controller.collision_check_interval == 5
        assert sc.controller.forward_steps == 350
        assert sc.max_ticks == 9

    def test_heading_in_degrees(self):
        sc = parse_scenario("WALL 0 10 100 10\nWALL 0 -10 100 -10\nSTART 5 0 90\n")
        assert sc.start.heading == pytest.approx(math.pi / 2)

    def test_calibration_file_override(self, tmp_path):
        cal = tmp_path / "cal.txt"
        cal.write_text("6 200\n12 100\n")
        scn = tmp_path / "s.scn"
        scn.write_text(MINIMAL + "SET calibration cal.txt\n")
        sc = load_scenario(scn)
        assert sc.sensor.calibration.anchors == ((6.0, 200), (12.0, 100))


class TestDumpScenario:
    def test_dump_load_is_byte_stable(self):
        sc = parse_scenario(MINIMAL + "GOAL 90 0 5\nSET th 110\nSET max_ticks 42\n")
        text1 = dump_scenario(sc)
        sc2 = parse_scenario(text1)
        assert dump_scenario(sc2) == text1

    def test_dump_load_preserves_fields(self):
        sc = load_builtin_scenario("reference")
        sc2 = parse_scenario(dump_scenario(sc))
        assert sc2.env.walls == sc.env.walls
        assert sc2.start == sc.start
        assert sc2.goal == sc.goal
        assert sc2.max_ticks == sc.max_ticks
        assert sc2.sensor == sc.sensor
        assert sc2.motion == sc.motion


class TestScenarioInvariants:
    def test_direct_construction_checks_collision(self):
        from wallbot.world import Environment, Pose, WallSegment

        env = Environment((WallSegment((0, 1), (10, 1)),))
        with pytest.raises(ScenarioInvariantError):
            Scenario(env=env, start=Pose(0, 0, 0))
