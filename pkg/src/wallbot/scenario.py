"""Scenario files: the walled world, start pose, goal and config overrides.

The format is line-based text, human-authorable and diff-friendly:

    # comment
    WALL x1 y1 x2 y2          # one wall segment, inches
    START x y heading_deg     # required, exactly once
    GOAL x y radius           # optional goal disc
    SET key value             # config override, e.g. SET th 95

Recognized SET keys (defaults in parentheses):

    th (95)                     binary ADC threshold
    max_range (60)              sensor range, inches
    noise_amplitude (0)         ADC jitter +/-k, 0 = off
    noise_seed (0)              jitter seed
    calibration (builtin)       path to a calibration file, relative to the scenario
    steps_per_6in (1400)        stepper counts per 6 inches
    wheelbase (10)              inches
    body_radius (3)             collision radius, inches
    turn_steer_deg (60)         steer magnitude for turns, degrees
    activation_threshold (0.8)  network decision threshold
    turn_heading_deg (90)       heading change a turn targets, degrees
    collision_check_interval (10)  steps between collision checks
    forward_steps (steps_per_6in)  straight-maneuver step count
    max_ticks (100)             run-loop budget
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .ann import DecisionConfig
from .controller import ControllerConfig
from .sensor import SensorConfig, load_calibration
from .vehicle import MotionConfig
from .world import Environment, Point, Pose, WallSegment, point_in_collision


class ScenarioParseError(ValueError):
    """Malformed scenario line; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ScenarioInvariantError(ValueError):
    """Structurally valid file describing an unusable scenario."""


@dataclass(frozen=True)
class Scenario:
    """Everything a run needs: world, start, goal, configs and tick budget."""

    env: Environment
    start: Pose
    goal: tuple[Point, float] | None = None
    sensor: SensorConfig = field(default_factory=SensorConfig)
    motion: MotionConfig = field(default_factory=MotionConfig)
    decision: DecisionConfig = field(default_factory=DecisionConfig)
    controller: ControllerConfig = field(default_factory=ControllerConfig)
    max_ticks: int = 100

    def __post_init__(self) -> None:
        if self.max_ticks < 1:
            raise ScenarioInvariantError("max_ticks must be at least 1")
        if self.goal is not None:
            (gx, gy), radius = self.goal
            if not radius > 0:
                raise ScenarioInvariantError("goal radius must be positive")
            object.__setattr__(self, "goal", ((float(gx), float(gy)), float(radius)))
        if point_in_collision(self.start.position, self.motion.body_radius, self.env):
            raise ScenarioInvariantError(
                f"start pose ({self.start.x}, {self.start.y}) is in collision"
            )


_FLOAT_KEYS = {"max_range", "wheelbase", "body_radius", "activation_threshold"}
_INT_KEYS = {
    "th",
    "noise_amplitude",
    "noise_seed",
    "steps_per_6in",
    "collision_check_interval",
    "forward_steps",
    "max_ticks",
}
_DEG_KEYS = {"turn_steer_deg", "turn_heading_deg"}


def _parse_floats(parts: list[str], n: int, line_no: int, what: str) -> list[float]:
    if len(parts) != n:
        raise ScenarioParseError(line_no, f"{what} takes {n} numbers, got {len(parts)}")
    values = []
    for p in parts:
        try:
            values.append(float(p))
        except ValueError:
            raise ScenarioParseError(line_no, f"bad number {p!r}") from None
    return values


def parse_scenario(text: str, base_dir: Path | None = None) -> Scenario:
    """Parse scenario text; ``base_dir`` resolves relative calibration paths."""
    walls: list[WallSegment] = []
    start: Pose | None = None
    goal: tuple[Point, float] | None = None
    overrides: dict[str, object] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *parts = line.split()
        keyword = keyword.upper()
        if keyword == "WALL":
            x1, y1, x2, y2 = _parse_floats(parts, 4, line_no, "WALL")
            try:
                walls.append(WallSegment((x1, y1), (x2, y2)))
            except ValueError as exc:
                raise ScenarioParseError(line_no, str(exc)) from None
        elif keyword == "START":
            if start is not None:
                raise ScenarioParseError(line_no, "duplicate START")
            x, y, heading_deg = _parse_floats(parts, 3, line_no, "START")
            try:
                start = Pose(x, y, math.radians(heading_deg))
            except ValueError as exc:
                raise ScenarioParseError(line_no, str(exc)) from None
        elif keyword == "GOAL":
            if goal is not None:
                raise ScenarioParseError(line_no, "duplicate GOAL")
            x, y, radius = _parse_floats(parts, 3, line_no, "GOAL")
            goal = ((x, y), radius)
        elif keyword == "SET":
            if len(parts) != 2:
                raise ScenarioParseError(line_no, "SET takes a key and a value")
            key, value = parts[0].lower(), parts[1]
            if key == "calibration":
                overrides[key] = value
                continue
            if key in _INT_KEYS:
                convert = int
            elif key in _FLOAT_KEYS:
                convert = float
            elif key in _DEG_KEYS:
                convert = lambda v: math.radians(float(v))  # noqa: E731
            else:
                raise ScenarioParseError(line_no, f"unknown SET key {key!r}")
            try:
                overrides[key] = convert(value)
            except ValueError:
                raise ScenarioParseError(line_no, f"bad value {value!r} for {key}") from None
        else:
            raise ScenarioParseError(line_no, f"unknown record {keyword!r}")

    if not walls:
        raise ScenarioInvariantError("scenario has no walls")
    if start is None:
        raise ScenarioInvariantError("scenario has no START")

    sensor_kwargs: dict[str, object] = {}
    for src, dst in (("th", "th"), ("max_range", "max_range"),
                     ("noise_amplitude", "noise_amplitude"), ("noise_seed", "noise_seed")):
        if src in overrides:
            sensor_kwargs[dst] = overrides[src]
    if "calibration" in overrides:
        cal_path = Path(str(overrides["calibration"]))
        if base_dir is not None and not cal_path.is_absolute():
            cal_path = base_dir / cal_path
        sensor_kwargs["calibration"] = load_calibration(cal_path)

    motion_kwargs: dict[str, object] = {}
    for src, dst in (("steps_per_6in", "steps_per_6in"), ("wheelbase", "wheelbase"),
                     ("body_radius", "body_radius"), ("turn_steer_deg", "turn_steer_angle")):
        if src in overrides:
            motion_kwargs[dst] = overrides[src]

    controller_kwargs: dict[str, object] = {}
    for src, dst in (("turn_heading_deg", "turn_heading_change"),
                     ("collision_check_interval", "collision_check_interval"),
                     ("forward_steps", "forward_steps")):
        if src in overrides:
            controller_kwargs[dst] = overrides[src]

    decision_kwargs: dict[str, object] = {}
    if "activation_threshold" in overrides:
        decision_kwargs["activation_threshold"] = overrides["activation_threshold"]

    try:
        return Scenario(
            env=Environment(tuple(walls)),
            start=start,
            goal=goal,
            sensor=SensorConfig(**sensor_kwargs),
            motion=MotionConfig(**motion_kwargs),
            decision=DecisionConfig(**decision_kwargs),
            controller=ControllerConfig(**controller_kwargs),
            max_ticks=int(overrides.get("max_ticks", 100)),
        )
    except ScenarioInvariantError:
        raise
    except ValueError as exc:
        raise ScenarioInvariantError(str(exc)) from None


def load_scenario(path) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), base_dir=path.parent)


def dump_scenario(scenario: Scenario) -> str:
    """Write a scenario back out as text; load(dump(s)) is byte-stable.

    Config overrides are emitted unconditionally so the file stands alone;
    a custom calibration table cannot be referenced back to a path and is
    not represented.
    """
    lines = ["# wallbot scenario v1"]
    for wall in scenario.env.walls:
        lines.append(f"WALL {wall.a[0]!r} {wall.a[1]!r} {wall.b[0]!r} {wall.b[1]!r}")
    lines.append(
        f"START {scenario.start.x!r} {scenario.start.y!r} {math.degrees(scenario.start.heading)!r}"
    )
    if scenario.goal is not None:
        (gx, gy), radius = scenario.goal
        lines.append(f"GOAL {gx!r} {gy!r} {radius!r}")
    lines.append(f"SET th {scenario.sensor.th}")
    lines.append(f"SET max_range {scenario.sensor.max_range!r}")
    lines.append(f"SET noise_amplitude {scenario.sensor.noise_amplitude}")
    lines.append(f"SET noise_seed {scenario.sensor.noise_seed}")
    lines.append(f"SET steps_per_6in {scenario.motion.steps_per_6in}")
    lines.append(f"SET wheelbase {scenario.motion.wheelbase!r}")
    lines.append(f"SET body_radius {scenario.motion.body_radius!r}")
    lines.append(f"SET turn_steer_deg {math.degrees(scenario.motion.turn_steer_angle)!r}")
    lines.append(f"SET activation_threshold {scenario.decision.activation_threshold!r}")
    lines.append(f"SET turn_heading_deg {math.degrees(scenario.controller.turn_heading_change)!r}")
    lines.append(f"SET collision_check_interval {scenario.controller.collision_check_interval}")
    if scenario.controller.forward_steps is not None:
        lines.append(f"SET forward_steps {scenario.controller.forward_steps}")
    lines.append(f"SET max_ticks {scenario.max_ticks}")
    return "\n".join(lines) + "\n"


BUILTIN_SCENARIOS = ("reference", "deadend")


def builtin_scenario_text(name: str) -> str:
    """Source text of a bundled scenario (``reference`` or ``deadend``)."""
    if name not in BUILTIN_SCENARIOS:
        raise ValueError(f"unknown builtin scenario {name!r}; have {BUILTIN_SCENARIOS}")
    return resources.files("wallbot").joinpath(f"data/{name}.scn").read_text()


def load_builtin_scenario(name: str) -> Scenario:
    return parse_scenario(builtin_scenario_text(name))
