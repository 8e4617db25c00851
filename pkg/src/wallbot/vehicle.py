"""Car-like motion in stepper-motor quanta.

One drive motor advances the vehicle a fixed arc length per step
(6 inches per ``steps_per_6in`` steps, 1400 by default); one steering
actuator holds a fixed wheel angle for the whole command. Motion follows
the kinematic bicycle model with the pose at the rear axle: per step,

    heading += (step_length / wheelbase) * tan(steer)
    position advances step_length along the updated heading

The per-step update order is fixed so trajectories are bit-reproducible,
and driving the same steps in one command or split across several gives
bitwise-identical poses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .world import Pose, normalize_angle

DEFAULT_SCAN_ANGLES = (
    math.radians(-90.0),
    math.radians(-45.0),
    0.0,
    math.radians(45.0),
    math.radians(90.0),
)


class SteerOutOfRangeError(ValueError):
    """Steer angle at or beyond 90 degrees has no turning radius."""


@dataclass(frozen=True)
class MotionConfig:
    """Drive-train calibration and scanner geometry.

    ``steps_per_6in`` is the measured number of stepper counts that move the
    vehicle 6 inches. ``turn_steer_angle`` is the wheel angle magnitude used
    for turn maneuvers; 45 degrees traces an arc wide enough to graze walls,
    so 60 degrees is the default.
    """

    steps_per_6in: int = 1400
    wheelbase: float = 10.0
    body_radius: float = 3.0
    turn_steer_angle: float = math.radians(60.0)
    scan_angles: tuple[float, float, float, float, float] = DEFAULT_SCAN_ANGLES

    def __post_init__(self) -> None:
        if self.steps_per_6in < 1:
            raise ValueError("steps_per_6in must be at least 1")
        if not self.wheelbase > 0:
            raise ValueError("wheelbase must be positive")
        if self.body_radius < 0:
            raise ValueError("body_radius must be non-negative")
        if not 0.0 < self.turn_steer_angle < math.pi / 2:
            raise ValueError("turn_steer_angle must be in (0, 90) degrees")
        angles = tuple(float(a) for a in self.scan_angles)
        if len(angles) != 5 or any(b <= a for a, b in zip(angles, angles[1:])):
            raise ValueError("scan_angles must be 5 strictly increasing angles")
        object.__setattr__(self, "scan_angles", angles)


@dataclass(frozen=True)
class StepCommand:
    """A number of motor steps at one fixed steer angle."""

    n_steps: int
    steer_angle: float = 0.0

    def __post_init__(self) -> None:
        if self.n_steps < 0:
            raise ValueError("n_steps must be non-negative")


def step_distance(cfg: MotionConfig) -> float:
    """Arc length of a single motor step, in inches."""
    return 6.0 / cfg.steps_per_6in


def drive(pose: Pose, cmd: StepCommand, cfg: MotionConfig) -> Pose:
    """Integrate ``cmd.n_steps`` quantized bicycle-model updates."""
    if abs(cmd.steer_angle) >= math.pi / 2:
        raise SteerOutOfRangeError(f"steer angle {cmd.steer_angle} rad out of range")
    if cmd.n_steps == 0:
        return pose
    s = step_distance(cfg)
    dh = (s / cfg.wheelbase) * math.tan(cmd.steer_angle)
    x, y, h = pose.x, pose.y, pose.heading
    for _ in range(cmd.n_steps):
        h += dh
        if h >= math.pi or h < -math.pi:  # wrap lazily; in-range values stay bit-exact
            h = normalize_angle(h)
        x += s * math.cos(h)
        y += s * math.sin(h)
    return Pose(x, y, h)


def turn_step_count(cfg: MotionConfig, heading_change: float) -> int:
    """Smallest step count whose cumulative heading change reaches the target.

    Uses the turn steer angle from ``cfg``; each step changes the heading by
    the same increment, so this is a quantized ceiling of the continuous
    turn.
    """
    if not heading_change > 0:
        raise ValueError("heading_change must be positive")
    dh = (step_distance(cfg) / cfg.wheelbase) * math.tan(cfg.turn_steer_angle)
    n = max(1, math.ceil(heading_change / dh))
    # guard the ceil against float rounding at the boundary
    while n > 1 and (n - 1) * dh >= heading_change:
        n -= 1
    while n * dh < heading_change:
        n += 1
    return n
