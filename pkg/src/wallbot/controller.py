"""The scan-decide-act loop.

Each tick scans the five angles in the mechanical sweep order, thresholds
the readings, asks the network for a decision, and executes one motion
quantum: 6 inches forward for straight, a quantized 90-degree arc for
turns, or a halt. The network is the decision authority, with two safety
rails on top: the all-ones bit pattern always stops regardless of the
network, and an undecided network falls back to the rule form of the
decision table (logged, so traces show it happened).
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, replace
from enum import Enum

from .ann import Decision, DecisionConfig, Network, classify, _validate_bits
from .sensor import ScanVector, SensorConfig, sense
from .vehicle import MotionConfig, StepCommand, drive, turn_step_count
from .world import Environment, Point, Pose, point_in_collision

logger = logging.getLogger(__name__)

#: Mechanical sweep order as indices into the scan-angle tuple
#: (-90, -45, 0, +45, +90): center first, sweep out to the minus side,
#: return through center, sweep out to the plus side.
SCAN_ACQUISITION_ORDER = (2, 1, 0, 2, 3, 4)


class HaltReason(Enum):
    STOP = "stop"
    COLLISION = "collision"
    GOAL = "goal"
    BUDGET = "budget"


class ManeuverKind(Enum):
    FORWARD = "forward"
    TURN_LEFT = "turn_left"
    TURN_RIGHT = "turn_right"
    HALT = "halt"


@dataclass(frozen=True)
class ControllerConfig:
    """Loop policy knobs.

    ``turn_heading_change`` is the heading change a turn maneuver targets
    (90 degrees, matching the right-angled corners). Collision is checked
    every ``collision_check_interval`` steps during a maneuver and always
    at its final pose. ``forward_steps`` overrides the straight quantum
    (defaults to one 6-inch slot, i.e. ``steps_per_6in``).
    """

    turn_heading_change: float = math.pi / 2
    collision_check_interval: int = 10
    forward_steps: int | None = None

    def __post_init__(self) -> None:
        if not self.turn_heading_change > 0:
            raise ValueError("turn_heading_change must be positive")
        if self.collision_check_interval < 1:
            raise ValueError("collision_check_interval must be at least 1")
        if self.forward_steps is not None and self.forward_steps < 0:
            raise ValueError("forward_steps must be non-negative")


@dataclass(frozen=True)
class ManeuverPlan:
    kind: ManeuverKind
    steps: int
    steer: float = 0.0

    def __post_init__(self) -> None:
        if self.steps < 0:
            raise ValueError("steps must be non-negative")
        if self.kind is ManeuverKind.HALT and self.steps != 0:
            raise ValueError("halt plans take no steps")


@dataclass(frozen=True)
class ControllerState:
    """One snapshot of the loop. ``halted`` never reverts to False."""

    pose: Pose
    step_index: int = 0
    last_scan: ScanVector | None = None
    last_decision: Decision | None = None
    last_fallback: bool = False
    halted: bool = False
    halt_reason: HaltReason | None = None

    @classmethod
    def initial(cls, pose: Pose) -> "ControllerState":
        return cls(pose=pose)


def scan_sequence(
    pose: Pose,
    env: Environment,
    scfg: SensorConfig,
    mcfg: MotionConfig,
    rng: random.Random | None = None,
) -> ScanVector:
    """Acquire the five readings in mechanical sweep order.

    The center angle is acquired twice (once at the start, once passing
    back through center); the first acquisition is the one retained. The
    pose never moves while scanning.
    """
    readings: dict[int, int] = {}
    for idx in SCAN_ACQUISITION_ORDER:
        value = sense(pose, mcfg.scan_angles[idx], env, scfg, rng)
        if idx not in readings:
            readings[idx] = value
    return ScanVector.from_adc(tuple(readings[i] for i in range(5)), scfg.th)


def oracle_decide(bits) -> Decision:
    """Rule form of the decision table; total over all 32 bit patterns.

    Blocked on the sides but open ahead means straight; blocked ahead means
    turning toward whichever side is open, left side first; blocked ahead
    and on both sides means stop. Restricted to the table's 14 rows this
    reproduces the table exactly.
    """
    x1, _, x3, _, x5 = _validate_bits(bits)
    if x1 and x3 and x5:
        return Decision.STOP
    if not x3:
        return Decision.STRAIGHT
    if not x1:
        return Decision.LEFT
    return Decision.RIGHT


def decide(net: Network, bits, dcfg: DecisionConfig | None = None) -> tuple[Decision, bool]:
    """Network decision with the safety rails applied.

    Returns (decision, fallback_used). The all-ones pattern is a hard stop
    no matter what the network says; an undecided network defers to
    :func:`oracle_decide` and the fallback is flagged and logged.
    """
    bits = _validate_bits(bits)
    if all(bits):
        return Decision.STOP, False
    decision = classify(net, bits, dcfg)
    if decision is None:
        decision = oracle_decide(bits)
        logger.info("network undecided on %s; falling back to table rule -> %s", bits, decision.value)
        return decision, True
    return decision, False


def plan(decision: Decision, mcfg: MotionConfig, ccfg: ControllerConfig | None = None) -> ManeuverPlan:
    """Turn a decision into a step count and steer angle.

    Straight advances one 6-inch sensor slot. Turns steer at the configured
    angle for however many steps a 90-degree heading change needs; left is
    negative steer, right positive.
    """
    ccfg = ccfg or ControllerConfig()
    if decision is Decision.STRAIGHT:
        steps = ccfg.forward_steps if ccfg.forward_steps is not None else mcfg.steps_per_6in
        return ManeuverPlan(ManeuverKind.FORWARD, steps, 0.0)
    if decision is Decision.LEFT:
        return ManeuverPlan(
            ManeuverKind.TURN_LEFT,
            turn_step_count(mcfg, ccfg.turn_heading_change),
            -mcfg.turn_steer_angle,
        )
    if decision is Decision.RIGHT:
        return ManeuverPlan(
            ManeuverKind.TURN_RIGHT,
            turn_step_count(mcfg, ccfg.turn_heading_change),
            mcfg.turn_steer_angle,
        )
    return ManeuverPlan(ManeuverKind.HALT, 0)


def _goal_reached(pose: Pose, goal: tuple[Point, float] | None) -> bool:
    if goal is None:
        return False
    (gx, gy), radius = goal
    return math.hypot(pose.x - gx, pose.y - gy) <= radius


def tick(
    state: ControllerState,
    env: Environment,
    net: Network,
    *,
    sensor: SensorConfig,
    motion: MotionConfig,
    decision: DecisionConfig | None = None,
    controller: ControllerConfig | None = None,
    goal: tuple[Point, float] | None = None,
    rng: random.Random | None = None,
) -> ControllerState:
    """One scan-decide-act cycle; returns the successor state.

    Maneuvers are committed (no mid-maneuver re-planning) but collision is
    checked along the way; a collision halts at the offending pose. A stop
    decision halts with the pose unchanged; arriving inside the goal region
    halts after the maneuver completes.
    """
    if state.halted:
        raise ValueError("tick called on a halted state")
    ccfg = controller or ControllerConfig()
    scan = scan_sequence(state.pose, env, sensor, motion, rng)
    chosen, fallback = decide(net, scan.bits, decision)
    maneuver = plan(chosen, motion, ccfg)

    pose = state.pose
    halt: HaltReason | None = None
    if maneuver.kind is ManeuverKind.HALT:
        halt = HaltReason.STOP
    else:
        remaining = maneuver.steps
        while remaining > 0 and halt is None:
            chunk = min(ccfg.collision_check_interval, remaining)
            pose = drive(pose, StepCommand(chunk, maneuver.steer), motion)
            remaining -= chunk
            if point_in_collision(pose.position, motion.body_radius, env):
                halt = HaltReason.COLLISION
        if halt is None and _goal_reached(pose, goal):
            halt = HaltReason.GOAL

    return replace(
        state,
        pose=pose,
        step_index=state.step_index + 1,
        last_scan=scan,
        last_decision=chosen,
        last_fallback=fallback,
        halted=halt is not None,
        halt_reason=halt,
    )
