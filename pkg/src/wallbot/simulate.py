"""Run loop, trace records, CSV persistence and SVG trajectory plots.

Everything emitted here is byte-deterministic for fixed inputs: floats are
written with repr (shortest round-trip form) in traces and fixed precision
in SVG, and no timestamps or random identifiers appear anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from pathlib import Path

from .ann import Decision, Network
from .controller import ControllerState, HaltReason, tick
from .scenario import Scenario
from .world import Pose


@dataclass(frozen=True)
class TraceRecord:
    """What one tick saw and did."""

    tick: int
    pose_before: Pose
    pose_after: Pose
    adc: tuple[int, int, int, int, int]
    bits: tuple[int, int, int, int, int]
    decision: Decision
    fallback_used: bool
    halted_reason: HaltReason | None


def run(scenario: Scenario, net: Network) -> list[TraceRecord]:
    """Iterate ticks until a halt or the tick budget runs out.

    The final record always carries a halt reason: the controller's own
    (stop, collision, goal) or BUDGET when max_ticks elapsed mid-run.
    """
    state = ControllerState.initial(scenario.start)
    rng: random.Random | None = None
    if scenario.sensor.noise_amplitude > 0:
        rng = random.Random(scenario.sensor.noise_seed)
    trace: list[TraceRecord] = []
    for t in range(scenario.max_ticks):
        before = state.pose
        state = tick(
            state,
            scenario.env,
            net,
            sensor=scenario.sensor,
            motion=scenario.motion,
            decision=scenario.decision,
            controller=scenario.controller,
            goal=scenario.goal,
            rng=rng,
        )
        assert state.last_scan is not None and state.last_decision is not None
        trace.append(
            TraceRecord(
                tick=t,
                pose_before=before,
                pose_after=state.pose,
                adc=state.last_scan.adc,
                bits=state.last_scan.bits,
                decision=state.last_decision,
                fallback_used=state.last_fallback,
                halted_reason=state.halt_reason,
            )
        )
        if state.halted:
            break
    if trace and trace[-1].halted_reason is None:
        trace[-1] = replace(trace[-1], halted_reason=HaltReason.BUDGET)
    return trace


# --- CSV -------------------------------------------------------------------

TRACE_COLUMNS = (
    "tick,x0,y0,h0,x1,y1,h1,"
    "adc1,adc2,adc3,adc4,adc5,"
    "x1bit,x2bit,x3bit,x4bit,x5bit,"
    "decision,fallback,halt"
)


def trace_csv(trace: list[TraceRecord]) -> str:
    """Render a trace as CSV text (fixed column set, repr floats)."""
    if not trace:
        raise ValueError("trace is empty")
    lines = [TRACE_COLUMNS]
    for rec in trace:
        halt = rec.halted_reason.value if rec.halted_reason is not None else ""
        lines.append(
            ",".join(
                [
                    str(rec.tick),
                    repr(rec.pose_before.x),
                    repr(rec.pose_before.y),
                    repr(rec.pose_before.heading),
                    repr(rec.pose_after.x),
                    repr(rec.pose_after.y),
                    repr(rec.pose_after.heading),
                    *[str(v) for v in rec.adc],
                    *[str(b) for b in rec.bits],
                    rec.decision.value,
                    str(int(rec.fallback_used)),
                    halt,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def emit_trace_csv(trace: list[TraceRecord], path) -> None:
    path = Path(path)
    try:
        path.write_text(trace_csv(trace), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write trace to {path}: {exc}") from exc


# --- SVG -------------------------------------------------------------------

_SVG_MARGIN = 6.0  # inches of padding around the world bounds


def _f(v: float) -> str:
    return f"{v:.3f}"


def trace_svg(scenario: Scenario, trace: list[TraceRecord]) -> str:
    """Render walls, the driven path and the halt marker as standalone SVG.

    World y points up, SVG y points down, so y is flipped in the transform.
    Rendered by hand (no plotting library) to keep the bytes deterministic.
    """
    if not trace:
        raise ValueError("trace is empty")
    xmin, ymin, xmax, ymax = scenario.env.bounds
    m = _SVG_MARGIN
    width = (xmax - xmin) + 2 * m
    height = (ymax - ymin) + 2 * m

    def sx(x: float) -> float:
        return x - xmin + m

    def sy(y: float) -> float:
        return ymax - y + m

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_f(width)} {_f(height)}" '
        f'width="{_f(width * 8)}" height="{_f(height * 8)}">',
        f'<rect x="0" y="0" width="{_f(width)}" height="{_f(height)}" fill="#fbfaf7"/>',
    ]
    if scenario.goal is not None:
        (gx, gy), radius = scenario.goal
        parts.append(
            f'<circle cx="{_f(sx(gx))}" cy="{_f(sy(gy))}" r="{_f(radius)}" '
            f'fill="#b7e4c7" stroke="#2d6a4f" stroke-width="0.3"/>'
        )
    for wall in scenario.env.walls:
        parts.append(
            f'<line x1="{_f(sx(wall.a[0]))}" y1="{_f(sy(wall.a[1]))}" '
            f'x2="{_f(sx(wall.b[0]))}" y2="{_f(sy(wall.b[1]))}" '
            f'stroke="#343330" stroke-width="0.8" stroke-linecap="square"/>'
        )
    points = [trace[0].pose_before] + [rec.pose_after for rec in trace]
    polyline = " ".join(f"{_f(sx(p.x))},{_f(sy(p.y))}" for p in points)
    parts.append(
        f'<polyline points="{polyline}" fill="none" stroke="#1d6fb8" '
        f'stroke-width="0.5" stroke-linejoin="round"/>'
    )
    start = points[0]
    parts.append(
        f'<circle cx="{_f(sx(start.x))}" cy="{_f(sy(start.y))}" r="1.2" '
        f'fill="#1d6fb8" stroke="none"/>'
    )
    last = trace[-1]
    hx, hy = sx(last.pose_after.x), sy(last.pose_after.y)
    if last.halted_reason is HaltReason.COLLISION:
        parts.append(
            f'<g id="halt-collision" stroke="#c1121f" stroke-width="0.7">'
            f'<line x1="{_f(hx - 2)}" y1="{_f(hy - 2)}" x2="{_f(hx + 2)}" y2="{_f(hy + 2)}"/>'
            f'<line x1="{_f(hx - 2)}" y1="{_f(hy + 2)}" x2="{_f(hx + 2)}" y2="{_f(hy - 2)}"/>'
            f"</g>"
        )
    else:
        reason = last.halted_reason.value if last.halted_reason else "none"
        parts.append(
            f'<circle id="halt-{reason}" cx="{_f(hx)}" cy="{_f(hy)}" r="1.2" '
            f'fill="none" stroke="#2d6a4f" stroke-width="0.6"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_plot_svg(scenario: Scenario, trace: list[TraceRecord], path) -> None:
    path = Path(path)
    try:
        path.write_text(trace_svg(scenario, trace), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write plot to {path}: {exc}") from exc
