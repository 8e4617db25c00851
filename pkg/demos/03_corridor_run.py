"""End-to-end navigation of the bundled reference corridor.

Trains the network, runs the scan-decide-act loop through the Z-shaped
corridor (one left corner, one right corner), narrates every tick, and
writes the trace CSV plus an SVG trajectory plot.

Run:  python3 demos/03_corridor_run.py
"""

import pathlib

from wallbot import (
    HaltReason,
    builtin_training_set,
    emit_plot_svg,
    emit_trace_csv,
    load_builtin_scenario,
    run,
    train,
)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

net = train(builtin_training_set())
scenario = load_builtin_scenario("reference")
print(f"corridor bounds (in): {scenario.env.bounds}")
print(f"start: ({scenario.start.x}, {scenario.start.y}), goal: {scenario.goal}\n")

trace = run(scenario, net)

print(f"{'tick':>4} {'pose before':>20} {'scan bits':>17} {'decision':>9} {'note'}")
for rec in trace:
    pose = f"({rec.pose_before.x:7.2f},{rec.pose_before.y:7.2f})"
    note = ""
    if rec.fallback_used:
        note = "table-rule fallback"
    if rec.halted_reason is not None:
        note = f"halt: {rec.halted_reason.value}"
    print(f"{rec.tick:>4} {pose:>20} {str(rec.bits):>17} {rec.decision.value:>9} {note}")

last = trace[-1]
assert last.halted_reason is HaltReason.GOAL, "expected the goal to be reached"
turns = sum(rec.decision.value in ("left", "right") for rec in trace)
print(f"\nreached the goal in {len(trace)} ticks with {turns} turns")

emit_trace_csv(trace, OUT / "reference_trace.csv")
emit_plot_svg(scenario, trace, OUT / "reference_run.svg")
print(f"wrote {OUT / 'reference_trace.csv'}")
print(f"wrote {OUT / 'reference_run.svg'}  (open in a browser)")

# the dead-end scenario exercises the all-ones stop condition
dead = run(load_builtin_scenario("deadend"), net)
print(f"\ndead-end scenario: {len(dead)} tick, halt reason = {dead[0].halted_reason.value}")
