"""Command-line surface: train, run, export-fixed, verify."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import ann, fixedpoint
from .scenario import BUILTIN_SCENARIOS, load_builtin_scenario, load_scenario
from .simulate import emit_plot_svg, emit_trace_csv, run


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallbot",
        description="Deterministic wall-following robot simulator and network trainer.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    defaults = ann.Hyperparams()
    p_train = sub.add_parser("train", help="train a network and write a float weight file")
    p_train.add_argument("--data", type=Path, default=None,
                         help="dataset file (5 bits + label per line); default: built-in table")
    p_train.add_argument("--hidden", type=int, default=defaults.n_hidden, help="hidden layer size")
    p_train.add_argument("--lr", type=float, default=defaults.learning_rate, help="learning rate")
    p_train.add_argument("--max-epochs", type=int, default=defaults.max_epochs)
    p_train.add_argument("--target-error", type=float, default=defaults.target_error,
                         help="sum-squared error stop")
    p_train.add_argument("--seed", type=int, default=defaults.seed)
    p_train.add_argument("--init-scale", type=float, default=defaults.init_scale)
    p_train.add_argument("-o", "--output", type=Path, required=True, help="weight file to write")

    p_run = sub.add_parser("run", help="run a scenario with a trained network")
    p_run.add_argument("scenario", help=f"scenario file, or a builtin name: {', '.join(BUILTIN_SCENARIOS)}")
    p_run.add_argument("weights", type=Path, help="float weight file from `train`")
    p_run.add_argument("--trace", type=Path, default=None, help="write the trace CSV here")
    p_run.add_argument("--svg", type=Path, default=None, help="write a trajectory plot here")

    p_fixed = sub.add_parser("export-fixed", help="quantize a weight file to 16-bit fixed point")
    p_fixed.add_argument("weights", type=Path, help="float weight file")
    p_fixed.add_argument("--frac-bits", type=int, default=12, help="fractional bits (1..14)")
    p_fixed.add_argument("-o", "--output", type=Path, required=True, help="fixed-point file to write")

    p_verify = sub.add_parser("verify", help="check a weight file against the decision table")
    p_verify.add_argument("weights", type=Path, help="float weight file")
    p_verify.add_argument("--fixed", type=Path, default=None,
                          help="also compare a fixed-point file on all 32 inputs")
    return parser


def _write(path: Path, text: str) -> bool:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return False
    return True


def _cmd_train(args) -> int:
    if args.data is not None:
        try:
            data = ann.load_training_set(args.data)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    else:
        data = ann.builtin_training_set()
    hp = ann.Hyperparams(
        learning_rate=args.lr,
        max_epochs=args.max_epochs,
        target_error=args.target_error,
        seed=args.seed,
        init_scale=args.init_scale,
        n_hidden=args.hidden,
    )
    try:
        net = ann.train(data, hp)
    except (ann.NonConvergenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not _write(args.output, ann.export_weights_float(net, hp)):
        return 1
    print(f"trained on {len(data.rows)} rows; wrote {args.output}")
    return 0


def _load_run_inputs(args):
    # an existing file wins over a builtin of the same name
    if Path(args.scenario).exists():
        scenario = load_scenario(args.scenario)
    elif args.scenario in BUILTIN_SCENARIOS:
        scenario = load_builtin_scenario(args.scenario)
    else:
        raise FileNotFoundError(
            f"no scenario file {args.scenario!r} and no builtin of that name "
            f"(builtins: {', '.join(BUILTIN_SCENARIOS)})"
        )
    net = ann.load_weights_float(args.weights)
    return scenario, net


def _cmd_run(args) -> int:
    try:
        scenario, net = _load_run_inputs(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    trace = run(scenario, net)
    last = trace[-1]
    try:
        if args.trace is not None:
            emit_trace_csv(trace, args.trace)
        if args.svg is not None:
            emit_plot_svg(scenario, trace, args.svg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fallbacks = sum(rec.fallback_used for rec in trace)
    print(
        f"{len(trace)} ticks, halt={last.halted_reason.value}, "
        f"final pose=({last.pose_after.x:.2f}, {last.pose_after.y:.2f}), "
        f"fallbacks={fallbacks}"
    )
    return 0


def _cmd_export_fixed(args) -> int:
    try:
        net = ann.load_weights_float(args.weights)
        text = fixedpoint.export_weights_fixed(net, args.frac_bits)
    except (OSError, ValueError, fixedpoint.FixedPointOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not _write(args.output, text):
        return 1
    print(f"wrote {args.output} (frac_bits={args.frac_bits})")
    return 0


def _cmd_verify(args) -> int:
    try:
        net = ann.load_weights_float(args.weights)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    dcfg = ann.DecisionConfig()
    thr = dcfg.activation_threshold
    failures = 0
    for bits, expected in ann.DECISION_TABLE:
        _, out = ann.forward(net, bits)
        hot = out[ann.OUTPUT_ORDER.index(expected)]
        others = max(v for k, v in enumerate(out) if ann.OUTPUT_ORDER[k] is not expected)
        ok = hot >= thr and others < thr
        mark = "pass" if ok else "FAIL"
        print(f"  {bits} -> {expected.value:8s} hot={hot:+.3f} next={others:+.3f} {mark}")
        failures += 0 if ok else 1
    total = len(ann.DECISION_TABLE)
    print(f"{total - failures}/{total} rows pass")

    if args.fixed is not None:
        try:
            qnet = fixedpoint.load_weights_fixed(args.fixed)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        disagreements = 0
        for value in range(32):
            bits = tuple((value >> (4 - i)) & 1 for i in range(5))
            a = ann.classify(net, bits, dcfg)
            b = fixedpoint.classify_fixed(qnet, bits, dcfg)
            if a is not b:
                print(f"  mismatch on {bits}: float={a} fixed={b}")
                disagreements += 1
        print(f"{32 - disagreements}/32 inputs agree (float vs fixed)")
        failures += disagreements

    return 0 if failures == 0 else 1


def cli(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help and usage errors
        return int(exc.code or 0)
    handlers = {
        "train": _cmd_train,
        "run": _cmd_run,
        "export-fixed": _cmd_export_fixed,
        "verify": _cmd_verify,
    }
    return handlers[args.command](args)


def main() -> None:
    sys.exit(cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
