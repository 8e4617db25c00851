"""Feed-forward tanh network for scan-bit decisions, trained from scratch.

Architecture is fixed at 5 inputs (the thresholded scan bits), one hidden
layer, and 4 outputs (straight, left, right, stop). Both layers apply tanh:

    hidden = tanh(x @ w1 + b1)
    out    = tanh(hidden @ w2 + b2)

Training is deterministic full-batch gradient descent on the sum-squared
error sse = sum((out - target)^2), with one-hot targets encoded +0.9 for
the hot class and -0.9 elsewhere so tanh does not have to saturate. A
decision is read off the outputs by an activation threshold (default 0.8):
exactly one output at or above the threshold names the decision, anything
else is undecided.

Trained weights serialize to a plain-text format (``ANNV1`` header) that
round-trips losslessly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class Decision(Enum):
    """The four maneuvers the network can call for."""

    STRAIGHT = "straight"
    LEFT = "left"
    RIGHT = "right"
    STOP = "stop"


#: Fixed output-unit order: output k of the network scores OUTPUT_ORDER[k].
OUTPUT_ORDER: tuple[Decision, ...] = tuple(Decision)

#: The built-in decision table mapping scan bits (-90,-45,0,+45,+90 order)
#: to maneuvers. 14 of the 32 possible bit patterns are covered.
DECISION_TABLE: tuple[tuple[tuple[int, int, int, int, int], Decision], ...] = (
    ((1, 1, 0, 1, 1), Decision.STRAIGHT),
    ((1, 0, 0, 1, 1), Decision.STRAIGHT),
    ((1, 1, 0, 0, 1), Decision.STRAIGHT),
    ((1, 0, 0, 0, 1), Decision.STRAIGHT),
    ((0, 0, 0, 0, 0), Decision.STRAIGHT),
    ((0, 1, 1, 1, 1), Decision.LEFT),
    ((0, 0, 1, 1, 1), Decision.LEFT),
    ((0, 1, 1, 0, 1), Decision.LEFT),
    ((0, 0, 1, 0, 1), Decision.LEFT),
    ((1, 1, 1, 1, 0), Decision.RIGHT),
    ((1, 1, 1, 0, 0), Decision.RIGHT),
    ((1, 0, 1, 1, 0), Decision.RIGHT),
    ((1, 0, 1, 0, 0), Decision.RIGHT),
    ((1, 1, 1, 1, 1), Decision.STOP),
)

#: tanh target magnitude for the hot / cold classes.
TARGET_HOT = 0.9

Bits = tuple[int, int, int, int, int]


class NonConvergenceError(RuntimeError):
    """Training ran out of epochs without classifying every row correctly."""


def _validate_bits(bits) -> Bits:
    bits = tuple(int(b) for b in bits)
    if len(bits) != 5 or any(b not in (0, 1) for b in bits):
        raise ValueError(f"expected 5 binary inputs, got {bits}")
    return bits


@dataclass(frozen=True)
class Network:
    """Immutable weight container for the 5 -> n_hidden -> 4 network.

    ``w1[i, j]`` connects input i to hidden unit j, ``w2[j, k]`` connects
    hidden unit j to output k; ``b1`` and ``b2`` are the layer biases.
    """

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray

    def __post_init__(self) -> None:
        w1 = np.array(self.w1, dtype=np.float64)
        b1 = np.array(self.b1, dtype=np.float64)
        w2 = np.array(self.w2, dtype=np.float64)
        b2 = np.array(self.b2, dtype=np.float64)
        if w1.ndim != 2 or w2.ndim != 2 or b1.ndim != 1 or b2.ndim != 1:
            raise ValueError("w1/w2 must be matrices, b1/b2 vectors")
        n_in, n_hidden = w1.shape
        if n_in != 5:
            raise ValueError(f"network takes 5 inputs, got {n_in}")
        if n_hidden < 1:
            raise ValueError("need at least one hidden unit")
        if b1.shape != (n_hidden,):
            raise ValueError(f"b1 shape {b1.shape} does not match {n_hidden} hidden units")
        if w2.shape != (n_hidden, 4):
            raise ValueError(f"w2 shape {w2.shape} does not match ({n_hidden}, 4)")
        if b2.shape != (4,):
            raise ValueError(f"b2 shape {b2.shape} must be (4,)")
        for arr in (w1, b1, w2, b2):
            if not np.all(np.isfinite(arr)):
                raise ValueError("weights must be finite")
            arr.flags.writeable = False
        object.__setattr__(self, "w1", w1)
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "w2", w2)
        object.__setattr__(self, "b2", b2)

    @property
    def n_in(self) -> int:
        return self.w1.shape[0]

    @property
    def n_hidden(self) -> int:
        return self.w1.shape[1]

    @property
    def n_out(self) -> int:
        return self.w2.shape[1]


@dataclass(frozen=True)
class TrainingSet:
    """Rows of (5 scan bits, target decision); conflicting duplicates rejected."""

    rows: tuple[tuple[Bits, Decision], ...]

    def __post_init__(self) -> None:
        rows = tuple((_validate_bits(bits), Decision(dec)) for bits, dec in self.rows)
        if not rows:
            raise ValueError("training set must be nonempty")
        seen: dict[Bits, Decision] = {}
        for bits, dec in rows:
            if bits in seen and seen[bits] is not dec:
                raise ValueError(f"conflicting targets for input {bits}")
            seen[bits] = dec
        object.__setattr__(self, "rows", rows)

    def to_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Inputs as an (N, 5) float matrix, targets as (N, 4) of +/-TARGET_HOT."""
        x = np.array([bits for bits, _ in self.rows], dtype=np.float64)
        t = np.full((len(self.rows), 4), -TARGET_HOT, dtype=np.float64)
        for i, (_, dec) in enumerate(self.rows):
            t[i, OUTPUT_ORDER.index(dec)] = TARGET_HOT
        return x, t


def builtin_training_set() -> TrainingSet:
    """The built-in 14-row decision table as a training set."""
    return TrainingSet(DECISION_TABLE)


def parse_training_set(text: str) -> TrainingSet:
    """Parse dataset lines of the form ``b1 b2 b3 b4 b5 label``.

    Labels are straight / left / right / stop (case-insensitive); ``#``
    starts a comment.
    """
    rows = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 6:
            raise ValueError(f"dataset line {line_no}: expected 5 bits and a label, got {raw!r}")
        try:
            bits = _validate_bits(parts[:5])
            dec = Decision(parts[5].lower())
        except ValueError as exc:
            raise ValueError(f"dataset line {line_no}: {exc}") from None
        rows.append((bits, dec))
    return TrainingSet(tuple(rows))


def load_training_set(path) -> TrainingSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_training_set(fh.read())


@dataclass(frozen=True)
class Hyperparams:
    """Training knobs. Defaults converge on the built-in table in seconds."""

    learning_rate: float = 0.1
    max_epochs: int = 50_000
    target_error: float = 0.01
    seed: int = 5
    init_scale: float = 0.5
    n_hidden: int = 5

    def __post_init__(self) -> None:
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be positive")
        if self.target_error < 0:
            raise ValueError("target_error must be non-negative")
        if not self.init_scale > 0:
            raise ValueError("init_scale must be positive")
        if self.n_hidden < 1:
            raise ValueError("n_hidden must be positive")


@dataclass(frozen=True)
class DecisionConfig:
    """How output activations map to a decision."""

    activation_threshold: float = 0.8

    def __post_init__(self) -> None:
        if not 0.0 < self.activation_threshold < 1.0:
            raise ValueError("activation_threshold must be in (0, 1)")


def _forward_batch(net: Network, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    hidden = np.tanh(x @ net.w1 + net.b1)
    out = np.tanh(hidden @ net.w2 + net.b2)
    return hidden, out


def forward(net: Network, x) -> tuple[np.ndarray, np.ndarray]:
    """Hidden and output activations for a single 5-value input."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (net.n_in,):
        raise ValueError(f"input shape {x.shape} does not match ({net.n_in},)")
    if not np.all(np.isfinite(x)):
        raise ValueError("inputs must be finite")
    return _forward_batch(net, x)


def _gradients(
    net: Network, x: np.ndarray, t: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, float]:
    """Analytic gradients of sse = sum((out - t)^2) over the whole batch."""
    hidden, out = _forward_batch(net, x)
    err = out - t
    sse = float(np.sum(err * err))
    # d sse / d z_out, with tanh'(z) expressed as 1 - out^2
    delta_out = 2.0 * err * (1.0 - out * out)
    dw2 = hidden.T @ delta_out
    db2 = delta_out.sum(axis=0)
    delta_hidden = (delta_out @ net.w2.T) * (1.0 - hidden * hidden)
    dw1 = x.T @ delta_hidden
    db1 = delta_hidden.sum(axis=0)
    return dw1, db1, dw2, db2, sse


def backprop_step(net: Network, batch: TrainingSet, lr: float) -> tuple[Network, float]:
    """One full-batch gradient-descent update; returns (new net, pre-update sse)."""
    if lr < 0:
        raise ValueError("learning rate must be non-negative")
    x, t = batch.to_arrays()
    dw1, db1, dw2, db2, sse = _gradients(net, x, t)
    updated = Network(
        net.w1 - lr * dw1,
        net.b1 - lr * db1,
        net.w2 - lr * dw2,
        net.b2 - lr * db2,
    )
    return updated, sse


def _init_network(hp: Hyperparams) -> Network:
    rng = np.random.default_rng(hp.seed)
    s = hp.init_scale
    return Network(
        rng.uniform(-s, s, (5, hp.n_hidden)),
        rng.uniform(-s, s, hp.n_hidden),
        rng.uniform(-s, s, (hp.n_hidden, 4)),
        rng.uniform(-s, s, 4),
    )


def _classifies_all(net: Network, data: TrainingSet, dcfg: DecisionConfig) -> bool:
    return all(classify(net, bits, dcfg) is dec for bits, dec in data.rows)


def train(
    data: TrainingSet,
    hp: Hyperparams | None = None,
    dcfg: DecisionConfig | None = None,
) -> Network:
    """Train until every row classifies correctly; deterministic for a seed.

    Descends until the sum-squared error drops to ``target_error`` and every
    training row yields its target decision at the activation threshold.
    Raises :class:`NonConvergenceError` after ``max_epochs`` if the final
    network still misclassifies any row; it never silently returns one.
    """
    hp = hp or Hyperparams()
    dcfg = dcfg or DecisionConfig()
    net = _init_network(hp)
    x, t = data.to_arrays()
    lr = hp.learning_rate
    sse = math.inf
    for _ in range(hp.max_epochs):
        dw1, db1, dw2, db2, sse = _gradients(net, x, t)
        net = Network(net.w1 - lr * dw1, net.b1 - lr * db1, net.w2 - lr * dw2, net.b2 - lr * db2)
        if sse <= hp.target_error and _classifies_all(net, data, dcfg):
            return net
    if _classifies_all(net, data, dcfg):
        return net
    raise NonConvergenceError(
        f"no convergence after {hp.max_epochs} epochs (sse={sse:.6g}); adjust hyperparameters"
    )


def classify(net: Network, bits, cfg: DecisionConfig | None = None) -> Decision | None:
    """The unique decision whose output clears the threshold, else None.

    None means undecided (zero or several outputs at/above the threshold);
    the caller decides what to do with it.
    """
    cfg = cfg or DecisionConfig()
    bits = _validate_bits(bits)
    _, out = forward(net, bits)
    hot = np.flatnonzero(out >= cfg.activation_threshold)
    if hot.size == 1:
        return OUTPUT_ORDER[int(hot[0])]
    return None


# --- float weight file (format ANNV1) ------------------------------------

_FLOAT_MAGIC = "ANNV1"


def _fmt(v: float) -> str:
    # 18 significant digits: enough for float64 to round-trip exactly
    return f"{v:.17e}"


def export_weights_float(net: Network, hp: Hyperparams | None = None) -> str:
    """Serialize a network to the ANNV1 text format.

    Layout: header line ``ANNV1 5 <n_hidden> 4``; one line per hidden unit
    with its 5 incoming weights; the hidden biases on one line; one line per
    hidden unit with its 4 outgoing weights; the output biases. ``#`` lines
    record the hyperparameters used, when given.
    """
    lines = [f"{_FLOAT_MAGIC} {net.n_in} {net.n_hidden} {net.n_out}"]
    if hp is not None:
        lines.append(
            f"# trained-with: learning_rate={hp.learning_rate!r} max_epochs={hp.max_epochs}"
            f" target_error={hp.target_error!r} seed={hp.seed} init_scale={hp.init_scale!r}"
            f" n_hidden={hp.n_hidden}"
        )
    lines.append("# input->hidden weights, one hidden unit per line")
    for j in range(net.n_hidden):
        lines.append(" ".join(_fmt(net.w1[i, j]) for i in range(net.n_in)))
    lines.append("# hidden biases")
    lines.append(" ".join(_fmt(v) for v in net.b1))
    lines.append("# hidden->output weights, one hidden unit per line")
    for j in range(net.n_hidden):
        lines.append(" ".join(_fmt(net.w2[j, k]) for k in range(net.n_out)))
    lines.append("# output biases")
    lines.append(" ".join(_fmt(v) for v in net.b2))
    return "\n".join(lines) + "\n"


def _data_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def parse_weights_float(text: str) -> Network:
    """Parse the ANNV1 format back into a Network."""
    lines = _data_lines(text)
    if not lines:
        raise ValueError("empty weight file")
    header = lines[0].split()
    if len(header) != 4 or header[0] != _FLOAT_MAGIC:
        raise ValueError(f"not an {_FLOAT_MAGIC} weight file: {lines[0]!r}")
    n_in, n_hidden, n_out = (int(v) for v in header[1:])
    expected = 2 * n_hidden + 2
    body = lines[1:]
    if len(body) != expected:
        raise ValueError(f"expected {expected} weight lines, found {len(body)}")
    rows = [[float(v) for v in ln.split()] for ln in body]
    w1 = np.array(rows[:n_hidden], dtype=np.float64).T
    b1 = np.array(rows[n_hidden], dtype=np.float64)
    w2 = np.array(rows[n_hidden + 1 : 2 * n_hidden + 1], dtype=np.float64)
    b2 = np.array(rows[2 * n_hidden + 1], dtype=np.float64)
    if w1.shape != (n_in, n_hidden) or w2.shape != (n_hidden, n_out):
        raise ValueError("weight line lengths do not match the header dimensions")
    return Network(w1, b1, w2, b2)


def load_weights_float(path) -> Network:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_weights_float(fh.read())
