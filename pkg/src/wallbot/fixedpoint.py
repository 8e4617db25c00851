"""Signed 16-bit fixed-point weight export and integer-only inference.

Weights are stored in Q format: integer value = round(weight * 2^frac_bits),
representable in two's-complement int16. Inference then needs no floating
point at all, which is what a small microcontroller runs:

  * hidden pre-activations accumulate as integers in Q(frac_bits)
    (the scan-bit inputs are exact 0/1),
  * tanh is a baked lookup table in the same Q format,
  * output pre-activations accumulate in Q(2*frac_bits) and are compared
    against the pre-scaled activation threshold atanh(0.8), so the output
    tanh never has to be evaluated.

Worst-case accumulator magnitude is bounded by n_hidden * 2^frac_bits *
32767: inside 32 bits up to frac_bits 12 with 16 hidden units, so the
default export runs on a 32-bit accumulator; frac_bits 13-14 need 64-bit
accumulation (which is what this implementation always uses).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .ann import OUTPUT_ORDER, Decision, DecisionConfig, Network, _validate_bits

_FIXED_MAGIC = "ANNQ1"
_INT16_MIN = -(1 << 15)
_INT16_MAX = (1 << 15) - 1


class FixedPointOverflowError(OverflowError):
    """A weight does not fit int16 at the requested frac_bits."""


@dataclass(frozen=True)
class QuantizedNetwork:
    """Integer twin of :class:`~wallbot.ann.Network` in Q(frac_bits) format."""

    frac_bits: int
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.frac_bits <= 14:
            raise ValueError(f"frac_bits {self.frac_bits} outside [1, 14]")
        arrays = {}
        for name in ("w1", "b1", "w2", "b2"):
            arr = np.array(getattr(self, name), dtype=np.int64)
            if arr.size and (arr.min() < _INT16_MIN or arr.max() > _INT16_MAX):
                raise FixedPointOverflowError(f"{name} has values outside int16")
            arr.flags.writeable = False
            arrays[name] = arr
        if arrays["w1"].ndim != 2 or arrays["w2"].ndim != 2:
            raise ValueError("w1/w2 must be matrices")
        n_in, n_hidden = arrays["w1"].shape
        if (
            n_in != 5
            or arrays["b1"].shape != (n_hidden,)
            or arrays["w2"].shape != (n_hidden, 4)
            or arrays["b2"].shape != (4,)
        ):
            raise ValueError("quantized layer shapes are inconsistent")
        for name, arr in arrays.items():
            object.__setattr__(self, name, arr)

    @property
    def n_in(self) -> int:
        return self.w1.shape[0]

    @property
    def n_hidden(self) -> int:
        return self.w1.shape[1]

    @property
    def n_out(self) -> int:
        return self.w2.shape[1]


def _quantize_array(arr: np.ndarray, frac_bits: int, name: str) -> np.ndarray:
    q = np.rint(arr * float(1 << frac_bits)).astype(np.int64)
    if q.size and (q.min() < _INT16_MIN or q.max() > _INT16_MAX):
        raise FixedPointOverflowError(
            f"{name}: |weight| too large for Q{frac_bits} int16; lower frac_bits"
        )
    return q


def quantize_network(net: Network, frac_bits: int) -> QuantizedNetwork:
    """Round every weight to the nearest Q(frac_bits) int16 value.

    Per-weight quantization error is at most 2^-(frac_bits+1). Raises
    :class:`FixedPointOverflowError` when a weight falls outside the
    representable range.
    """
    if not 1 <= frac_bits <= 14:
        raise ValueError(f"frac_bits {frac_bits} outside [1, 14]")
    return QuantizedNetwork(
        frac_bits,
        _quantize_array(net.w1, frac_bits, "w1"),
        _quantize_array(net.b1, frac_bits, "b1"),
        _quantize_array(net.w2, frac_bits, "w2"),
        _quantize_array(net.b2, frac_bits, "b2"),
    )


@lru_cache(maxsize=8)
def _tanh_table(frac_bits: int) -> np.ndarray:
    """Baked tanh lookup: table[k] = round(tanh(k / 2^f) * 2^f), saturating.

    The table ends where the quantized tanh first reaches 2^f (within half
    an ulp of 1.0); larger magnitudes clamp to the last entry. Negative
    arguments use odd symmetry.
    """
    scale = 1 << frac_bits
    sat = math.atanh(1.0 - 2.0 ** -(frac_bits + 1))
    size = math.ceil(sat * scale) + 1
    k = np.arange(size, dtype=np.float64)
    return np.rint(np.tanh(k / scale) * scale).astype(np.int64)


def _fixed_outputs(qnet: QuantizedNetwork, bits) -> np.ndarray:
    """Output pre-activations in Q(2*frac_bits), integer arithmetic only."""
    x = np.array(_validate_bits(bits), dtype=np.int64)
    z1 = x @ qnet.w1 + qnet.b1
    table = _tanh_table(qnet.frac_bits)
    mag = np.minimum(np.abs(z1), len(table) - 1)
    hidden = np.sign(z1) * table[mag]
    return hidden @ qnet.w2 + (qnet.b2 << qnet.frac_bits)


def classify_fixed(qnet: QuantizedNetwork, bits, cfg: DecisionConfig | None = None) -> Decision | None:
    """Integer-only counterpart of :func:`wallbot.ann.classify`.

    tanh(z) >= threshold is equivalent to z >= atanh(threshold), so the
    output comparison happens on Q(2*frac_bits) pre-activations against a
    pre-scaled constant; no output tanh is needed.
    """
    cfg = cfg or DecisionConfig()
    z2 = _fixed_outputs(qnet, bits)
    thr = math.ceil(math.atanh(cfg.activation_threshold) * (1 << (2 * qnet.frac_bits)))
    hot = np.flatnonzero(z2 >= thr)
    if hot.size == 1:
        return OUTPUT_ORDER[int(hot[0])]
    return None


# --- fixed-point weight file (format ANNQ1) -------------------------------


def export_weights_fixed(net: Network, frac_bits: int) -> str:
    """Serialize to the ANNQ1 text format (same layout as ANNV1, integers)."""
    qnet = quantize_network(net, frac_bits)
    return dump_weights_fixed(qnet)


def dump_weights_fixed(qnet: QuantizedNetwork) -> str:
    lines = [f"{_FIXED_MAGIC} {qnet.n_in} {qnet.n_hidden} {qnet.n_out} {qnet.frac_bits}"]
    lines.append("# input->hidden weights, one hidden unit per line")
    for j in range(qnet.n_hidden):
        lines.append(" ".join(str(int(qnet.w1[i, j])) for i in range(qnet.n_in)))
    lines.append("# hidden biases")
    lines.append(" ".join(str(int(v)) for v in qnet.b1))
    lines.append("# hidden->output weights, one hidden unit per line")
    for j in range(qnet.n_hidden):
        lines.append(" ".join(str(int(qnet.w2[j, k])) for k in range(qnet.n_out)))
    lines.append("# output biases")
    lines.append(" ".join(str(int(v)) for v in qnet.b2))
    return "\n".join(lines) + "\n"


def parse_weights_fixed(text: str) -> QuantizedNetwork:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty fixed-point weight file")
    header = lines[0].split()
    if len(header) != 5 or header[0] != _FIXED_MAGIC:
        raise ValueError(f"not an {_FIXED_MAGIC} weight file: {lines[0]!r}")
    n_in, n_hidden, n_out, frac_bits = (int(v) for v in header[1:])
    expected = 2 * n_hidden + 2
    body = lines[1:]
    if len(body) != expected:
        raise ValueError(f"expected {expected} weight lines, found {len(body)}")
    rows = [[int(v) for v in ln.split()] for ln in body]
    w1 = np.array(rows[:n_hidden], dtype=np.int64).T
    b1 = np.array(rows[n_hidden], dtype=np.int64)
    w2 = np.array(rows[n_hidden + 1 : 2 * n_hidden + 1], dtype=np.int64)
    b2 = np.array(rows[2 * n_hidden + 1], dtype=np.int64)
    if w1.shape != (n_in, n_hidden) or w2.shape != (n_hidden, n_out):
        raise ValueError("weight line lengths do not match the header dimensions")
    return QuantizedNetwork(frac_bits, w1, b1, w2, b2)


def load_weights_fixed(path) -> QuantizedNetwork:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_weights_fixed(fh.read())
