"""IR ranger model: distance to 8-bit ADC value, and binary thresholding.

The ranger is modeled as a calibration table of (distance, adc) anchors
with piecewise-linear interpolation between them, which matches a sensor
whose response is linear within each 6-inch slot. Closer obstacles give
larger ADC values. A reading at or above the threshold ``th`` means
"obstacle near".
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .world import Environment, Pose, cast_ray


def _round_half_up(v: float) -> int:
    # fixed tie policy so results do not depend on banker's rounding
    return math.floor(v + 0.5)


@dataclass(frozen=True)
class CalibrationTable:
    """Ordered (distance_inches, adc) anchors, decreasing adc with distance."""

    anchors: tuple[tuple[float, int], ...]

    def __post_init__(self) -> None:
        anchors = tuple((float(d), int(a)) for d, a in self.anchors)
        if len(anchors) < 2:
            raise ValueError("calibration needs at least 2 anchors")
        for (d0, a0), (d1, a1) in zip(anchors, anchors[1:]):
            if not d1 > d0:
                raise ValueError(f"anchor distances must be strictly increasing ({d0} then {d1})")
            if a1 > a0:
                raise ValueError(f"adc must be non-increasing with distance ({a0} then {a1})")
        for d, a in anchors:
            if not math.isfinite(d) or d < 0:
                raise ValueError(f"bad anchor distance {d}")
            if not 0 <= a <= 255:
                raise ValueError(f"adc {a} outside [0, 255]")
        object.__setattr__(self, "anchors", anchors)


def parse_calibration(text: str) -> CalibrationTable:
    """Parse a calibration file: one ``distance_inches adc`` pair per line."""
    anchors = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"calibration line {line_no}: expected 'distance adc', got {raw!r}")
        try:
            anchors.append((float(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ValueError(f"calibration line {line_no}: {exc}") from None
    return CalibrationTable(tuple(anchors))


def load_calibration(path) -> CalibrationTable:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_calibration(fh.read())


@lru_cache(maxsize=None)
def default_calibration() -> CalibrationTable:
    """The bundled synthetic response table (see data/default_calibration.txt)."""
    text = resources.files("wallbot").joinpath("data/default_calibration.txt").read_text()
    return parse_calibration(text)


@dataclass(frozen=True)
class SensorConfig:
    """Ranger configuration: calibration, binary threshold and max range.

    ``noise_amplitude`` adds seeded uniform integer jitter of +/-k ADC counts
    when a random generator is passed to :func:`sense`; it is 0 (off) by
    default because the modeled sensor is deterministic.
    """

    calibration: CalibrationTable = field(default_factory=default_calibration)
    th: int = 95
    max_range: float = 60.0
    noise_amplitude: int = 0
    noise_seed: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.th <= 255:
            raise ValueError(f"th {self.th} outside [0, 255]")
        if not self.max_range > 0:
            raise ValueError("max_range must be positive")
        if self.noise_amplitude < 0:
            raise ValueError("noise_amplitude must be non-negative")


@dataclass(frozen=True)
class ScanVector:
    """Five ADC readings and their thresholded bits, ordered by scan angle.

    Order is (-90, -45, 0, +45, +90) degrees relative to the heading.
    """

    adc: tuple[int, int, int, int, int]
    bits: tuple[int, int, int, int, int]

    def __post_init__(self) -> None:
        adc = tuple(int(v) for v in self.adc)
        bits = tuple(int(v) for v in self.bits)
        if len(adc) != 5 or len(bits) != 5:
            raise ValueError("scan vector must have exactly 5 readings")
        if any(not 0 <= v <= 255 for v in adc):
            raise ValueError(f"adc values outside [0, 255]: {adc}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"bits must be binary: {bits}")
        object.__setattr__(self, "adc", adc)
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_adc(cls, adc, th: int) -> "ScanVector":
        adc = tuple(int(v) for v in adc)
        return cls(adc, tuple(threshold_bit(v, th) for v in adc))


def adc_from_distance(d: float, cal: CalibrationTable) -> int:
    """Piecewise-linear ADC value for a distance, clamped to the anchor range.

    Below the first anchor returns the first anchor's adc, beyond the last
    returns the last anchor's adc (real rangers keep emitting a small floor
    value in open space).
    """
    if d < 0:
        raise ValueError("distance must be non-negative")
    anchors = cal.anchors
    if d <= anchors[0][0]:
        return anchors[0][1]
    if d >= anchors[-1][0]:
        return anchors[-1][1]
    for (d0, a0), (d1, a1) in zip(anchors, anchors[1:]):
        if d0 <= d <= d1:
            frac = (d - d0) / (d1 - d0)
            v = a0 + frac * (a1 - a0)
            return min(255, max(0, _round_half_up(v)))
    raise AssertionError("unreachable: anchors cover the clamped range")


def threshold_bit(adc: int, th: int) -> int:
    """1 iff ``adc >= th`` (inclusive: a reading exactly at th signals an obstacle)."""
    if not 0 <= adc <= 255:
        raise ValueError(f"adc {adc} outside [0, 255]")
    if not 0 <= th <= 255:
        raise ValueError(f"th {th} outside [0, 255]")
    return 1 if adc >= th else 0


def sense(
    pose: Pose,
    scan_angle: float,
    env: Environment,
    cfg: SensorConfig,
    rng: random.Random | None = None,
) -> int:
    """ADC reading along ``scan_angle`` relative to the pose heading."""
    if not math.isfinite(scan_angle):
        raise ValueError("scan_angle must be finite")
    d = cast_ray(pose.position, pose.heading + scan_angle, env, cfg.max_range)
    adc = adc_from_distance(d, cfg.calibration)
    if cfg.noise_amplitude > 0 and rng is not None:
        adc = min(255, max(0, adc + rng.randint(-cfg.noise_amplitude, cfg.noise_amplitude)))
    return adc
