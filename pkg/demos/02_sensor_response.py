"""The IR ranger model: distance in, 8-bit ADC value out, one bit after.

Plots the default calibration curve (piecewise linear between 6-inch
anchors), the binary threshold th = 95, and where the 12-inch turn
distance sits on the curve. Also demonstrates the raycast + conversion
pipeline against a single wall.

Run:  python3 demos/02_sensor_response.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from wallbot import (
    Environment,
    Pose,
    SensorConfig,
    WallSegment,
    adc_from_distance,
    default_calibration,
    sense,
    threshold_bit,
)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

cal = default_calibration()
cfg = SensorConfig()
print("calibration anchors (distance_in, adc):", cal.anchors)
print(f"threshold th = {cfg.th}, max range = {cfg.max_range} in")

# --- response curve ---------------------------------------------------------
d = np.linspace(0, 40, 400)
adc = np.array([adc_from_distance(v, cal) for v in d])

plt.figure(figsize=(7, 4))
plt.plot(d, adc, label="ADC value")
plt.axhline(cfg.th, color="crimson", ls="--", label=f"threshold th = {cfg.th}")
plt.axvline(12.0, color="gray", ls=":", label="turn distance (12 in)")
plt.scatter(*zip(*cal.anchors), color="k", zorder=3, s=18, label="anchors")
plt.xlabel("distance to wall (inches)")
plt.ylabel("8-bit ADC value")
plt.title("Ranger response: closer obstacle, larger reading")
plt.legend()
plt.grid(alpha=0.3)
plt.tight_layout()
plt.savefig(OUT / "sensor_response.png", dpi=120)
print(f"wrote {OUT / 'sensor_response.png'}")

# --- the obstacle bit flips exactly at the turn distance --------------------
for dist in (14.0, 12.5, 12.0, 11.5, 8.0):
    a = adc_from_distance(dist, cal)
    print(f"  {dist:5.1f} in -> adc {a:3d} -> bit {threshold_bit(a, cfg.th)}")

# --- full pipeline: pose + wall -> raycast -> ADC ---------------------------
env = Environment((WallSegment((12.0, -10.0), (12.0, 10.0)),))
pose = Pose(0, 0, 0)
print("\nscanning a wall 12 inches ahead:")
for angle_deg in (-90, -45, 0, 45, 90):
    reading = sense(pose, np.radians(angle_deg), env, cfg)
    print(f"  scan {angle_deg:+4d} deg -> adc {reading:3d} -> bit {threshold_bit(reading, cfg.th)}")
