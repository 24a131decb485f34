"""Calibrate detection thresholds from dead-reckoned IMU traces.

The detector compares map-predicted leg lengths, turn angles, and
curvature against what the car's accelerometer and gyroscope actually
recorded. Tolerances therefore have to absorb honest sensor error. This
script synthesizes a two-leg drive with a 90-degree turn, replays it
forty times with sensor noise and per-trip bias, and derives tolerance
sets from the resulting error distributions: the 75th percentile, and
the 25th as the tightened low-noise variant.
"""

import numpy as np

from roadescape import (
    DEFAULT_THRESHOLDS,
    LOW_NOISE_THRESHOLDS,
    ErrorDistributions,
    ImuTrace,
    dead_reckon_distances,
    derive_thresholds,
    distance_error_ratios,
    integrate_turns,
    turn_errors,
)

DT = 0.01
LEG_T = 35.0      # accelerate 10 s, cruise 15 s, brake 10 s -> 250 m, ends stopped
TURN_T = 4.0
ACTUAL_LEGS = [250.0, 250.0]
ACTUAL_TURNS = [-90.0]


def drive_profile():
    """Forward acceleration and yaw rate for leg, right turn, leg."""
    t = np.arange(0.0, 2 * LEG_T + TURN_T + DT / 2, DT)
    ax = np.zeros_like(t)
    gz = np.zeros_like(t)
    for leg_start in (0.0, LEG_T + TURN_T):
        rel = t - leg_start
        ax[(rel >= 0) & (rel < 10.0)] = 1.0
        ax[(rel >= 25.0) & (rel < 35.0)] = -1.0
    # raised-cosine yaw pulse while stopped; integrates to -90 degrees
    rel = t - LEG_T
    turning = (rel >= 0) & (rel <= TURN_T)
    amplitude = 2.0 * np.radians(-90.0) / TURN_T
    gz[turning] = amplitude * (1.0 - np.cos(2.0 * np.pi * rel[turning] / TURN_T)) / 2.0
    return t, ax, gz


def as_trace(t, ax, gz):
    accel = np.zeros((len(t), 3))
    accel[:, 0] = ax
    gyro = np.zeros((len(t), 3))
    gyro[:, 2] = gz
    return ImuTrace(timestamps=t, accel=accel, gyro=gyro)


def main():
    t, ax, gz = drive_profile()
    boundaries = [0.0, LEG_T + TURN_T / 2, 2 * LEG_T + TURN_T]
    windows = [(LEG_T, LEG_T + TURN_T)]

    clean = as_trace(t, ax, gz)
    legs = dead_reckon_distances(clean, boundaries)
    turns = integrate_turns(clean, windows)
    print("clean trace:")
    print(f"  legs  derived {[f'{d:.1f}' for d in legs]} m, actual {ACTUAL_LEGS}")
    print(f"  turn  derived {turns[0]:.2f} deg, actual {ACTUAL_TURNS[0]}")

    rng = np.random.default_rng(3)
    ratios, angle_errs, curvature_errs = [], [], []
    for _ in range(40):
        noisy = as_trace(
            t,
            ax + rng.normal(0.0, 0.05, len(t)) + rng.normal(0.0, 0.01),
            gz + rng.normal(0.0, 0.01, len(t)) + rng.normal(0.0, 0.005),
        )
        derived_legs = dead_reckon_distances(noisy, boundaries, smooth_window=5)
        derived_turns = integrate_turns(noisy, windows, smooth_window=5)
        ratios.extend(distance_error_ratios(derived_legs, ACTUAL_LEGS))
        angle_errs.extend(turn_errors(derived_turns, ACTUAL_TURNS))
        # stand-in for map-matched curvature residuals
        curvature_errs.append(abs(rng.normal(0.0, 1.0)))

    dists = ErrorDistributions(ratios, angle_errs, curvature_errs)
    print(f"\nfrom {len(ratios)} leg and {len(angle_errs)} turn measurements:")
    for label, pct, shipped in (
        ("default  (75th pct)", 75.0, DEFAULT_THRESHOLDS),
        ("tightened (25th pct)", 25.0, LOW_NOISE_THRESHOLDS),
    ):
        derived = derive_thresholds(dists, pct)
        print(f"  {label}: {derived}")
        print(f"    shipped reference: {shipped}")


if __name__ == "__main__":
    main()
