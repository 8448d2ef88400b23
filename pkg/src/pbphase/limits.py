"""Shift-to-zero limit estimation shared by the finite and infinite routes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "LimitEstimate",
    "geometric_schedule",
    "check_schedule",
    "estimate_limit",
]

DEFAULT_S_START = 1e-2
DEFAULT_S_FACTOR = 0.5
DEFAULT_S_STEPS = 20


@dataclass(frozen=True)
class LimitEstimate:
    """Result of extrapolating ``f(s)`` to ``s -> 0``.

    ``residual`` is the distance between the sample at the smallest shift and
    the extrapolated value. ``observed_order`` is ``None`` for schedules with
    fewer than three points or when the samples are constant to rounding.
    """

    value: complex
    residual: float
    observed_order: float | None
    shifts: tuple[float, ...]
    samples: tuple[complex, ...]


def geometric_schedule(
    start: float = DEFAULT_S_START,
    factor: float = DEFAULT_S_FACTOR,
    steps: int = DEFAULT_S_STEPS,
) -> tuple[float, ...]:
    if not 0.0 < start <= 1.0:
        raise ValueError(f"s_start must lie in (0, 1], got {start}")
    if not 0.0 < factor < 1.0:
        raise ValueError(f"s_factor must lie in (0, 1), got {factor}")
    if steps < 1:
        raise ValueError(f"s_steps must be positive, got {steps}")
    return tuple(start * factor**k for k in range(steps))


def check_schedule(schedule: Sequence[float]) -> tuple[float, ...]:
    shifts = tuple(float(s) for s in schedule)
    if not shifts:
        raise ValueError("empty shift schedule")
    if any(not np.isfinite(s) or s <= 0.0 for s in shifts):
        raise ValueError("shift schedule must contain positive finite values")
    if any(b >= a for a, b in zip(shifts, shifts[1:])):
        raise ValueError("shift schedule must be strictly decreasing")
    return shifts


def _fit_order(shifts: np.ndarray, errors: np.ndarray, scale: float) -> float | None:
    # Drop samples already at rounding level; their logs are noise.
    keep = errors > 64 * np.finfo(float).eps * max(scale, 1.0)
    if np.count_nonzero(keep) < 2:
        return None
    slope, _ = np.polyfit(np.log(shifts[keep]), np.log(errors[keep]), 1)
    return float(slope)


def estimate_limit(
    func: Callable[[float], complex], schedule: Sequence[float]
) -> LimitEstimate:
    """Evaluate ``func`` over a decreasing schedule and extrapolate to zero.

    A single Richardson step on the two smallest shifts assumes a leading
    error linear in ``s``. The convergence order is the least-squares slope
    of ``log|f(s) - limit|`` against ``log s``.
    """
    shifts = check_schedule(schedule)
    samples = tuple(complex(func(s)) for s in shifts)
    if len(shifts) == 1:
        value = samples[0]
    else:
        s1, s2 = shifts[-2], shifts[-1]
        f1, f2 = samples[-2], samples[-1]
        value = (s1 * f2 - s2 * f1) / (s1 - s2)
    residual = abs(samples[-1] - value)
    order = None
    if len(shifts) >= 3:
        errors = np.abs(np.asarray(samples) - value)
        order = _fit_order(np.asarray(shifts), errors, abs(value))
    return LimitEstimate(value, float(residual), order, shifts, samples)
