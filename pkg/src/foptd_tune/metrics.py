"""Step-response performance characterization and oscillation-period
measurement.

Conventions: rise time is the 10%-to-90% duration (first crossings,
linearly interpolated), settling uses a 2% band around the measured
final value, and the final value is the mean of the last 5% of samples
so that steady-state error is an output, not an assumption.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError, InsufficientPeaksError, SettlingNotReachedError
from .simulate import TimeSeries

SETTLE_BAND = 0.02
QUASI_SETTLED_FRACTION = 0.10
FINAL_VALUE_FRACTION = 0.05


@dataclass(frozen=True)
class StepMetrics:
    t_s: float
    t_r: float
    peak: float
    overshoot_pct: float
    e_ss: float


@dataclass(frozen=True)
class OscillationEstimate:
    """Mean local-maximum spacing and mean successive peak-height ratio;
    a ratio near 1 indicates sustained oscillation."""

    period: float
    amplitude_ratio: float


def _first_crossing(t: np.ndarray, y: np.ndarray, level: float) -> float:
    idx = np.nonzero(y >= level)[0]
    if idx.size == 0:
        raise SettlingNotReachedError(f"response never reaches level {level}")
    i = int(idx[0])
    if i == 0:
        return float(t[0])
    frac = (level - y[i - 1]) / (y[i] - y[i - 1])
    return float(t[i - 1] + frac * (t[i] - t[i - 1]))


def _parabolic_peak(y: np.ndarray, i: int) -> tuple[float, float]:
    """Refined (offset_in_samples, height) of a local maximum at index i."""
    if i <= 0 or i >= len(y) - 1:
        return 0.0, float(y[i])
    a, b, c = float(y[i - 1]), float(y[i]), float(y[i + 1])
    denom = a - 2.0 * b + c
    if denom >= 0.0:
        return 0.0, b
    offset = (a - c) / (2.0 * denom)
    height = b - (a - c) ** 2 / (8.0 * denom)
    return offset, height


def step_metrics(ts: TimeSeries, ref_value: float) -> StepMetrics:
    """Settling time, rise time, refined peak, percent overshoot, and
    steady-state error of a quasi-settled step response.

    Raises ``SettlingNotReachedError`` when the final 10% of samples vary
    by 1% of ``ref_value`` or more (divergent or still-oscillating runs).
    """
    if ref_value == 0.0:
        raise InputError("ref_value must be nonzero")
    y = np.asarray(ts.y, dtype=float)
    t = np.asarray(ts.t, dtype=float)
    n = len(y)
    if n < 20:
        raise InputError(f"series too short ({n} samples)")

    tail = y[int((1.0 - QUASI_SETTLED_FRACTION) * n):]
    if tail.max() - tail.min() >= 0.01 * abs(ref_value):
        raise SettlingNotReachedError(
            f"final 10% of samples vary by {tail.max() - tail.min():.3g} "
            f">= 1% of ref {ref_value}"
        )
    y_final = float(np.mean(y[int((1.0 - FINAL_VALUE_FRACTION) * n):]))
    e_ss = ref_value - y_final

    # orient so the final value is positive; all thresholds are relative
    sign = 1.0 if y_final >= 0.0 else -1.0
    ys = sign * y
    yf = sign * y_final
    if yf == 0.0:
        raise SettlingNotReachedError("final value is zero; relative metrics undefined")

    t10 = _first_crossing(t, ys, 0.1 * yf)
    t90 = _first_crossing(t, ys, 0.9 * yf)
    t_r = t90 - t10

    band = SETTLE_BAND * yf
    outside = np.nonzero(np.abs(ys - yf) > band)[0]
    if outside.size == 0:
        t_s = 0.0
    else:
        i = int(outside[-1])
        if i + 1 >= n:
            t_s = float(t[i])
        else:
            d0 = abs(ys[i] - yf) - band
            d1 = abs(ys[i + 1] - yf) - band
            t_s = float(t[i] + (t[i + 1] - t[i]) * d0 / (d0 - d1))

    i_max = int(np.argmax(ys))
    _, peak_s = _parabolic_peak(ys, i_max)
    peak = sign * peak_s
    overshoot_pct = 100.0 * (peak_s - yf) / yf
    return StepMetrics(t_s=t_s, t_r=t_r, peak=peak, overshoot_pct=overshoot_pct, e_ss=e_ss)


def oscillation_estimate(ts: TimeSeries) -> OscillationEstimate:
    """Period and amplitude trend from the local maxima above the series
    mean, with parabolic refinement of each discrete peak."""
    y = np.asarray(ts.y, dtype=float)
    t = np.asarray(ts.t, dtype=float)
    mean = float(y.mean())
    idx = [
        i
        for i in range(1, len(y) - 1)
        if y[i] > y[i - 1] and y[i] >= y[i + 1] and y[i] > mean
    ]
    if len(idx) < 3:
        raise InsufficientPeaksError(f"found {len(idx)} peaks above the mean, need >= 3")
    times = []
    heights = []
    dt = ts.dt
    for i in idx:
        offset, height = _parabolic_peak(y, i)
        times.append(t[i] + offset * dt)
        heights.append(height)
    times_arr = np.asarray(times)
    heights_arr = np.asarray(heights)
    period = float(np.mean(np.diff(times_arr)))
    amplitude_ratio = float(np.mean(heights_arr[1:] / heights_arr[:-1]))
    return OscillationEstimate(period=period, amplitude_ratio=amplitude_ratio)
