"""Frequency response of delayed transfer functions: pointwise
evaluation, phase-crossover / gain-margin search, Nyquist data series,
and the ultimate-parameter formulas k_u = 10^(Gm_dB/20), T_u = 2*pi/w_c.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NoCrossoverError, PoleOnAxisError
from .plant import DelayedTransferFunction

POLE_AXIS_TOL = 1e-9
GRID_PER_DECADE = 400
PHASE_TOL = 1e-8


@dataclass(frozen=True)
class FrequencyPoint:
    """One sample of G(jw): cartesian parts, magnitude in dB, and the
    unwrapped phase in radians."""

    omega: float
    re: float
    im: float
    mag_db: float
    phase: float


@dataclass(frozen=True)
class MarginReport:
    gm_db: float
    gm_mag: float
    omega_c: float


@dataclass(frozen=True)
class UltimateParams:
    """Critical proportional gain and the period of the resulting
    constant-amplitude oscillation."""

    k_u: float
    T_u: float

    def __post_init__(self):
        if self.k_u <= 0.0 or self.T_u <= 0.0:
            raise InputError(f"ultimate parameters must be positive, got {self}")


def _check_pole_distance(g: DelayedTransferFunction, omega: float) -> None:
    for p in g.rational.poles():
        if abs(1j * omega - p) < POLE_AXIS_TOL:
            raise PoleOnAxisError(f"jw = {1j * omega} is within {POLE_AXIS_TOL} of pole {p}")


def _full_value(g: DelayedTransferFunction, omega: float) -> complex:
    return g.rational(1j * omega) * cmath.exp(-1j * g.delay * omega)


def evaluate_response(g: DelayedTransferFunction, omega: float) -> FrequencyPoint:
    """Evaluate G_rational(jw) * e^{-j*delay*w} at a single frequency.

    The phase is the principal phase of the rational part plus the exact
    (unbounded) delay ramp -delay*w; sweeps that need cross-sample
    unwrapping of the rational part should use ``nyquist_series``.
    """
    if omega < 0.0:
        raise InputError(f"omega must be nonnegative, got {omega}")
    _check_pole_distance(g, omega)
    rat = g.rational(1j * omega)
    val = rat * cmath.exp(-1j * g.delay * omega)
    mag = abs(val)
    return FrequencyPoint(
        omega=omega,
        re=val.real,
        im=val.imag,
        mag_db=20.0 * math.log10(mag) if mag > 0.0 else float("-inf"),
        phase=cmath.phase(rat) - g.delay * omega,
    )


def _sweep(g: DelayedTransferFunction, omegas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Complex response and unwrapped phase along an increasing grid."""
    poles = g.rational.poles()
    s = 1j * omegas
    for p in poles:
        d = np.min(np.abs(s - p))
        if d < POLE_AXIS_TOL:
            raise PoleOnAxisError(f"sweep grid passes within {d:.2e} of pole {p}")
    vals_rat = np.polyval(g.rational.num.coeffs, s) / np.polyval(g.rational.den.coeffs, s)
    # Unwrap only the rational part (slowly varying); the delay ramp is
    # exact and may advance by more than pi between grid points.
    phase = np.unwrap(np.angle(vals_rat)) - g.delay * omegas
    return vals_rat * np.exp(-1j * g.delay * omegas), phase


def nyquist_series(
    g: DelayedTransferFunction, omega_lo: float, omega_hi: float, n: int
) -> list[FrequencyPoint]:
    """n log-spaced response samples with phase unwrapped in sweep order."""
    if not 0.0 < omega_lo < omega_hi:
        raise InputError(f"need 0 < omega_lo < omega_hi, got ({omega_lo}, {omega_hi})")
    if n < 2:
        raise InputError(f"need n >= 2 points, got {n}")
    omegas = np.logspace(math.log10(omega_lo), math.log10(omega_hi), n)
    vals, phases = _sweep(g, omegas)
    mags = np.abs(vals)
    with np.errstate(divide="ignore"):
        mags_db = 20.0 * np.log10(mags)
    return [
        FrequencyPoint(float(w), float(v.real), float(v.imag), float(db), float(ph))
        for w, v, db, ph in zip(omegas, vals, mags_db, phases)
    ]


def default_omega_max(g: DelayedTransferFunction) -> float:
    """Generous upper bound for the first phase crossover of a delayed
    low-order plant: 100/delay, or 100 times the fastest pole when the
    delay is zero."""
    if g.delay > 0.0:
        return 100.0 / g.delay
    poles = g.rational.poles()
    fastest = max((abs(p) for p in poles), default=0.0)
    return 100.0 * fastest if fastest > 0.0 else 100.0


def phase_crossover(g: DelayedTransferFunction, omega_max: float | None = None) -> MarginReport:
    """Locate the first frequency where the unwrapped phase reaches -pi
    and report the gain margin there.

    A log grid (>= 400 points/decade) brackets the crossing, then
    bisection refines it to |phase + pi| < 1e-8. Raises
    ``NoCrossoverError`` if the phase stays above -pi on (0, omega_max].
    """
    if omega_max is None:
        omega_max = default_omega_max(g)
    if omega_max <= 0.0:
        raise InputError(f"omega_max must be positive, got {omega_max}")

    omega_lo = omega_max * 1e-8
    decades = math.log10(omega_max / omega_lo)
    omegas = np.logspace(math.log10(omega_lo), math.log10(omega_max), int(GRID_PER_DECADE * decades) + 1)
    _, phases = _sweep(g, omegas)
    if phases[0] <= -math.pi:
        raise NoCrossoverError("phase already at or below -pi at the lowest scanned frequency")
    below = np.nonzero(phases <= -math.pi)[0]
    if below.size == 0:
        raise NoCrossoverError(f"phase never reaches -pi for omega <= {omega_max}")
    i = int(below[0])

    # Bisect on the bracketing grid cell; the grid is dense enough that
    # phase moves well under pi per cell, so principal-value increments
    # from the anchored endpoint are unambiguous.
    lo, hi = float(omegas[i - 1]), float(omegas[i])
    ph_lo = float(phases[i - 1])
    val_lo = _full_value(g, lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val_mid = _full_value(g, mid)
        ph_mid = ph_lo + cmath.phase(val_mid / val_lo)
        if abs(ph_mid + math.pi) < PHASE_TOL:
            lo, ph_lo, val_lo = mid, ph_mid, val_mid
            break
        if ph_mid > -math.pi:
            lo, ph_lo, val_lo = mid, ph_mid, val_mid
        else:
            hi = mid
    omega_c = lo
    gm_mag = 1.0 / abs(_full_value(g, omega_c))
    return MarginReport(gm_db=20.0 * math.log10(gm_mag), gm_mag=gm_mag, omega_c=omega_c)


def ultimate_from_margins(m: MarginReport) -> UltimateParams:
    """k_u = 10^(gm_db/20), T_u = 2*pi/omega_c."""
    return UltimateParams(k_u=10.0 ** (m.gm_db / 20.0), T_u=2.0 * math.pi / m.omega_c)
