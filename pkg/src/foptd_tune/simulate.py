"""Fixed-step time-domain simulation.

Two paths: rational closed loops via a controllable-canonical state-space
realization, and PID-plus-delayed-plant feedback loops via a ring-buffer
delay history. Both use the classical 4-stage fixed-step integrator; for
a linear system with inputs held constant within a step the RK4 update is
the exact linear map x+ = R(hA) x + S(hA) h b, which is precomputed once.

The delayed controller output is sampled and held per step, so the delay
coupling itself is first order in dt; pick dt small against the fastest
controller dynamics (derivative filter) when that matters.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DelayNotMultipleOfStepError,
    DerivativeOnStepWarning,
    ImproperTransferFunctionError,
    InputError,
)
from .plant import FoptdModel
from .tf import RationalTransferFunction
from .tuning import DERIVATIVE_FILTER_N, PidGains


@dataclass(frozen=True)
class SimConfig:
    """Fixed-step unit-step-response run: step size, horizon, input kind
    (only a unit reference step at t = 0 is supported)."""

    dt: float = 1e-3
    t_final: float = 10.0
    input: str = "step"

    def __post_init__(self):
        if self.dt <= 0.0:
            raise InputError(f"dt must be positive, got {self.dt}")
        if self.t_final < 10.0 * self.dt:
            raise InputError(f"t_final must be at least 10*dt, got {self.t_final}")
        if self.input != "step":
            raise InputError(f"only a unit step input is supported, got {self.input!r}")


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled response: t[i+1] - t[i] == dt."""

    t: np.ndarray
    y: np.ndarray

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])


class DelayBuffer:
    """Ring buffer realizing a pure transport delay of ``slots`` steps.

    ``exchange(v)`` returns the value stored ``slots`` calls earlier
    (the rest value 0 during fill-in) and records ``v``. With zero slots
    it degenerates to a pass-through.
    """

    def __init__(self, slots: int, rest: float = 0.0):
        if slots < 0:
            raise InputError(f"slots must be nonnegative, got {slots}")
        self.slots = slots
        self._buf = [rest] * slots
        self._idx = 0

    def exchange(self, value: float) -> float:
        if self.slots == 0:
            return value
        old = self._buf[self._idx]
        self._buf[self._idx] = value
        self._idx = (self._idx + 1) % self.slots
        return old


@dataclass(frozen=True)
class StateSpace:
    """Controllable-canonical realization y = C x + D u, x' = A x + B u."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: float

    @property
    def order(self) -> int:
        return self.A.shape[0]

    def response(self, s: complex) -> complex:
        """C (sI - A)^{-1} B + D, for realization checks."""
        if self.order == 0:
            return complex(self.D)
        x = np.linalg.solve(s * np.eye(self.order) - self.A, self.B)
        return complex(self.C @ x + self.D)


def realize(tf: RationalTransferFunction) -> StateSpace:
    """Controllable-canonical realization of a proper rational function;
    equal degrees land in the feedthrough D."""
    if not tf.is_proper:
        raise ImproperTransferFunctionError(
            f"numerator degree {tf.num.degree} exceeds denominator degree {tf.den.degree}"
        )
    lead = tf.den.coeffs[0]
    a = np.asarray(tf.den.coeffs, dtype=float) / lead  # monic: 1, a1..an
    n = len(a) - 1
    b = np.zeros(n + 1)
    b[n + 1 - len(tf.num.coeffs):] = np.asarray(tf.num.coeffs, dtype=float) / lead
    d = float(b[0])
    if n == 0:
        return StateSpace(np.zeros((0, 0)), np.zeros(0), np.zeros(0), d)
    c = b[1:] - a[1:] * d  # c1..cn
    A = np.zeros((n, n))
    A[:-1, 1:] = np.eye(n - 1)
    A[-1, :] = -a[1:][::-1]
    B = np.zeros(n)
    B[-1] = 1.0
    C = c[::-1].copy()
    return StateSpace(A, B, C, d)


def _rk4_maps(A: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact classical-RK4 one-step maps for x' = A x + b with b held
    constant over the step: x+ = R x + S b."""
    n = A.shape[0]
    eye = np.eye(n)
    Z = h * A
    R = eye + Z @ (eye + Z @ (eye + Z @ (eye + Z / 4.0) / 3.0) / 2.0)
    S = h * (eye + Z @ (eye + Z @ (eye + Z / 4.0) / 3.0) / 2.0)
    return R, S


def _time_grid(cfg: SimConfig) -> np.ndarray:
    n_steps = int(round(cfg.t_final / cfg.dt))
    return np.arange(n_steps + 1) * cfg.dt


def step_rational(tf: RationalTransferFunction, cfg: SimConfig) -> TimeSeries:
    """Unit-step response of a proper rational transfer function.

    The output includes the feedthrough jump at t = 0 when the function
    is biproper.
    """
    ss = realize(tf)
    t = _time_grid(cfg)
    if ss.order == 0:
        return TimeSeries(t, np.full(len(t), ss.D))
    R, S = _rk4_maps(ss.A, cfg.dt)
    forced = S @ ss.B  # unit input
    y = np.empty(len(t))
    x = np.zeros(ss.order)
    for k in range(len(t)):
        y[k] = ss.C @ x + ss.D
        if k + 1 < len(t):
            x = R @ x + forced
    return TimeSeries(t, y)


def delay_steps(theta: float, dt: float) -> int:
    """theta/dt as an integer, or DelayNotMultipleOfStepError."""
    ratio = theta / dt
    m = int(round(ratio))
    if abs(ratio - m) > 1e-6:
        raise DelayNotMultipleOfStepError(
            f"theta/dt = {ratio} is not an integer; adjust dt (e.g. via fit_dt)"
        )
    return m


def fit_dt(dt: float, theta: float) -> float:
    """Largest step <= dt that divides the dead time exactly."""
    if theta <= 0.0:
        return dt
    return theta / max(1, int(np.ceil(theta / dt - 1e-12)))


def step_delayed_loop(m: FoptdModel, g: PidGains, cfg: SimConfig) -> TimeSeries:
    """Unit-step response of the PID loop around the exact delayed plant.

    The controller output u feeds the plant through a transport delay of
    theta (ring buffer, held per step); the derivative term is the
    filtered realization kd*s/(tau_f*s + 1) with tau_f = 1/N acting on
    the error. All states and the delay history start at rest.
    """
    slots = delay_steps(m.theta, cfg.dt)
    if g.kd != 0.0:
        warnings.warn(
            "step reference excites the filtered derivative path at t = 0 "
            "and at every delay echo",
            DerivativeOnStepWarning,
            stacklevel=2,
        )
        tau_f = 1.0 / DERIVATIVE_FILTER_N
        # states: plant output y, integrator xi, derivative filter xd
        A = np.array([
            [-1.0 / m.tau, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [-1.0 / tau_f, 0.0, -1.0 / tau_f],
        ])
        b_ref = np.array([0.0, 1.0, 1.0 / tau_f])
        w_x = np.array([-g.kp - g.kd / tau_f, g.ki, -g.kd / tau_f])
        w_ref = g.kp + g.kd / tau_f
    else:
        A = np.array([[-1.0 / m.tau, 0.0], [-1.0, 0.0]])
        b_ref = np.array([0.0, 1.0])
        w_x = np.array([-g.kp, g.ki])
        w_ref = g.kp
    b_u = np.zeros(A.shape[0])
    b_u[0] = m.k / m.tau

    t = _time_grid(cfg)
    y = np.empty(len(t))
    x = np.zeros(A.shape[0])

    if slots == 0:
        # No transport delay: close the algebraic coupling u = w_x x + w_ref
        # exactly inside the integrator stages.
        A_cl = A + np.outer(b_u, w_x)
        R, S = _rk4_maps(A_cl, cfg.dt)
        forced = S @ (b_ref + b_u * w_ref)
        for k in range(len(t)):
            y[k] = x[0]
            if k + 1 < len(t):
                x = R @ x + forced
        return TimeSeries(t, y)

    R, S = _rk4_maps(A, cfg.dt)
    forced_ref = S @ b_ref
    forced_u = S @ b_u
    buf = DelayBuffer(slots)
    for k in range(len(t)):
        y[k] = x[0]
        if k + 1 < len(t):
            u_now = float(w_x @ x) + w_ref
            u_delayed = buf.exchange(u_now)
            x = R @ x + forced_ref + forced_u * u_delayed
    return TimeSeries(t, y)
