"""Tuning-rule engine: ultimate-cycle rules, IMC PI, SIMC PI with
tight/smooth presets, and conversion between time-constant and
parallel-gain controller forms."""

import enum
from dataclasses import dataclass

from .errors import InputError, NonPositiveTauIError
from .freq import UltimateParams
from .plant import FoptdModel
from .tf import Polynomial, RationalTransferFunction


# Derivative action is realized with a first-order filter whose pole sits
# at -N (tau_f = 1/N), the standard parallel-PID filter coefficient.
DERIVATIVE_FILTER_N = 100.0


class ControllerType(enum.Enum):
    P = "P"
    PI = "PI"
    PID = "PID"


@dataclass(frozen=True)
class PidGains:
    """Parallel-form gains: u = kp*e + ki*int(e) + kd*de/dt."""

    kp: float
    ki: float
    kd: float

    def __post_init__(self):
        if self.kp == 0.0 and self.ki == 0.0 and self.kd == 0.0:
            raise InputError("at least one gain must be nonzero")


@dataclass(frozen=True)
class TuningRow:
    """Time-constant form: kp with integral/derivative times (None when
    the controller type has no such action)."""

    controller_type: ControllerType
    kp: float
    tau_i: float | None = None
    tau_d: float | None = None

    def __post_init__(self):
        want_i = self.controller_type in (ControllerType.PI, ControllerType.PID)
        want_d = self.controller_type is ControllerType.PID
        if (self.tau_i is not None) != want_i or (self.tau_d is not None) != want_d:
            raise InputError(
                f"{self.controller_type.value} row must have tau_i={'set' if want_i else 'absent'}"
                f" and tau_d={'set' if want_d else 'absent'}"
            )


class SimcPreset(enum.Enum):
    TIGHT = "tight"    # tau_c = theta
    SMOOTH = "smooth"  # tau_c = 1.5 * theta
    CUSTOM = "custom"


@dataclass(frozen=True)
class SimcConfig:
    preset: SimcPreset
    tau_c: float | None = None

    def resolve_tau_c(self, m: FoptdModel) -> float:
        if self.preset is SimcPreset.TIGHT:
            return m.theta
        if self.preset is SimcPreset.SMOOTH:
            return 1.5 * m.theta
        if self.tau_c is None or self.tau_c <= 0.0:
            raise InputError("custom SIMC preset needs tau_c > 0")
        return self.tau_c


# Ultimate-cycle rule table: kp factor on k_u, tau_i / tau_d factors on T_u.
_ULTIMATE_RULES = {
    ControllerType.P: (0.5, None, None),
    ControllerType.PI: (0.45, 0.83, None),
    ControllerType.PID: (0.6, 0.5, 0.125),
}


def zn_ultimate(u: UltimateParams, controller_type: ControllerType) -> TuningRow:
    """Ultimate-cycle tuning row for the requested controller type."""
    a, b, c = _ULTIMATE_RULES[controller_type]
    return TuningRow(
        controller_type=controller_type,
        kp=a * u.k_u,
        tau_i=None if b is None else b * u.T_u,
        tau_d=None if c is None else c * u.T_u,
    )


def to_parallel_gains(row: TuningRow) -> PidGains:
    """ki = kp/tau_i, kd = kp*tau_d (zero when the action is absent)."""
    if row.tau_i is not None and row.tau_i <= 0.0:
        raise NonPositiveTauIError(f"tau_i must be positive, got {row.tau_i}")
    ki = row.kp / row.tau_i if row.tau_i is not None else 0.0
    kd = row.kp * row.tau_d if row.tau_d is not None else 0.0
    return PidGains(kp=row.kp, ki=ki, kd=kd)


def imc_pi(m: FoptdModel, tau_c: float) -> PidGains:
    """IMC PI rule for a first-order lag with dead time:
    kp = tau / (k * (tau_c + theta)), tau_i = tau."""
    if tau_c <= 0.0:
        raise InputError(f"tau_c must be positive, got {tau_c}")
    kp = m.tau / (m.k * (tau_c + m.theta))
    return PidGains(kp=kp, ki=kp / m.tau, kd=0.0)


def simc_pi(m: FoptdModel, cfg: SimcConfig) -> PidGains:
    """SIMC PI rule: Kc = tau / (k * (tau_c + theta)),
    tau_i = min(tau, 4 * (tau_c + theta))."""
    tau_c = cfg.resolve_tau_c(m)
    if tau_c <= 0.0:
        raise InputError(f"resolved tau_c must be positive, got {tau_c}")
    kc = m.tau / (m.k * (tau_c + m.theta))
    tau_i = min(m.tau, 4.0 * (tau_c + m.theta))
    return PidGains(kp=kc, ki=kc / tau_i, kd=0.0)


def pid_transfer_function(g: PidGains) -> RationalTransferFunction:
    """Controller transfer function (kd s^2 + kp s + ki)/s; a pure-P
    controller collapses to the static gain kp/1."""
    if g.ki == 0.0 and g.kd == 0.0:
        return RationalTransferFunction(Polynomial((g.kp,)), Polynomial((1.0,)))
    return RationalTransferFunction(Polynomial((g.kd, g.kp, g.ki)), Polynomial((1.0, 0.0)))


def filtered_pid_transfer_function(g: PidGains, filter_n: float = DERIVATIVE_FILTER_N) -> RationalTransferFunction:
    """PID with a first-order filter on the derivative path:
    kp + ki/s + kd s/(tau_f s + 1), tau_f = 1/filter_n.

    This is how the derivative is realized in simulation (an ideal
    derivative of a step reference is undefined); kd = 0 falls back to
    the ideal form.
    """
    if g.kd == 0.0:
        return pid_transfer_function(g)
    tau_f = 1.0 / filter_n
    num = Polynomial((g.kp * tau_f + g.kd, g.kp + g.ki * tau_f, g.ki))
    den = Polynomial((tau_f, 1.0, 0.0))
    return RationalTransferFunction(num, den)
