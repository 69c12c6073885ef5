"""First-order-plus-dead-time process models and their rational
approximations (1/1 Pade, first-order Taylor)."""

import enum
import warnings
from dataclasses import dataclass

from .errors import InputError, LargeDelayWarning, NonPositiveDelayError
from .tf import Polynomial, RationalTransferFunction, poly_mul


@dataclass(frozen=True)
class FoptdModel:
    """Process gain k, time constant tau [s], dead time theta [s]."""

    k: float
    tau: float
    theta: float

    def __post_init__(self):
        if self.tau <= 0.0:
            raise InputError(f"tau must be positive, got {self.tau}")
        if self.theta < 0.0:
            raise InputError(f"theta must be nonnegative, got {self.theta}")
        if self.k == 0.0:
            raise InputError("process gain k must be nonzero")


@dataclass(frozen=True)
class DelayedTransferFunction:
    """Rational part in series with a pure dead time e^{-delay*s}."""

    rational: RationalTransferFunction
    delay: float

    def __post_init__(self):
        if self.delay < 0.0:
            raise InputError(f"delay must be nonnegative, got {self.delay}")


class ApproxMethod(enum.Enum):
    PADE11 = "pade11"
    TAYLOR1 = "taylor1"


def pade_1_1(theta: float) -> RationalTransferFunction:
    """First-order (1/1) all-pass approximation of a dead time:
    (1 - theta/2 s) / (1 + theta/2 s).

    theta must be strictly positive; a zero dead time needs no
    approximation and callers should branch instead.
    """
    if theta <= 0.0:
        raise NonPositiveDelayError(f"pade_1_1 requires theta > 0, got {theta}")
    h = 0.5 * theta
    return RationalTransferFunction(Polynomial((-h, 1.0)), Polynomial((h, 1.0)))


def approximate_plant(m: FoptdModel, method: ApproxMethod = ApproxMethod.PADE11) -> RationalTransferFunction:
    """Rational approximation of the full delayed process.

    PADE11:  k (1 - theta/2 s) / [(tau s + 1)(1 + theta/2 s)]
    TAYLOR1: k (1 - theta s) / (tau s + 1)
    """
    if m.theta > 0.5 * m.tau:
        warnings.warn(
            f"dead time {m.theta} exceeds tau/2 = {0.5 * m.tau}; "
            "rational approximations degrade for large delay ratios",
            LargeDelayWarning,
            stacklevel=2,
        )
    lag = Polynomial((m.tau, 1.0))
    if method is ApproxMethod.PADE11:
        p = pade_1_1(m.theta)
        num = p.num.scale(m.k)
        den = poly_mul(lag, p.den)
    elif method is ApproxMethod.TAYLOR1:
        num = Polynomial((-m.theta, 1.0)).scale(m.k)
        den = lag
    else:
        raise InputError(f"unknown approximation method: {method!r}")
    return RationalTransferFunction(num, den)


def delayed_plant(m: FoptdModel) -> DelayedTransferFunction:
    """Exact representation: k/(tau s + 1) behind a dead time of theta."""
    return DelayedTransferFunction(
        rational=RationalTransferFunction(Polynomial((m.k,)), Polynomial((m.tau, 1.0))),
        delay=m.theta,
    )
