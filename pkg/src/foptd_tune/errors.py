"""Exception and warning types shared across the toolkit.

Two families matter for the CLI exit-code contract: `InputError` (bad
arguments or preconditions, exit code 2) and `NumericalError` (a
computation that could not produce a result, exit code 3).
"""


class FoptdToolError(Exception):
    """Base class for all toolkit errors."""


class InputError(FoptdToolError):
    """Invalid argument or violated precondition."""


class NumericalError(FoptdToolError):
    """A numeric procedure failed to produce a usable result."""


# --- input / precondition violations -----------------------------------

class ZeroPolynomialError(InputError):
    """Operation requires a nonzero polynomial."""


class ZeroLeadingCoefficientError(InputError):
    """Polynomial leading coefficient is zero where it must not be."""


class NonPositiveDelayError(InputError):
    """Dead time must be strictly positive for this operation."""


class NonPositiveTauIError(InputError):
    """Integral time constant must be strictly positive."""


class ImproperTransferFunctionError(InputError):
    """Numerator degree exceeds denominator degree."""


class DelayNotMultipleOfStepError(InputError):
    """Dead time is not an integer multiple of the simulation step."""


# --- numerical failures --------------------------------------------------

class DegenerateLoopError(NumericalError):
    """Closing the loop produced a zero denominator."""


class NoStableGainError(NumericalError):
    """No gain in the search range stabilizes the loop."""


class NoImaginaryPairError(NumericalError):
    """Stability boundary is not an imaginary-axis root pair."""


class PoleOnAxisError(NumericalError):
    """Requested frequency coincides with a pole on the imaginary axis."""


class NoCrossoverError(NumericalError):
    """Loop phase never reaches -180 degrees in the searched range."""


class SettlingNotReachedError(NumericalError):
    """Response has not settled within the simulated horizon."""


class InsufficientPeaksError(NumericalError):
    """Too few oscillation peaks to estimate a period."""


# --- warnings -------------------------------------------------------------

class LargeDelayWarning(UserWarning):
    """Dead time is large relative to the time constant; the rational
    approximation loses accuracy."""


class DerivativeOnStepWarning(UserWarning):
    """A step reference excites the derivative path of the controller."""
