"""Controller tuning toolkit for first-order-plus-dead-time processes:
rational delay approximation, Routh-Hurwitz gain intervals, Nyquist
margins, ultimate-cycle / IMC / SIMC tuning rules, and fixed-step
closed-loop simulation with performance metrics."""

from .errors import (
    DegenerateLoopError,
    DelayNotMultipleOfStepError,
    DerivativeOnStepWarning,
    FoptdToolError,
    ImproperTransferFunctionError,
    InputError,
    InsufficientPeaksError,
    LargeDelayWarning,
    NoCrossoverError,
    NoImaginaryPairError,
    NonPositiveDelayError,
    NonPositiveTauIError,
    NoStableGainError,
    NumericalError,
    PoleOnAxisError,
    SettlingNotReachedError,
    ZeroLeadingCoefficientError,
    ZeroPolynomialError,
)
from .freq import (
    FrequencyPoint,
    MarginReport,
    UltimateParams,
    evaluate_response,
    nyquist_series,
    phase_crossover,
    ultimate_from_margins,
)
from .metrics import OscillationEstimate, StepMetrics, oscillation_estimate, step_metrics
from .plant import (
    ApproxMethod,
    DelayedTransferFunction,
    FoptdModel,
    approximate_plant,
    delayed_plant,
    pade_1_1,
)
from .simulate import (
    DelayBuffer,
    SimConfig,
    StateSpace,
    TimeSeries,
    fit_dt,
    realize,
    step_delayed_loop,
    step_rational,
)
from .stability import (
    AffineGainPolynomial,
    RouthArray,
    StabilityInterval,
    gain_stability_interval,
    is_hurwitz,
    routh_array,
    ultimate_params_from_interval,
)
from .tf import Polynomial, RationalTransferFunction, poly_mul, poly_roots, rtf, unity_feedback
from .tuning import (
    ControllerType,
    PidGains,
    SimcConfig,
    SimcPreset,
    TuningRow,
    filtered_pid_transfer_function,
    imc_pi,
    pid_transfer_function,
    simc_pi,
    to_parallel_gains,
    zn_ultimate,
)

__version__ = "0.1.0"
