"""End-to-end tuning chains and the canned reproduction scenarios.

The demo process (k = 1, tau = 1, theta = 0.3 s) is the bundled
benchmark; the ``table-*`` and ``fig-*`` presets regenerate its tuning
tables, margin analysis, pole locations, and response comparisons in one
command each.
"""

from dataclasses import dataclass, field

from . import reporting
from .errors import FoptdToolError, InputError
from .freq import MarginReport, UltimateParams, nyquist_series, phase_crossover, ultimate_from_margins
from .metrics import step_metrics
from .plant import ApproxMethod, FoptdModel, approximate_plant, delayed_plant
from .simulate import SimConfig, TimeSeries, fit_dt, step_delayed_loop, step_rational
from .stability import (
    AffineGainPolynomial,
    StabilityInterval,
    gain_stability_interval,
    routh_array,
    ultimate_params_from_interval,
)
from .tf import RationalTransferFunction, poly_roots, unity_feedback
from .tuning import (
    ControllerType,
    PidGains,
    SimcConfig,
    SimcPreset,
    TuningRow,
    filtered_pid_transfer_function,
    imc_pi,
    simc_pi,
    to_parallel_gains,
    zn_ultimate,
)

DEMO_MODEL = FoptdModel(k=1.0, tau=1.0, theta=0.3)
DEFAULT_GAIN_SEARCH = (-10.0, 20.0)
DEFAULT_GAIN_TOL = 1e-6
IMC_TAU_C_DEMO = 1.5

# Benchmark PID settings for the demo process: the ultimate-cycle PID
# tuned on the rational-approximation route and on the Nyquist route.
CASE1_PID_GAINS = PidGains(kp=4.6, ki=11.194, kd=0.473)
CASE2_PID_GAINS = PidGains(kp=3.5341, ki=6.5301, kd=0.4782)

METHODS = ("zn-pade", "zn-nyquist", "imc", "simc-tight", "simc-smooth")
PI_ONLY_METHODS = ("imc", "simc-tight", "simc-smooth")


@dataclass(frozen=True)
class RunSpec:
    """One tuned-and-simulated scenario for compare/simulate."""

    model: FoptdModel
    method: str
    controller_type: ControllerType = ControllerType.PID
    sim: SimConfig = field(default_factory=SimConfig)
    tau_c: float | None = None
    gains: PidGains | None = None  # explicit override; skips the tuning chain
    label: str | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.method in PI_ONLY_METHODS and self.controller_type is not ControllerType.PI:
            raise InputError(f"method {self.method!r} produces PI controllers only")


@dataclass(frozen=True)
class ZnPadeChain:
    interval: StabilityInterval
    ultimate: UltimateParams
    row: TuningRow
    gains: PidGains


@dataclass(frozen=True)
class ZnNyquistChain:
    margins: MarginReport
    ultimate: UltimateParams
    row: TuningRow
    gains: PidGains


def pade_char(m: FoptdModel) -> AffineGainPolynomial:
    """Characteristic polynomial (affine in K) of the proportional loop
    around the rational-approximated plant."""
    return AffineGainPolynomial.for_proportional_loop(approximate_plant(m, ApproxMethod.PADE11))


def tune_zn_pade(
    m: FoptdModel,
    controller_type: ControllerType = ControllerType.PID,
    search: tuple[float, float] = DEFAULT_GAIN_SEARCH,
    tol: float = DEFAULT_GAIN_TOL,
) -> ZnPadeChain:
    """Rational-approximation route: gain interval by Routh analysis,
    ultimate parameters at its upper boundary, ultimate-cycle rules."""
    char = pade_char(m)
    interval = gain_stability_interval(char, search, tol)
    ultimate = ultimate_params_from_interval(char, interval)
    row = zn_ultimate(ultimate, controller_type)
    return ZnPadeChain(interval, ultimate, row, to_parallel_gains(row))


def tune_zn_nyquist(
    m: FoptdModel,
    controller_type: ControllerType = ControllerType.PID,
    omega_max: float | None = None,
) -> ZnNyquistChain:
    """Delay-retained route: gain margin and phase-crossover frequency
    of the exact plant, ultimate parameters, ultimate-cycle rules."""
    margins = phase_crossover(delayed_plant(m), omega_max)
    ultimate = ultimate_from_margins(margins)
    row = zn_ultimate(ultimate, controller_type)
    return ZnNyquistChain(margins, ultimate, row, to_parallel_gains(row))


def tune_for_spec(spec: RunSpec) -> tuple[PidGains, dict]:
    """Gains (explicit or chain-computed) plus chain context for reports."""
    if spec.gains is not None:
        return spec.gains, {}
    m = spec.model
    if spec.method == "zn-pade":
        chain = tune_zn_pade(m, spec.controller_type)
        return chain.gains, {
            "interval": reporting.interval_dict(chain.interval),
            "ultimate": reporting.ultimate_dict(chain.ultimate),
            "row": reporting.row_dict(chain.row),
        }
    if spec.method == "zn-nyquist":
        chain = tune_zn_nyquist(m, spec.controller_type)
        return chain.gains, {
            "margins": reporting.margins_dict(chain.margins),
            "ultimate": reporting.ultimate_dict(chain.ultimate),
            "row": reporting.row_dict(chain.row),
        }
    if spec.method == "imc":
        if spec.tau_c is None:
            raise InputError("imc tuning needs tau_c")
        return imc_pi(m, spec.tau_c), {"tau_c": spec.tau_c}
    preset = SimcPreset.TIGHT if spec.method == "simc-tight" else SimcPreset.SMOOTH
    cfg = SimcConfig(preset)
    return simc_pi(m, cfg), {"tau_c": cfg.resolve_tau_c(m)}


def pade_p_loop(m: FoptdModel, gain: float) -> RationalTransferFunction:
    """Closed proportional loop around the rational-approximated plant."""
    return unity_feedback(approximate_plant(m, ApproxMethod.PADE11).scale(gain))


def pade_pid_loop(m: FoptdModel, g: PidGains) -> RationalTransferFunction:
    """Closed PID loop around the rational-approximated plant, with the
    derivative realized through its simulation filter so the response
    starts from rest like the delayed-loop path does."""
    ctrl = filtered_pid_transfer_function(g)
    return unity_feedback(ctrl * approximate_plant(m, ApproxMethod.PADE11))


def simulate_spec(spec: RunSpec, gains: PidGains, true_delay: bool = False) -> TimeSeries:
    """Run the loop the method is defined against: the rational loop for
    zn-pade (unless ``true_delay``), the exact delayed loop otherwise."""
    if spec.method == "zn-pade" and not true_delay:
        return step_rational(pade_pid_loop(spec.model, gains), spec.sim)
    sim = spec.sim
    adjusted = fit_dt(sim.dt, spec.model.theta)
    if adjusted != sim.dt:
        sim = SimConfig(dt=adjusted, t_final=sim.t_final, input=sim.input)
    return step_delayed_loop(spec.model, gains, sim)


def compare_specs(
    specs: list[RunSpec], zn_pade_true_delay: bool = False
) -> tuple[list[dict], list[tuple[str, TimeSeries]]]:
    """Tune and simulate every spec; one metrics row per run (rows with
    a per-run failure carry an ``error`` field instead of metrics).
    Output order follows the input order."""
    rows: list[dict] = []
    series: list[tuple[str, TimeSeries]] = []

    def one(label: str, spec: RunSpec, true_delay: bool) -> None:
        row: dict = {"method": label}
        try:
            gains, _ = tune_for_spec(spec)
            ts = simulate_spec(spec, gains, true_delay)
            met = step_metrics(ts, 1.0)
            row.update(reporting.gains_dict(gains))
            row.update(reporting.metrics_dict(met))
            series.append((label, ts))
        except FoptdToolError as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)

    for spec in specs:
        label = spec.label or spec.method
        one(label, spec, False)
        if spec.method == "zn-pade" and zn_pade_true_delay:
            one(f"{label} (delayed plant)", spec, True)
    return rows, series


# --- named reproduction scenarios -----------------------------------------

def _zn_table(ultimate: UltimateParams) -> list[dict]:
    rows = []
    for ct in (ControllerType.P, ControllerType.PI, ControllerType.PID):
        row = zn_ultimate(ultimate, ct)
        d = reporting.row_dict(row)
        d.update(reporting.gains_dict(to_parallel_gains(row)))
        rows.append(d)
    return rows


def preset_table_3() -> dict:
    m = DEMO_MODEL
    char = pade_char(m)
    interval = gain_stability_interval(char, DEFAULT_GAIN_SEARCH, DEFAULT_GAIN_TOL)
    ultimate = ultimate_params_from_interval(char, interval)
    rows = _zn_table(ultimate)
    return {
        "json": {
            "interval": reporting.interval_dict(interval),
            "ultimate": reporting.ultimate_dict(ultimate),
            "rows": rows,
        },
        "tables": {
            "table-3.csv": (("type", "kp", "tau_i", "tau_d", "ki", "kd"), rows),
        },
    }


def preset_table_4() -> dict:
    m = DEMO_MODEL
    margins = phase_crossover(delayed_plant(m))
    ultimate = ultimate_from_margins(margins)
    rows = _zn_table(ultimate)
    return {
        "json": {
            "margins": reporting.margins_dict(margins),
            "ultimate": reporting.ultimate_dict(ultimate),
            "rows": rows,
        },
        "tables": {
            "table-4.csv": (("type", "kp", "tau_i", "tau_d", "ki", "kd"), rows),
        },
    }


def preset_table_5() -> dict:
    char = pade_char(DEMO_MODEL)
    rows = []
    for gain in (4.6, 5.0):
        poles = poly_roots(char.at(gain))
        rows.append({
            "gain": gain,
            "poles": [{"re": p.real, "im": p.imag} for p in poles],
            "all_left_half_plane": all(p.real < 0 for p in poles),
        })
    return {"json": {"rows": rows}, "tables": {}}


def _case_runs(dt: float = 1e-3, t_final: float = 10.0) -> list[tuple[str, TimeSeries]]:
    m = DEMO_MODEL
    cfg = SimConfig(dt=dt, t_final=t_final)
    ts1 = step_rational(pade_pid_loop(m, CASE1_PID_GAINS), cfg)
    ts2 = step_delayed_loop(m, CASE2_PID_GAINS, cfg)
    return [("case-1 (approximated delay)", ts1), ("case-2 (delay retained)", ts2)]


def preset_table_6() -> dict:
    runs = _case_runs()
    gains = {0: CASE1_PID_GAINS, 1: CASE2_PID_GAINS}
    rows = []
    for i, (label, ts) in enumerate(runs):
        row = {"method": label}
        row.update(reporting.gains_dict(gains[i]))
        row.update(reporting.metrics_dict(step_metrics(ts, 1.0)))
        rows.append(row)
    return {
        "json": {"rows": rows},
        "tables": {"table-6.csv": (reporting.COMPARE_COLUMNS, rows)},
    }


def _table_7_specs() -> list[RunSpec]:
    m = DEMO_MODEL
    sim = SimConfig(dt=1e-3, t_final=12.0)
    return [
        RunSpec(m, "zn-pade", ControllerType.PID, sim, gains=CASE1_PID_GAINS),
        RunSpec(m, "imc", ControllerType.PI, sim, tau_c=IMC_TAU_C_DEMO),
        RunSpec(m, "simc-tight", ControllerType.PI, sim),
        RunSpec(m, "simc-smooth", ControllerType.PI, sim),
    ]


def preset_table_7() -> dict:
    rows, series = compare_specs(_table_7_specs())
    return {
        "json": {"rows": rows},
        "tables": {"table-7.csv": (reporting.COMPARE_COLUMNS, rows)},
        "series": {f"table-7-{label}.csv": ts for label, ts in series},
    }


def preset_fig_2() -> dict:
    m = DEMO_MODEL
    chain = tune_zn_pade(m)
    k_u = chain.ultimate.k_u
    ts = step_rational(pade_p_loop(m, k_u), SimConfig(dt=1e-3, t_final=10.0))
    return {
        "json": {"gain": k_u, "description": "constant-amplitude oscillation at the ultimate gain"},
        "series": {"fig-2.csv": ts},
        "figures": {"fig-2.png": ("step", [(f"K = {k_u:.4f}", ts)], "Proportional loop at the ultimate gain")},
    }


def preset_fig_3() -> dict:
    points = nyquist_series(delayed_plant(DEMO_MODEL), 1e-2, 1e2, 1000)
    return {
        "json": {"points": len(points), "omega_range": [1e-2, 1e2]},
        "nyquist": {"fig-3.csv": points},
        "figures": {"fig-3.png": ("nyquist", points, "Nyquist locus of the delayed process")},
    }


def preset_fig_4() -> dict:
    m = DEMO_MODEL
    cfg = SimConfig(dt=1e-3, t_final=10.0)
    gains = (4.6, 5.0, 7.67, 8.0)
    series = [(f"K = {k:g}", step_rational(pade_p_loop(m, k), cfg)) for k in gains]
    return {
        "json": {"gains": list(gains)},
        "series": {f"fig-4-k{k:g}.csv": ts for k, (_, ts) in zip(gains, series)},
        "figures": {"fig-4.png": ("step", series, "Proportional-loop step responses")},
    }


def preset_fig_5() -> dict:
    runs = _case_runs()
    return {
        "json": {"runs": [label for label, _ in runs]},
        "series": {"fig-5-case-1.csv": runs[0][1], "fig-5-case-2.csv": runs[1][1]},
        "figures": {"fig-5.png": ("step", runs, "Approximated vs retained delay")},
    }


def preset_fig_6() -> dict:
    rows, series = compare_specs(_table_7_specs())
    return {
        "json": {"rows": rows},
        "series": {f"fig-6-{label}.csv": ts for label, ts in series},
        "figures": {"fig-6.png": ("step", series, "Tuned-controller comparison")},
    }


PRESETS = {
    "table-3": preset_table_3,
    "table-4": preset_table_4,
    "table-5": preset_table_5,
    "table-6": preset_table_6,
    "table-7": preset_table_7,
    "fig-2": preset_fig_2,
    "fig-3": preset_fig_3,
    "fig-4": preset_fig_4,
    "fig-5": preset_fig_5,
    "fig-6": preset_fig_6,
}
