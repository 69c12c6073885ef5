"""Serialization of results to the delimited and JSON wire formats.

CSV conventions: 9-significant-digit floats, LF line endings. JSON
payloads carry a top-level ``"schema": 1`` and contain no timestamps so
identical invocations are byte-identical.
"""

import json

from .freq import FrequencyPoint, MarginReport, UltimateParams
from .metrics import StepMetrics
from .plant import FoptdModel
from .simulate import TimeSeries
from .stability import RouthArray, StabilityInterval
from .tuning import PidGains, TuningRow

SCHEMA_VERSION = 1

COMPARE_COLUMNS = ("method", "kp", "ki", "kd", "t_s", "t_r", "overshoot_pct", "peak", "e_ss")


def f9(x: float) -> str:
    return format(float(x), ".9g")


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_text(path, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


# --- CSV ------------------------------------------------------------------

def series_csv(ts: TimeSeries) -> str:
    lines = ["t,y"]
    lines.extend(f"{f9(t)},{f9(y)}" for t, y in zip(ts.t, ts.y))
    return "\n".join(lines) + "\n"


def nyquist_csv(points: list[FrequencyPoint]) -> str:
    lines = ["omega,re,im,mag_db,phase_rad"]
    lines.extend(
        f"{f9(p.omega)},{f9(p.re)},{f9(p.im)},{f9(p.mag_db)},{f9(p.phase)}" for p in points
    )
    return "\n".join(lines) + "\n"


def routh_csv(arr: RouthArray) -> str:
    lines = [
        ",".join([label] + [f9(v) for v in row])
        for label, row in zip(arr.labels, arr.rows)
    ]
    return "\n".join(lines) + "\n"


def table_csv(columns: tuple[str, ...], rows: list[dict]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for col in columns:
            v = row.get(col)
            cells.append("" if v is None else (f9(v) if isinstance(v, (int, float)) else str(v)))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# --- JSON fragments --------------------------------------------------------

def model_dict(m: FoptdModel) -> dict:
    return {"k": m.k, "tau": m.tau, "theta": m.theta}


def gains_dict(g: PidGains) -> dict:
    return {"kp": g.kp, "ki": g.ki, "kd": g.kd}


def tuning_result_dict(method: str, gains: PidGains, row: TuningRow | None = None) -> dict:
    """The tuning-result wire format: method plus both gain forms. The
    time constants come from ``row`` when given, else from the gains."""
    if row is not None:
        tau_i, tau_d = row.tau_i, row.tau_d
    else:
        tau_i = gains.kp / gains.ki if gains.ki != 0.0 else None
        tau_d = gains.kd / gains.kp if gains.kd != 0.0 and gains.kp != 0.0 else None
    return {
        "method": method,
        "kp": gains.kp,
        "ki": gains.ki,
        "kd": gains.kd,
        "tau_i": tau_i,
        "tau_d": tau_d,
    }


def row_dict(row: TuningRow) -> dict:
    return {
        "type": row.controller_type.value,
        "kp": row.kp,
        "tau_i": row.tau_i,
        "tau_d": row.tau_d,
    }


def interval_dict(iv: StabilityInterval) -> dict:
    return {
        "k_min": iv.k_min,
        "k_max": iv.k_max,
        "tolerance": iv.tolerance,
        "unbounded_below": iv.unbounded_below,
        "unbounded_above": iv.unbounded_above,
    }


def margins_dict(m: MarginReport) -> dict:
    return {"gm_db": m.gm_db, "gm_mag": m.gm_mag, "omega_c": m.omega_c}


def ultimate_dict(u: UltimateParams) -> dict:
    return {"k_u": float(u.k_u), "T_u": float(u.T_u)}


def metrics_dict(m: StepMetrics) -> dict:
    return {
        "t_s": m.t_s,
        "t_r": m.t_r,
        "peak": m.peak,
        "overshoot_pct": m.overshoot_pct,
        "e_ss": m.e_ss,
    }


def series_dict(ts: TimeSeries) -> dict:
    return {"t": [float(v) for v in ts.t], "y": [float(v) for v in ts.y]}
