"""Command-line front end.

Subcommands: tune, analyze, simulate, compare, reproduce. Results go to
stdout as JSON (schema 1); CSV series, tables, and figures go to files
named by flags. Exit codes: 0 success, 2 validation error, 3 numerical
failure, with a machine-readable error JSON on stderr.
"""

import argparse
import json
import sys
from pathlib import Path

from . import presets, reporting
from .errors import (
    FoptdToolError,
    InputError,
    NoImaginaryPairError,
    NumericalError,
    SettlingNotReachedError,
)
from .freq import nyquist_series, phase_crossover, ultimate_from_margins
from .metrics import step_metrics
from .plant import FoptdModel, delayed_plant
from .simulate import SimConfig, fit_dt, step_delayed_loop, step_rational
from .stability import gain_stability_interval, routh_array, ultimate_params_from_interval
from .tf import poly_roots
from .tuning import ControllerType, PidGains

SCHEMA = reporting.SCHEMA_VERSION


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _parse_kv(text: str, keys: tuple[str, ...], flag: str) -> dict:
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise InputError(f"{flag}: expected key=value pairs, got {part!r}")
        key, _, val = part.partition("=")
        key = key.strip()
        if key not in keys:
            raise InputError(f"{flag}: unknown key {key!r}; expected {keys}")
        try:
            out[key] = float(val)
        except ValueError:
            raise InputError(f"{flag}: {key} must be a number, got {val!r}") from None
    return out


def _parse_pair(text: str, flag: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"{flag}: expected LO,HI")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise InputError(f"{flag}: both bounds must be numbers, got {text!r}") from None


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise InputError(f"config {path} must hold a JSON object")
    return cfg


def _pick(*values):
    for v in values:
        if v is not None:
            return v
    return None


def _resolve_model(args, cfg: dict) -> FoptdModel:
    # flags > config > demo defaults
    base = {"k": 1.0, "tau": 1.0, "theta": 0.3}
    conf = cfg.get("model")
    if isinstance(conf, dict):
        base.update({k: float(v) for k, v in conf.items() if k in base})
    if getattr(args, "model", None):
        base.update(_parse_kv(args.model, ("k", "tau", "theta"), "--model"))
    return FoptdModel(**base)


def _resolve_sim(args, cfg: dict) -> SimConfig:
    dt = _pick(getattr(args, "dt", None), cfg.get("dt"), 1e-3)
    t_final = _pick(getattr(args, "t_final", None), cfg.get("t_final"), 10.0)
    return SimConfig(dt=float(dt), t_final=float(t_final))


def _resolve_type(args, cfg: dict, method: str) -> ControllerType:
    raw = _pick(getattr(args, "type", None), cfg.get("type"))
    if raw is None:
        return ControllerType.PI if method in presets.PI_ONLY_METHODS else ControllerType.PID
    try:
        return ControllerType(raw)
    except ValueError:
        raise InputError(f"unknown controller type {raw!r}; expected P, PI or PID") from None


def _write(path: str, text: str) -> None:
    reporting.write_text(Path(path), text)


# --- commands ---------------------------------------------------------------

def cmd_tune(args) -> dict:
    cfg = _load_config(args.config)
    model = _resolve_model(args, cfg)
    method = _pick(args.method, cfg.get("method"))
    if method is None:
        raise InputError("tune needs --method (or a config with one)")
    ctype = _resolve_type(args, cfg, method)
    tau_c = _pick(args.tau_c, cfg.get("tau_c"))
    spec = presets.RunSpec(model, method, ctype, tau_c=tau_c)
    gains, extras = presets.tune_for_spec(spec)
    payload = {
        "schema": SCHEMA,
        "command": "tune",
        "model": reporting.model_dict(model),
        "controller_type": ctype.value,
        "result": reporting.tuning_result_dict(method, gains),
    }
    payload.update(extras)
    if "row" in extras:
        payload["result"]["tau_i"] = extras["row"]["tau_i"]
        payload["result"]["tau_d"] = extras["row"]["tau_d"]
    if args.json:
        _write(args.json, reporting.dump_json(payload))
    return payload


def cmd_analyze(args) -> dict:
    cfg = _load_config(args.config)
    model = _resolve_model(args, cfg)
    payload = {
        "schema": SCHEMA,
        "command": "analyze",
        "analysis": args.what,
        "model": reporting.model_dict(model),
    }
    if args.what == "stability":
        search = _parse_pair(_pick(args.search, cfg.get("search"), "-10,20"), "--search")
        tol = float(_pick(args.tol, cfg.get("tol"), 1e-6))
        char = presets.pade_char(model)
        interval = gain_stability_interval(char, search, tol)
        payload["interval"] = reporting.interval_dict(interval)
        try:
            payload["ultimate"] = reporting.ultimate_dict(ultimate_params_from_interval(char, interval))
        except NoImaginaryPairError as exc:
            payload["ultimate"] = None
            payload["ultimate_error"] = str(exc)
        if args.dump_array:
            _write(args.dump_array, reporting.routh_csv(routh_array(char.at(args.array_gain))))
            payload["routh_array_gain"] = args.array_gain
    elif args.what == "margins":
        g = delayed_plant(model)
        margins = phase_crossover(g, args.omega_max)
        payload["margins"] = reporting.margins_dict(margins)
        payload["ultimate"] = reporting.ultimate_dict(ultimate_from_margins(margins))
        if args.nyquist_csv or args.plot:
            lo, hi = _parse_pair(args.nyquist_range, "--nyquist-range")
            points = nyquist_series(g, lo, hi, args.nyquist_points)
            if args.nyquist_csv:
                _write(args.nyquist_csv, reporting.nyquist_csv(points))
            if args.plot:
                from . import plotting

                plotting.save_nyquist_figure(points, args.plot)
    else:  # poles
        if args.gain is None:
            raise InputError("analyze poles needs --gain")
        char = presets.pade_char(model)
        poles = poly_roots(char.at(args.gain))
        payload["gain"] = args.gain
        payload["poles"] = [{"re": p.real, "im": p.imag} for p in poles]
        payload["all_left_half_plane"] = all(p.real < 0 for p in poles)
    if args.json:
        _write(args.json, reporting.dump_json(payload))
    return payload


def cmd_simulate(args) -> dict:
    cfg = _load_config(args.config)
    model = _resolve_model(args, cfg)
    sim = _resolve_sim(args, cfg)
    if args.gains:
        vals = _parse_kv(args.gains, ("kp", "ki", "kd"), "--gains")
        gains = PidGains(vals.get("kp", 0.0), vals.get("ki", 0.0), vals.get("kd", 0.0))
        method = "explicit"
        loop = args.loop or "delayed"
        extras: dict = {}
    else:
        method = _pick(args.method, cfg.get("method"))
        if method is None:
            raise InputError("simulate needs --method or --gains")
        ctype = _resolve_type(args, cfg, method)
        spec = presets.RunSpec(model, method, ctype, sim, tau_c=_pick(args.tau_c, cfg.get("tau_c")))
        gains, extras = presets.tune_for_spec(spec)
        loop = args.loop or ("pade" if method == "zn-pade" else "delayed")

    if loop == "pade":
        ts = step_rational(presets.pade_pid_loop(model, gains), sim)
    else:
        adjusted = fit_dt(sim.dt, model.theta)
        if adjusted != sim.dt:
            sim = SimConfig(dt=adjusted, t_final=sim.t_final)
        ts = step_delayed_loop(model, gains, sim)

    payload = {
        "schema": SCHEMA,
        "command": "simulate",
        "model": reporting.model_dict(model),
        "method": method,
        "loop": loop,
        "gains": reporting.gains_dict(gains),
        "dt": sim.dt,
        "t_final": sim.t_final,
        "samples": len(ts.t),
    }
    payload.update(extras)
    try:
        payload["metrics"] = reporting.metrics_dict(step_metrics(ts, 1.0))
    except SettlingNotReachedError as exc:
        payload["metrics"] = None
        payload["metrics_error"] = str(exc)
    if args.csv:
        _write(args.csv, reporting.series_csv(ts))
    if args.plot:
        from . import plotting

        plotting.save_step_figure([(method, ts)], args.plot)
    if args.json:
        full = dict(payload)
        full["series"] = reporting.series_dict(ts)
        _write(args.json, reporting.dump_json(full))
    return payload


def cmd_compare(args) -> dict:
    cfg = _load_config(args.config)
    model = _resolve_model(args, cfg)
    sim = _resolve_sim(args, cfg)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if len(methods) < 2:
        raise InputError("compare needs at least two methods")
    tau_c = _pick(args.tau_c, cfg.get("tau_c"))
    specs = []
    for method in methods:
        ctype = ControllerType.PI if method in presets.PI_ONLY_METHODS else ControllerType.PID
        specs.append(presets.RunSpec(model, method, ctype, sim, tau_c=tau_c))
    rows, series = presets.compare_specs(specs, zn_pade_true_delay=args.zn_pade_true_delay)
    payload = {
        "schema": SCHEMA,
        "command": "compare",
        "model": reporting.model_dict(model),
        "rows": rows,
    }
    if args.csv:
        _write(args.csv, reporting.table_csv(reporting.COMPARE_COLUMNS, rows))
    if args.series_dir:
        outdir = Path(args.series_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for label, ts in series:
            name = label.replace(" ", "-").replace("(", "").replace(")", "")
            reporting.write_text(outdir / f"{name}.csv", reporting.series_csv(ts))
    if args.plot:
        from . import plotting

        plotting.save_step_figure(series, args.plot, title="Tuned-controller comparison")
    if args.json:
        _write(args.json, reporting.dump_json(payload))
    return payload


def cmd_reproduce(args) -> dict:
    names = list(presets.PRESETS) if args.preset == "all" else [args.preset]
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = []
    for name in names:
        bundle = presets.PRESETS[name]()
        files = []

        def emit(fname: str, text: str) -> None:
            reporting.write_text(outdir / fname, text)
            files.append(fname)

        emit(f"{name}.json", reporting.dump_json({"schema": SCHEMA, "preset": name, **bundle["json"]}))
        for fname, (columns, rows) in bundle.get("tables", {}).items():
            emit(fname, reporting.table_csv(columns, rows))
        for fname, ts in bundle.get("series", {}).items():
            emit(fname, reporting.series_csv(ts))
        for fname, points in bundle.get("nyquist", {}).items():
            emit(fname, reporting.nyquist_csv(points))
        if not args.no_figures:
            for fname, (kind, data, title) in bundle.get("figures", {}).items():
                from . import plotting

                if kind == "step":
                    plotting.save_step_figure(data, outdir / fname, title=title)
                else:
                    plotting.save_nyquist_figure(data, outdir / fname, title=title)
                files.append(fname)
        manifest.append({"preset": name, "files": sorted(files)})
    return {"schema": SCHEMA, "command": "reproduce", "out_dir": str(outdir), "presets": manifest}


# --- parser -----------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", help="process as k=<f>,tau=<f>,theta=<f>")
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--json", help="write the JSON payload to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="foptd-tune", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("tune", help="compute controller settings")
    _add_common(p)
    p.add_argument("--method", choices=presets.METHODS)
    p.add_argument("--type", choices=[c.value for c in ControllerType])
    p.add_argument("--tau-c", type=float, dest="tau_c", help="desired closed-loop time constant (imc)")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("analyze", help="stability interval, margins, poles")
    p.add_argument("what", choices=("stability", "margins", "poles"))
    _add_common(p)
    p.add_argument("--search", help="gain search range LO,HI (stability)")
    p.add_argument("--tol", type=float, help="interval endpoint tolerance")
    p.add_argument("--dump-array", dest="dump_array", help="write the Routh array CSV here")
    p.add_argument("--array-gain", dest="array_gain", type=float, default=0.0,
                   help="gain at which the dumped Routh array is evaluated")
    p.add_argument("--gain", type=float, help="closed-loop gain (poles)")
    p.add_argument("--omega-max", dest="omega_max", type=float, help="crossover search limit (margins)")
    p.add_argument("--nyquist-csv", dest="nyquist_csv", help="write the locus CSV here (margins)")
    p.add_argument("--nyquist-points", dest="nyquist_points", type=int, default=1000)
    p.add_argument("--nyquist-range", dest="nyquist_range", default="1e-2,1e2")
    p.add_argument("--plot", help="write a Nyquist figure here (margins)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="closed-loop unit-step response")
    _add_common(p)
    p.add_argument("--method", choices=presets.METHODS)
    p.add_argument("--type", choices=[c.value for c in ControllerType])
    p.add_argument("--tau-c", type=float, dest="tau_c")
    p.add_argument("--gains", help="explicit kp=<f>,ki=<f>,kd=<f>")
    p.add_argument("--loop", choices=("pade", "delayed"),
                   help="simulate the rational-approximation loop or the exact delayed loop")
    p.add_argument("--dt", type=float)
    p.add_argument("--t-final", dest="t_final", type=float)
    p.add_argument("--csv", help="write the t,y series here")
    p.add_argument("--plot", help="write a response figure here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="tune and simulate several methods")
    _add_common(p)
    p.add_argument("--methods", required=True, help="comma-separated method list")
    p.add_argument("--tau-c", type=float, dest="tau_c")
    p.add_argument("--dt", type=float)
    p.add_argument("--t-final", dest="t_final", type=float)
    p.add_argument("--zn-pade-true-delay", dest="zn_pade_true_delay", action="store_true",
                   help="also run the zn-pade gains against the exact delayed plant")
    p.add_argument("--csv", help="write the metrics table here")
    p.add_argument("--series-dir", dest="series_dir", help="write one t,y CSV per run here")
    p.add_argument("--plot", help="write an overlay figure here")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("reproduce", help="run a canned benchmark scenario")
    p.add_argument("preset", choices=sorted(presets.PRESETS) + ["all"])
    p.add_argument("--out-dir", dest="out_dir", default="reproduction")
    p.add_argument("--no-figures", dest="no_figures", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return parser


def _emit_error(exc: Exception) -> None:
    body = {"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": str(exc)}}
    sys.stderr.write(reporting.dump_json(body))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload = args.func(args)
    except InputError as exc:
        _emit_error(exc)
        return 2
    except NumericalError as exc:
        _emit_error(exc)
        return 3
    sys.stdout.write(reporting.dump_json(payload))
    return 0


if __name__ == "__main__":
    sys.exit(main())
