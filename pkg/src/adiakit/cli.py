"""Scenario files in, analysis artifacts out.

One subcommand per analysis verb.  A scenario is a small JSON document
(``"schema": 1``) naming the generator, the initial state, the schedule,
and where results should land; every pipeline reads one and writes either
a CSV table or a versioned JSON report.  Reports carry the sha256 of the
scenario file, the tool version, and the tolerances in force, with sorted
keys throughout, so rerunning an unchanged scenario reproduces the output
byte for byte.

Exit codes: 0 on success, 2 for schema and input problems (the stderr
JSON names the offending field), 3 when a numerical routine refuses
(degeneracies, crossings, conditioning); the stderr JSON then carries the
module error and its details.
"""

import argparse
import dataclasses
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .closed import (
    adiabatic_condition_ratio,
    adiabatic_state,
    fidelity,
    instantaneous_propagator,
    integrate_schrodinger,
    min_time_estimate,
    track_spectrum,
    wu_expansion,
)
from .consistency import consistency_report
from .errors import (
    AdiakitError,
    ConfigError,
    DomainError,
    InputError,
    ShapeError,
)
from .numkit import is_hermitian, matrix_from_json, matrix_to_json
from .open_system import (
    classify_regime,
    expand_jordan_coefficients,
    integrate_master,
    jordan_track,
    open_condition_metric,
    open_time_condition,
    unitary_embedding_jordan,
)
from .schedules import (
    MODEL_NAMES,
    GeneratorSpec,
    envelope_from_json,
    make_model,
)

__all__ = [
    "Scenario",
    "parse_scenario",
    "serialize_scenario",
    "run_scenario",
    "sweep_total_time",
    "emit_report",
    "main",
]

SCHEMA_VERSION = 1

PIPELINES = ("spectrum", "evolve", "check", "sweep", "wu", "jordan",
             "consistency")

_SCHEMA_ERRORS = (InputError, ConfigError, ShapeError, DomainError)

_TOP_LEVEL_FIELDS = {
    "schema", "kind", "pipeline", "model", "dimension",
    "hamiltonian_terms", "lindblad_terms", "initial_state", "total_time",
    "T_grid", "grid_points", "tolerances", "output",
}


@dataclass(frozen=True)
class Scenario:
    """One parsed scenario: generator, state, schedule, output routing."""

    spec: GeneratorSpec
    pipeline: str
    model: dict
    initial_state: np.ndarray
    total_time: float
    T_grid: tuple
    grid_points: int
    rtol: float
    atol: float
    out_path: str
    out_format: str

    @property
    def kind(self) -> str:
        return self.spec.kind

    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.grid_points)


def _field(data, name, expected, where):
    value = data[name]
    if not isinstance(value, expected):
        kinds = expected[0].__name__ if isinstance(expected, tuple) \
            else expected.__name__
        raise InputError(f"{where}.{name} must be a {kinds}", field=name)
    return value


def _coerce_model_params(params):
    out = {}
    for key, value in params.items():
        if key.endswith("_envelope"):
            out[key] = envelope_from_json(value, f"params.{key}")
        elif isinstance(value, list):
            out[key] = matrix_from_json(value, f"params.{key}")
        else:
            out[key] = value
    return out


def _parse_terms(data, name, where):
    terms = []
    for k, item in enumerate(data):
        label = f"{where}.{name}[{k}]"
        if not (isinstance(item, dict)
                and set(item) == {"matrix", "envelope"}):
            raise InputError(
                f"{label} must be an object with 'matrix' and 'envelope'",
                field=name)
        terms.append((matrix_from_json(item["matrix"], f"{label}.matrix"),
                      envelope_from_json(item["envelope"],
                                         f"{label}.envelope")))
    return tuple(terms)


def _parse_initial_state(data, spec, where):
    if spec.kind == "closed":
        vec = np.asarray(matrix_from_json([data], f"{where}.initial_state")
                         ).reshape(-1)
        if vec.size != spec.dimension:
            raise InputError(
                f"{where}.initial_state needs {spec.dimension} components, "
                f"got {vec.size}", field="initial_state")
        if abs(np.linalg.norm(vec) - 1.0) > 1e-6:
            raise InputError(f"{where}.initial_state is not normalized",
                             field="initial_state")
        return vec
    rho = matrix_from_json(data, f"{where}.initial_state")
    D = spec.dimension
    if rho.shape != (D, D):
        raise InputError(f"{where}.initial_state must be {D}x{D}",
                         field="initial_state")
    if not is_hermitian(rho, 1e-8):
        raise InputError(f"{where}.initial_state is not Hermitian",
                         field="initial_state")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise InputError(f"{where}.initial_state trace is not 1",
                         field="initial_state")
    if np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))) < -1e-8:
        raise InputError(f"{where}.initial_state is not positive",
                         field="initial_state")
    return rho


def parse_scenario(data, where: str = "scenario") -> Scenario:
    """Validate a scenario document field by field."""
    if not isinstance(data, dict):
        raise InputError(f"{where} must be a JSON object")
    unknown = set(data) - _TOP_LEVEL_FIELDS
    if unknown:
        raise InputError(f"{where} has unknown fields {sorted(unknown)}",
                         fields=sorted(unknown))
    if data.get("schema") != SCHEMA_VERSION:
        raise InputError(
            f"{where}.schema must be {SCHEMA_VERSION}, "
            f"got {data.get('schema')!r}", field="schema")

    model = None
    if "model" in data:
        block = _field(data, "model", dict, where)
        if set(block) - {"name", "params"} or "name" not in block:
            raise InputError(f"{where}.model needs 'name' and optional "
                             "'params'", field="model")
        if block["name"] not in MODEL_NAMES:
            raise InputError(
                f"{where}.model.name must be one of {sorted(MODEL_NAMES)}",
                field="model")
        params = block.get("params", {})
        if not isinstance(params, dict):
            raise InputError(f"{where}.model.params must be an object",
                             field="model")
        spec = make_model(block["name"], **_coerce_model_params(params))
        model = {"name": block["name"], "params": params}
    else:
        for required in ("kind", "dimension", "hamiltonian_terms"):
            if required not in data:
                raise InputError(
                    f"{where}.{required} is required without a model block",
                    field=required)
        spec = GeneratorSpec(
            _field(data, "dimension", int, where),
            _field(data, "kind", str, where),
            _parse_terms(_field(data, "hamiltonian_terms", list, where),
                         "hamiltonian_terms", where),
            _parse_terms(data.get("lindblad_terms", []),
                         "lindblad_terms", where))
    if "kind" in data and data["kind"] != spec.kind:
        raise InputError(
            f"{where}.kind is {data['kind']!r} but the generator is "
            f"{spec.kind!r}", field="kind")

    pipeline = data.get("pipeline")
    if pipeline is not None and pipeline not in PIPELINES:
        raise InputError(f"{where}.pipeline must be one of {PIPELINES}",
                         field="pipeline")

    initial = None
    if "initial_state" in data:
        initial = _parse_initial_state(data["initial_state"], spec, where)

    total_time = None
    if "total_time" in data:
        total_time = float(_field(data, "total_time", (int, float), where))
        if not total_time > 0:
            raise InputError(f"{where}.total_time must be positive",
                             field="total_time")
    T_grid = None
    if "T_grid" in data:
        values = _field(data, "T_grid", list, where)
        if not values or any(not isinstance(v, (int, float)) or v <= 0
                             for v in values):
            raise InputError(f"{where}.T_grid must hold positive numbers",
                             field="T_grid")
        if list(values) != sorted(values):
            raise InputError(f"{where}.T_grid must be ascending",
                             field="T_grid")
        T_grid = tuple(float(v) for v in values)

    grid_points = data.get("grid_points", 201)
    if not isinstance(grid_points, int) or grid_points < 2:
        raise InputError(f"{where}.grid_points must be an integer >= 2",
                         field="grid_points")

    tol = data.get("tolerances", {})
    if not isinstance(tol, dict) or set(tol) - {"rtol", "atol"}:
        raise InputError(f"{where}.tolerances allows only rtol and atol",
                         field="tolerances")
    rtol = float(tol.get("rtol", 1e-8))
    atol = float(tol.get("atol", 1e-10))
    if rtol <= 0 or atol <= 0:
        raise InputError(f"{where}.tolerances must be positive",
                         field="tolerances")

    out = data.get("output", {})
    if not isinstance(out, dict) or set(out) - {"path", "format"}:
        raise InputError(f"{where}.output allows only path and format",
                         field="output")
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise InputError(f"{where}.output.format must be csv or json",
                         field="output")

    return Scenario(spec, pipeline, model, initial, total_time, T_grid,
                    grid_points, rtol, atol, out.get("path"), fmt)


def serialize_scenario(sc: Scenario) -> dict:
    """Normalized document form; parse -> serialize -> parse is stable."""
    doc = {"schema": SCHEMA_VERSION, "kind": sc.kind}
    if sc.pipeline is not None:
        doc["pipeline"] = sc.pipeline
    if sc.model is not None:
        doc["model"] = {"name": sc.model["name"],
                        "params": sc.model["params"]}
    else:
        doc["dimension"] = sc.spec.dimension
        doc["hamiltonian_terms"] = [
            {"matrix": matrix_to_json(M), "envelope": env.to_json()}
            for M, env in sc.spec.hamiltonian_terms]
        if sc.spec.lindblad_terms:
            doc["lindblad_terms"] = [
                {"matrix": matrix_to_json(M), "envelope": env.to_json()}
                for M, env in sc.spec.lindblad_terms]
    if sc.initial_state is not None:
        if sc.kind == "closed":
            doc["initial_state"] = matrix_to_json(
                sc.initial_state[None, :])[0]
        else:
            doc["initial_state"] = matrix_to_json(sc.initial_state)
    if sc.total_time is not None:
        doc["total_time"] = sc.total_time
    if sc.T_grid is not None:
        doc["T_grid"] = list(sc.T_grid)
    doc["grid_points"] = sc.grid_points
    doc["tolerances"] = {"rtol": sc.rtol, "atol": sc.atol}
    output = {"format": sc.out_format}
    if sc.out_path is not None:
        output["path"] = sc.out_path
    doc["output"] = output
    return doc


def emit_report(results, scenario_bytes=None, tolerances=None) -> str:
    """Wrap pipeline results in the versioned, reproducible report form."""
    doc = {
        "report_version": 1,
        "tool_version": __version__,
        "scenario_sha256": (hashlib.sha256(scenario_bytes).hexdigest()
                            if scenario_bytes is not None else None),
        "tolerances": tolerances,
        "results": results,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write_text(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _write_csv(path, columns, rows):
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(x) for x in row))
    _write_text(path, "\n".join(lines) + "\n")


def _cell(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _default_state(sc, track=None):
    if sc.initial_state is not None:
        return sc.initial_state
    if sc.kind == "closed":
        return track.vectors[0, :, 0]
    raise InputError("open-system pipelines need an initial_state",
                     field="initial_state")


def _require_time(sc, T_flag):
    T = T_flag if T_flag is not None else sc.total_time
    if T is None:
        raise InputError("no total time: set total_time in the scenario "
                         "or pass --T", field="total_time")
    return float(T)


def _open_track(sc, grid):
    if not sc.spec.lindblad_terms:
        return jordan_track(sc.spec, grid,
                            analytic=unitary_embedding_jordan(sc.spec))
    return jordan_track(sc.spec, grid)


# ----------------------------------------------------------------- pipelines

def _pipe_spectrum(sc, args):
    grid = sc.grid()
    if sc.kind == "closed":
        track = track_spectrum(sc.spec, grid)
        columns = ["s"] + [f"E{n}" for n in range(track.dim)]
        rows = [[grid[i]] + list(track.energies[i])
                for i in range(grid.size)]
    else:
        track = _open_track(sc, grid)
        columns = ["s"]
        for b in range(track.nblocks):
            columns += [f"re{b}", f"im{b}"]
        rows = []
        for i in range(grid.size):
            row = [grid[i]]
            for b in range(track.nblocks):
                row += [track.lambdas[i, b].real, track.lambdas[i, b].imag]
            rows.append(row)
    return columns, rows, None


def _pipe_evolve(sc, args):
    grid = sc.grid()
    T = _require_time(sc, args.T)
    tol = (sc.rtol, sc.atol)
    if sc.kind == "closed":
        track = track_spectrum(sc.spec, grid)
        traj = integrate_schrodinger(sc.spec, T, _default_state(sc, track),
                                     grid, tol)
        columns = ["s", "t"] + [f"E{n}" for n in range(track.dim)]
        for n in range(track.dim):
            columns += [f"re{n}", f"im{n}"]
        rows = []
        for i in range(grid.size):
            row = [grid[i], traj.times[i]] + list(track.energies[i])
            for n in range(track.dim):
                row += [traj.states[i, n].real, traj.states[i, n].imag]
            rows.append(row)
    else:
        traj = integrate_master(sc.spec, T, _default_state(sc), grid, tol)
        D = sc.spec.dimension
        columns = ["s", "t"]
        for a in range(D):
            for b in range(D):
                columns += [f"re{a}{b}", f"im{a}{b}"]
        rows = []
        for i in range(grid.size):
            row = [grid[i], traj.times[i]]
            for z in traj.states[i]:
                row += [z.real, z.imag]
            rows.append(row)
    return columns, rows, None


def _pipe_check(sc, args):
    grid = sc.grid()
    if sc.kind == "closed":
        T = _require_time(sc, args.T)
        track = track_spectrum(sc.spec, grid)
        cond = adiabatic_condition_ratio(track, sc.spec, T)
        estimate = min_time_estimate(track, sc.spec, 0)
        results = {
            "total_time": T,
            "max_ratio": cond.max_ratio,
            "max_pair": list(cond.max_pair),
            "ratios": {f"{n},{k}": v for (n, k), v in cond.ratios.items()},
            "satisfied": bool(cond.max_ratio < 1.0),
            "min_time_estimate": {"T_est": estimate.T_est, "F": estimate.F,
                                  "G": estimate.G},
        }
        return None, None, results
    track = _open_track(sc, grid)
    cond = open_condition_metric(track, sc.spec)
    results = {
        "block_sizes": list(track.sizes),
        "max_metric": cond.max_metric,
        "max_key": list(cond.max_key),
        "metrics": {",".join(map(str, key)): val
                    for key, val in cond.metrics.items()},
    }
    T_values = sc.T_grid
    if args.T is not None:
        T_values = (float(args.T),)
    if sc.initial_state is not None and T_values:
        def coeffs_at(T):
            traj = integrate_master(sc.spec, T, sc.initial_state, grid,
                                    (sc.rtol, sc.atol))
            return expand_jordan_coefficients(traj, track, T)

        tcond = open_time_condition(track, sc.spec, coeffs_at, T_values)
        results["time_condition"] = {
            "T_grid": list(tcond.T_grid),
            "satisfied_all": list(tcond.satisfied_all),
            "threshold_T": tcond.threshold_T,
            "crossover_T": tcond.crossover_T,
            "bounds": {f"{a},{i}": list(v)
                       for (a, i), v in tcond.bounds.items()},
        }
        labels = classify_regime(track, coeffs_at(T_values[-1]), sc.spec)
        results["regimes"] = {f"{a},{b}": lab
                              for (a, b), lab in labels.items()}
    return None, None, results


def _pipe_wu(sc, args):
    if sc.kind != "closed":
        raise ConfigError("the expansion pipeline needs a closed system")
    order = args.order if args.order is not None else 2
    if order < 0:
        raise InputError(f"order must be nonnegative, got {order}",
                         field="order")
    T = _require_time(sc, args.T)
    grid = sc.grid()
    expansion = wu_expansion(sc.spec, T, order, grid)
    exact = instantaneous_propagator(sc.spec, T, grid)
    errors = []
    for m in range(order + 1):
        diff = expansion.partial_sum(m)[-1] - exact[-1]
        errors.append(float(np.linalg.norm(diff)))
    results = {
        "total_time": T,
        "order": order,
        "grid_points": sc.grid_points,
        "final_errors": errors,
    }
    return None, None, results


def _pipe_jordan(sc, args):
    if sc.kind != "open":
        raise ConfigError("the block-structure pipeline needs an open "
                          "system")
    track = _open_track(sc, sc.grid())
    payload = track.export()
    results = {
        "block_sizes": list(track.sizes),
        "signature": payload["signature"],
        "clusters": list(track.clusters),
        "residual_max": track.residual_max,
        "points": payload["points"],
    }
    return None, None, results


def _pipe_consistency(sc, args):
    if sc.kind != "closed":
        raise ConfigError("the consistency pipeline needs a closed system")
    T = _require_time(sc, args.T)
    report = consistency_report(sc.spec, T, sc.grid(),
                                tol=(sc.rtol, sc.atol))
    if args.format_resolved == "csv":
        columns = ["s", "w", "r", "fid_proper", "fid_illegal"]
        rows = [[report.grid[i], report.w[i], report.r[i],
                 report.fid_proper[i], report.fid_illegal[i]]
                for i in range(report.grid.size)]
        return columns, rows, None
    return None, None, report.to_json()


_PIPELINE_FUNCS = {
    "spectrum": _pipe_spectrum,
    "evolve": _pipe_evolve,
    "check": _pipe_check,
    "wu": _pipe_wu,
    "jordan": _pipe_jordan,
    "consistency": _pipe_consistency,
}


# --------------------------------------------------------------------- sweep

def _sweep_point(payload):
    """One sweep row; module level so worker processes can import it."""
    doc, T, grid_points, rtol, atol = payload
    sc = parse_scenario(doc)
    grid = np.linspace(0.0, 1.0, grid_points)
    tol = (rtol, atol)
    if sc.kind == "closed":
        track = track_spectrum(sc.spec, grid)
        traj = integrate_schrodinger(sc.spec, T, track.vectors[0, :, 0],
                                     grid, tol)
        reference = adiabatic_state(track, T, 1.0, 0)
        infidelity = 1.0 - fidelity(
            reference, traj.states[-1] / np.linalg.norm(traj.states[-1]))
        ratio = adiabatic_condition_ratio(track, sc.spec, T).max_ratio
        return T, infidelity, ratio, bool(ratio < 1.0)
    track = _open_track(sc, grid)
    traj = integrate_master(sc.spec, T, _default_state(sc), grid, tol)
    coeffs = expand_jordan_coefficients(traj, track, T)
    drift = 0.0
    scale = 1e-300
    for curve in coeffs.p.values():
        finite = curve[np.isfinite(curve)]
        if finite.size:
            drift = max(drift, float(np.max(np.abs(finite - finite[0]))))
            scale = max(scale, float(np.max(np.abs(finite))))
    tcond = open_time_condition(track, sc.spec, coeffs, (T,))
    bound = max(v[0] for v in tcond.bounds.values())
    ratio = bound / T if np.isfinite(bound) else np.inf
    return T, drift / scale, ratio, bool(tcond.satisfied_all[0])


def sweep_total_time(path, T_min, T_max, points, spacing: str = "log",
                     jobs: int = None, out: str = None):
    """Run the same scenario at many total times and tabulate the outcome.

    Returns rows (T, infidelity, condition ratio, bound satisfied) sorted
    by T; for open systems the infidelity column reports the worst
    relative drift of the stripped block coefficients, the quantity the
    adiabatic statement actually bounds.
    """
    if spacing not in ("linear", "log"):
        raise InputError(f"spacing must be linear or log, got {spacing!r}",
                         field="spacing")
    if not (T_min > 0 and T_max > T_min):
        raise InputError("need 0 < T_min < T_max", field="T_min")
    if points < 2:
        raise InputError(f"points must be >= 2, got {points}",
                         field="points")
    with open(path) as fh:
        doc = json.load(fh)
    sc = parse_scenario(doc)
    if sc.kind == "open":
        _default_state(sc)
    if spacing == "log":
        T_values = np.geomspace(T_min, T_max, points)
    else:
        T_values = np.linspace(T_min, T_max, points)
    payloads = [(doc, float(T), sc.grid_points, sc.rtol, sc.atol)
                for T in T_values]
    jobs = jobs if jobs else os.cpu_count() or 1
    if jobs == 1 or points == 1:
        rows = [_sweep_point(p) for p in payloads]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, points)) as pool:
            rows = list(pool.map(_sweep_point, payloads))
    if out is not None:
        _write_csv(out, ["T", "infidelity", "condition_ratio",
                         "bound_satisfied"], rows)
    return rows


# ----------------------------------------------------------------- dispatch

def _resolve_out(sc, pipeline, out_flag, fmt):
    if out_flag:
        return out_flag
    if sc.out_path:
        return sc.out_path
    base = os.environ.get("ADIAKIT_OUTPUT_DIR", ".")
    return os.path.join(base, f"{pipeline}.{fmt}")


def _error_json(exc):
    details = dict(getattr(exc, "details", {}) or {})
    return json.dumps({"error": type(exc).__name__, "message": str(exc),
                       "details": details}, sort_keys=True, default=str)


def _execute(path, pipeline, args, grid_points=None):
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"scenario is not valid JSON: {exc}") from exc
    sc = parse_scenario(doc)
    if grid_points is not None:
        if grid_points < 2:
            raise InputError(f"--grid must be >= 2, got {grid_points}",
                             field="grid_points")
        sc = dataclasses.replace(sc, grid_points=grid_points)
    verb = pipeline or sc.pipeline
    if verb is None:
        raise InputError("scenario names no pipeline and none was given "
                         "on the command line", field="pipeline")
    if verb == "sweep":
        raise InputError("use the sweep subcommand for total-time sweeps",
                         field="pipeline")
    fmt = args.format or sc.out_format
    args.format_resolved = fmt
    columns, rows, results = _PIPELINE_FUNCS[verb](sc, args)
    out = _resolve_out(sc, verb, args.out, fmt)
    if results is not None:
        text = emit_report(results, raw, {"rtol": sc.rtol, "atol": sc.atol})
        _write_text(out, text)
    elif fmt == "json":
        payload = {"columns": columns,
                   "rows": [[float(x) for x in row] for row in rows]}
        _write_text(out, emit_report(payload, raw,
                                     {"rtol": sc.rtol, "atol": sc.atol}))
    else:
        _write_csv(out, columns, rows)
    return out


def run_scenario(path, pipeline: str = None, T: float = None,
                 grid: int = None, order: int = None, out: str = None,
                 fmt: str = None) -> int:
    """Execute one scenario end to end; returns the process exit code."""
    args = argparse.Namespace(T=T, order=order, out=out, format=fmt,
                              format_resolved=None)
    try:
        _execute(path, pipeline, args, grid)
        return 0
    except _SCHEMA_ERRORS as exc:
        print(_error_json(exc), file=sys.stderr)
        return 2
    except AdiakitError as exc:
        print(_error_json(exc), file=sys.stderr)
        return 3
    except OSError as exc:
        print(_error_json(exc), file=sys.stderr)
        return 2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="adiakit",
        description="Slow-drive analyses for closed and open quantum "
                    "systems")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_T=False):
        p.add_argument("scenario", help="path to a scenario JSON file")
        p.add_argument("--T", type=float, default=None,
                       help="total evolution time override")
        p.add_argument("--grid", type=int, default=None,
                       help="number of schedule grid points")
        p.add_argument("--out", default=None, help="output file path")
        p.add_argument("--format", choices=("csv", "json"), default=None)

    for verb in ("spectrum", "evolve", "check", "jordan", "consistency"):
        common(sub.add_parser(verb))
    wu = sub.add_parser("wu")
    common(wu)
    wu.add_argument("--order", type=int, default=None,
                    help="highest transition order to sum")

    sweep = sub.add_parser("sweep")
    sweep.add_argument("scenario")
    sweep.add_argument("--T-min", type=float, required=True)
    sweep.add_argument("--T-max", type=float, required=True)
    sweep.add_argument("--points", type=int, required=True)
    sweep.add_argument("--spacing", choices=("linear", "log"),
                       default="log")
    sweep.add_argument("--jobs", type=int, default=None)
    sweep.add_argument("--out", default=None)

    ns = parser.parse_args(argv)
    try:
        if ns.command == "sweep":
            out = ns.out or _sweep_default_out(ns.scenario)
            sweep_total_time(ns.scenario, ns.T_min, ns.T_max, ns.points,
                             ns.spacing, ns.jobs, out)
            return 0
        args = argparse.Namespace(T=ns.T, order=getattr(ns, "order", None),
                                  out=ns.out, format=ns.format,
                                  format_resolved=None)
        _execute(ns.scenario, ns.command, args, ns.grid)
        return 0
    except _SCHEMA_ERRORS as exc:
        print(_error_json(exc), file=sys.stderr)
        return 2
    except AdiakitError as exc:
        print(_error_json(exc), file=sys.stderr)
        return 3
    except OSError as exc:
        print(_error_json(exc), file=sys.stderr)
        return 2


def _sweep_default_out(scenario_path):
    base = os.environ.get("ADIAKIT_OUTPUT_DIR", ".")
    return os.path.join(base, "sweep.csv")


if __name__ == "__main__":
    sys.exit(main())
