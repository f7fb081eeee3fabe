"""Experiment runner with deterministic CSV/JSON artifacts.

Each experiment reproduces one standard data product of the adiabatic
Mach-Zehnder protocol at the defaults N = 10, c = -0.1, sweep rate 0.08:

  spectra         lowest levels vs transverse field (CSV h_x,E0,...)
  split           fidelities along the splitting sweep (CSV t,h_x,h_z,f_g,f_phi_max)
  phase-scan      GHZ-family fidelity and phase vs h_z (CSV h_z,f_phi_max,phi)
  fringes         output-port populations vs phase (CSV phi,f0,f1)
  squeezing       squeezing parameter along the sweep (CSV t,h_x,h_z,xi2)
  geometry        dipolar factor chi vs trap aspect ratio (CSV kappa,chi)
  interferometer  one full run, scalar summary (JSON)

Numbers are written with 17 significant digits and fixed row order, so
re-running an identical configuration produces byte-identical artifacts.
The run manifest (config echo, artifact list, wall-clock duration,
diagnostics) goes to stdout, not to a file, because it contains timing.

Exit codes: 0 success, 2 usage error, 3 numeric failure; on error a JSON
document {"error": ..., "code": ...} is written to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .dynamics import make_linear_sweep, propagate, run_interferometer
from .fock import QuantumState, build_basis, build_collective_ops, fock_state
from .geometry import chi
from .hamiltonian import ModelParams, build_hamiltonian
from .observables import (
    UndefinedSqueezingError,
    ghz_fidelity,
    max_phase_fidelity,
    squeezing_parameter,
)
from .spectra import eigh, level_scan

EXPERIMENTS = (
    "spectra", "split", "phase-scan", "fringes", "squeezing", "geometry",
    "interferometer",
)

_DEFAULT_GRIDS = {
    "spectra": (0.0, 10.0, 201),
    "phase-scan": (0.0, 0.004, 21),
    "fringes": (0.0, 2.0 * math.pi, 25),
    "fringes-protocol": (0.0, 0.004, 21),
    "geometry": (0.1, 10.0, 201),
}

_GRID_EXPERIMENTS = ("spectra", "phase-scan", "fringes", "geometry")


class UsageError(ValueError):
    """Bad command line, config document, or experiment id."""


@dataclass
class ExperimentConfig:
    experiment: str
    n_atoms: int = 10
    c: float = -0.1
    h_z: float = 0.0
    h_x_init: float = 10.0
    rate: float = 0.08
    step: float = 1e-3
    grid: tuple[float, float, int] | None = None
    levels: int = 10
    seeding: str = "ghz"
    output: str | None = None
    format: str | None = None
    workers: int = 1


@dataclass
class RunManifest:
    experiment: str
    version: str
    config: dict
    outputs: list[str]
    duration_s: float
    diagnostics: dict


def parse_grid(spec) -> tuple[float, float, int]:
    """Parse a grid spec 'lo:hi:n' (or [lo, hi, n]) into (lo, hi, n)."""
    if isinstance(spec, str):
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid spec {spec!r} must look like 'lo:hi:n'")
        try:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"malformed grid spec {spec!r}: {exc}") from None
    else:
        try:
            lo, hi, n = float(spec[0]), float(spec[1]), int(spec[2])
            if len(spec) != 3:
                raise UsageError(f"grid {spec!r} must have three entries")
        except (TypeError, ValueError, IndexError):
            raise UsageError(f"grid {spec!r} must be 'lo:hi:n' or [lo, hi, n]") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError("grid endpoints must be finite")
    if n < 1:
        raise UsageError("grid point count must be >= 1")
    return lo, hi, n


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="spinmz", description=__doc__, add_help=True,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("experiment", help=f"one of: {', '.join(EXPERIMENTS)}")
    p.add_argument("--config", help="JSON config document; flags override it")
    p.add_argument("--n-atoms", type=int, dest="n_atoms")
    p.add_argument("--c", type=float)
    p.add_argument("--h-z", type=float, dest="h_z")
    p.add_argument("--h-x-init", type=float, dest="h_x_init")
    p.add_argument("--rate", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--grid", help="grid spec lo:hi:n (log-spaced for geometry)")
    p.add_argument("--levels", type=int, help="level count for spectra")
    p.add_argument("--seeding", choices=("ghz", "protocol"),
                   help="fringes seeding: ideal GHZ states or full protocol runs")
    p.add_argument("--output", help="artifact path (default <experiment>.<ext>)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--workers", type=int,
                   help="process count for sweep-grid experiments (default 1)")
    return p


_CONFIG_KEYS = (
    "experiment", "n_atoms", "c", "h_z", "h_x_init", "rate", "step", "grid",
    "levels", "seeding", "output", "format", "workers",
)
_NUMERIC_KEYS = ("c", "h_z", "h_x_init", "rate", "step")


def parse_config(argv) -> ExperimentConfig:
    """Resolve defaults, config document, and flags (in increasing precedence)."""
    ns = _build_parser().parse_args(argv)

    merged: dict = {}
    if ns.config is not None:
        try:
            with open(ns.config) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read config {ns.config!r}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {ns.config!r} is not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise UsageError("config document must be a JSON object")
        unknown = sorted(set(doc) - set(_CONFIG_KEYS))
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        merged.update(doc)

    for key in _CONFIG_KEYS:
        if key == "experiment":
            continue
        value = getattr(ns, key, None)
        if value is not None:
            merged[key] = value
    doc_experiment = merged.pop("experiment", None)
    experiment = ns.experiment or doc_experiment

    if experiment not in EXPERIMENTS:
        raise UsageError(
            f"unknown experiment {experiment!r}; expected one of: {', '.join(EXPERIMENTS)}"
        )
    if "grid" in merged and merged["grid"] is not None:
        merged["grid"] = parse_grid(merged["grid"])

    try:
        cfg = ExperimentConfig(experiment=experiment, **merged)
    except TypeError as exc:
        raise UsageError(str(exc)) from None

    # validation: numbers finite, positivity where required
    try:
        cfg.n_atoms = int(cfg.n_atoms)
        for key in _NUMERIC_KEYS:
            setattr(cfg, key, float(getattr(cfg, key)))
        cfg.levels = int(cfg.levels)
        cfg.workers = int(cfg.workers)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"malformed numeric value: {exc}") from None
    if cfg.n_atoms < 1:
        raise UsageError("n_atoms must be a positive integer")
    for key in _NUMERIC_KEYS:
        if not math.isfinite(getattr(cfg, key)):
            raise UsageError(f"{key} must be finite")
    if cfg.rate <= 0:
        raise UsageError("rate must be positive")
    if cfg.step <= 0:
        raise UsageError("step must be positive")
    if cfg.levels < 1:
        raise UsageError("levels must be >= 1")
    if cfg.workers < 1:
        raise UsageError("workers must be >= 1")
    if cfg.seeding not in ("ghz", "protocol"):
        raise UsageError("seeding must be 'ghz' or 'protocol'")
    if cfg.format not in (None, "csv", "json"):
        raise UsageError("format must be 'csv' or 'json'")
    if cfg.grid is not None and cfg.experiment not in _GRID_EXPERIMENTS:
        raise UsageError(f"--grid does not apply to the {cfg.experiment} experiment")
    if cfg.experiment == "geometry" and cfg.grid is not None and cfg.grid[0] <= 0:
        raise UsageError("geometry grid is log-spaced; endpoints must be positive")
    return cfg


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_table(path: str, columns: list[str], rows: list[list[float]], fmt: str):
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(x) for x in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "columns": columns,
            "rows": [[None if (isinstance(x, float) and math.isnan(x)) else x
                      for x in row] for row in rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _write_document(path: str, doc: dict, fmt: str):
    if fmt == "json":
        clean = {k: (None if isinstance(v, float) and math.isnan(v) else v)
                 for k, v in doc.items()}
        text = json.dumps(clean, indent=2) + "\n"
    else:
        columns = list(doc)
        values = [
            "; ".join(v) if isinstance(v, list) else
            ("" if v is None else (_fmt(v) if isinstance(v, float) else str(v)))
            for v in doc.values()
        ]
        text = ",".join(columns) + "\n" + ",".join(values) + "\n"
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _pmap(fn, items, workers: int):
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# --- grid-point workers (module level so they pickle for process pools) ---

def _split_endpoint(args):
    """Run one splitting sweep and report the end-of-sweep GHZ quantities."""
    n_atoms, c, h_z, h_x_init, rate, step = args
    ops = build_collective_ops(build_basis(n_atoms))
    h_init = build_hamiltonian(ops, ModelParams(n_atoms, c, h_x=h_x_init, h_z=h_z))
    start = QuantumState(eigh(h_init).eigenvectors[:, 0], ops.basis)
    record = propagate(start, ops, c, make_linear_sweep(h_x_init, 0.0, rate, h_z),
                       max_field_step=step)
    f_phi_max, phi = max_phase_fidelity(record.final_state)
    return f_phi_max, phi, record.norm_drift, record.min_gap


def _protocol_fringe_point(args):
    """One end-to-end interferometer run; phase taken from the split stage."""
    n_atoms, c, h_z, h_x_init, rate, step = args
    result = run_interferometer(
        ModelParams(n_atoms, c, h_z=h_z), rate=rate, h_x_init=h_x_init,
        max_field_step=step,
    )
    return result.split_phase, result.f0, result.f1, result.norm_drift, result.min_gap


# --- experiments ---

def _linear_grid(cfg: ExperimentConfig, kind: str) -> np.ndarray:
    lo, hi, n = cfg.grid if cfg.grid is not None else _DEFAULT_GRIDS[kind]
    return np.linspace(lo, hi, n)


def _experiment_spectra(cfg: ExperimentConfig):
    ops = build_collective_ops(build_basis(cfg.n_atoms))
    grid = _linear_grid(cfg, "spectra")
    scan = level_scan(ops, cfg.c, cfg.h_z, grid, k=cfg.levels)
    columns = ["h_x"] + [f"E{i}" for i in range(cfg.levels)]
    rows = [[scan.grid[i], *scan.levels[i]] for i in range(scan.grid.size)]
    return columns, rows, {}


def _split_record(cfg: ExperimentConfig, ops, observables):
    h_init = build_hamiltonian(
        ops, ModelParams(cfg.n_atoms, cfg.c, h_x=cfg.h_x_init, h_z=cfg.h_z)
    )
    start = QuantumState(eigh(h_init).eigenvectors[:, 0], ops.basis)
    protocol = make_linear_sweep(cfg.h_x_init, 0.0, cfg.rate, h_z=cfg.h_z)
    return propagate(start, ops, cfg.c, protocol, max_field_step=cfg.step,
                     observables=observables)


def _experiment_split(cfg: ExperimentConfig):
    ops = build_collective_ops(build_basis(cfg.n_atoms))
    record = _split_record(cfg, ops, {
        "f_g": ghz_fidelity,
        "f_phi_max": lambda s: max_phase_fidelity(s)[0],
    })
    columns = ["t", "h_x", "h_z", "f_g", "f_phi_max"]
    rows = [
        [record.times[i], record.h_x[i], record.h_z[i],
         record.observables["f_g"][i], record.observables["f_phi_max"][i]]
        for i in range(record.times.size)
    ]
    diag = {"max_norm_drift": record.norm_drift, "min_gap": record.min_gap}
    return columns, rows, diag


def _experiment_phase_scan(cfg: ExperimentConfig):
    grid = _linear_grid(cfg, "phase-scan")
    tasks = [(cfg.n_atoms, cfg.c, float(h_z), cfg.h_x_init, cfg.rate, cfg.step)
             for h_z in grid]
    results = _pmap(_split_endpoint, tasks, cfg.workers)
    phis = np.unwrap([r[1] for r in results])
    phis -= 2 * math.pi * round(phis[0] / (2 * math.pi))
    rows = [[grid[i], results[i][0], phis[i]] for i in range(grid.size)]
    diag = {
        "max_norm_drift": max(r[2] for r in results),
        "min_gap": min(r[3] for r in results),
    }
    return ["h_z", "f_phi_max", "phi"], rows, diag


def _experiment_fringes(cfg: ExperimentConfig):
    if cfg.seeding == "protocol":
        grid = _linear_grid(cfg, "fringes-protocol")
        tasks = [(cfg.n_atoms, cfg.c, float(h_z), cfg.h_x_init, cfg.rate, cfg.step)
                 for h_z in grid]
        results = _pmap(_protocol_fringe_point, tasks, cfg.workers)
        rows = [[r[0], r[1], r[2]] for r in results]
        diag = {
            "max_norm_drift": max(r[3] for r in results),
            "min_gap": min(r[4] for r in results),
        }
        return ["phi", "f0", "f1"], rows, diag

    # ideal-GHZ seeding: the recombination unitary is phase independent, so
    # propagate the two stretched kets once and form every phase by linearity
    ops = build_collective_ops(build_basis(cfg.n_atoms))
    basis = ops.basis
    n = cfg.n_atoms
    protocol = make_linear_sweep(0.0, cfg.h_x_init, cfg.rate, h_z=0.0)
    rec_a = propagate(fock_state(basis, (0, 0, n)), ops, cfg.c, protocol,
                      max_field_step=cfg.step)
    rec_b = propagate(fock_state(basis, (n, 0, 0)), ops, cfg.c, protocol,
                      max_field_step=cfg.step)
    ref = eigh(build_hamiltonian(
        ops, ModelParams(n, cfg.c, h_x=cfg.h_x_init, h_z=0.0)
    ))
    ground = ref.eigenvectors[:, 0]
    excited = ref.eigenvectors[:, 1]
    ga = np.vdot(ground, rec_a.final_state.amplitudes)
    gb = np.vdot(ground, rec_b.final_state.amplitudes)
    ea = np.vdot(excited, rec_a.final_state.amplitudes)
    eb = np.vdot(excited, rec_b.final_state.amplitudes)
    rows = []
    for phi in _linear_grid(cfg, "fringes"):
        z = np.exp(1j * phi)
        rows.append([
            phi,
            abs(ga + z * gb) ** 2 / 2,
            abs(ea + z * eb) ** 2 / 2,
        ])
    diag = {
        "max_norm_drift": max(rec_a.norm_drift, rec_b.norm_drift),
        "min_gap": min(rec_a.min_gap, rec_b.min_gap),
    }
    return ["phi", "f0", "f1"], rows, diag


def _experiment_squeezing(cfg: ExperimentConfig):
    ops = build_collective_ops(build_basis(cfg.n_atoms))

    def xi2(state):
        try:
            return squeezing_parameter(state, ops).xi2
        except UndefinedSqueezingError:
            return float("nan")

    record = _split_record(cfg, ops, {"xi2": xi2})
    columns = ["t", "h_x", "h_z", "xi2"]
    rows = [
        [record.times[i], record.h_x[i], record.h_z[i], record.observables["xi2"][i]]
        for i in range(record.times.size)
    ]
    diag = {"max_norm_drift": record.norm_drift, "min_gap": record.min_gap}
    return columns, rows, diag


def _experiment_geometry(cfg: ExperimentConfig):
    lo, hi, n = cfg.grid if cfg.grid is not None else _DEFAULT_GRIDS["geometry"]
    grid = np.geomspace(lo, hi, n)
    rows = [[float(k), chi(float(k))] for k in grid]
    return ["kappa", "chi"], rows, {}


def _experiment_interferometer(cfg: ExperimentConfig):
    result = run_interferometer(
        ModelParams(cfg.n_atoms, cfg.c, h_z=cfg.h_z),
        rate=cfg.rate, h_x_init=cfg.h_x_init, max_field_step=cfg.step,
    )
    doc = result.to_dict()
    diag = {"max_norm_drift": result.norm_drift, "min_gap": result.min_gap}
    return doc, diag


def run_experiment(cfg: ExperimentConfig) -> RunManifest:
    """Run one experiment, write its artifact, and return the manifest."""
    t_start = time.monotonic()
    fmt = cfg.format or ("json" if cfg.experiment == "interferometer" else "csv")
    path = cfg.output or f"{cfg.experiment}.{fmt}"
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)

    diagnostics: dict = {"max_norm_drift": None, "min_gap": None}
    if cfg.experiment == "interferometer":
        doc, diag = _experiment_interferometer(cfg)
        diagnostics.update(diag)
        _write_document(path, doc, fmt)
    else:
        runner = {
            "spectra": _experiment_spectra,
            "split": _experiment_split,
            "phase-scan": _experiment_phase_scan,
            "fringes": _experiment_fringes,
            "squeezing": _experiment_squeezing,
            "geometry": _experiment_geometry,
        }[cfg.experiment]
        columns, rows, diag = runner(cfg)
        diagnostics.update(diag)
        _write_table(path, columns, rows, fmt)

    drift = diagnostics.get("max_norm_drift")
    if drift is not None and drift > 1e-9:
        raise RuntimeError(f"norm drift {drift:.3e} exceeds 1e-9")

    return RunManifest(
        experiment=cfg.experiment,
        version=__version__,
        config=asdict(cfg),
        outputs=[path],
        duration_s=time.monotonic() - t_start,
        diagnostics=diagnostics,
    )


def _emit_error(message: str, code: int):
    print(json.dumps({"error": message, "code": code}), file=sys.stderr)


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        _emit_error(str(exc), 2)
        return 2
    try:
        manifest = run_experiment(cfg)
    except UsageError as exc:
        _emit_error(str(exc), 2)
        return 2
    except Exception as exc:  # numeric/runtime failures: exit contract code 3
        _emit_error(f"{type(exc).__name__}: {exc}", 3)
        return 3
    print(json.dumps(asdict(manifest)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
