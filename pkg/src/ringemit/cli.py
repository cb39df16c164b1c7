"""Command-line driver.

Subcommands: ``simulate`` (emission probabilities over a time or time/phase
grid), ``decompose`` (interference coefficients A, B, C, S), ``eigen``
(numerical spectrum next to the explicit formulas where they exist) and
``validate`` (the full acceptance suite).  Output is CSV with shortest
round-trip float formatting, byte-identical for identical configuration.

Exit codes: 0 success, 1 validation failure, 2 invalid input, 3 numeric
failure, 4 interference-form violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from contextlib import nullcontext
from dataclasses import dataclass

import numpy as np

from . import analysis, dynamics, models, reference, validation
from .errors import AnsatzViolationError, NumericError
from .models import ModelId

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_ANSATZ = 4

CONFIG_KEYS = {
    "model", "omega0", "omega1", "alpha", "beta", "phi",
    "t_max", "t_steps", "phi_steps", "method", "dt", "out",
}


@dataclass
class RunConfig:
    model: ModelId
    omega0: float
    omega1: float
    alpha: float | None = None
    beta: float | None = None
    phi: float | None = None
    t_max: float | None = None
    t_steps: int | None = None
    phi_steps: int = 0
    method: str = "spectral"
    dt: float = 1e-3
    out: str | None = None
    plot: bool = False


def _fmt(x: float) -> str:
    # repr of a Python float is the shortest string that round-trips
    return repr(float(x))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringemit",
        description="Simulate ring-emission models and validate them against closed forms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p):
        p.add_argument("--model", choices=[m.value for m in ModelId], help="model identifier")
        p.add_argument("--omega0", type=float, help="hopping frequency")
        p.add_argument("--omega1", type=float, help="emission coupling")
        p.add_argument("--config", help="flat JSON file with any of the run parameters")
        p.add_argument("--out", help="output path (default: standard output)")

    def add_grid_flags(p):
        p.add_argument("--t-max", type=float, help="end of the time grid")
        p.add_argument("--t-steps", type=int, help="number of uniform time intervals")

    sim = sub.add_parser("simulate", help="emission probabilities over a (time, phase) grid")
    add_model_flags(sim)
    add_grid_flags(sim)
    sim.add_argument("--alpha", type=float, help="weight of the site-1 peak")
    sim.add_argument("--beta", type=float, help="weight of the site-2 peak")
    sim.add_argument("--phi", type=float, help="relative phase (ignored when --phi-steps > 0)")
    sim.add_argument("--phi-steps", type=int, help="phase sweep cells on [0, 2pi); 0 disables")
    sim.add_argument("--method", choices=["spectral", "rk4"], help="propagation method")
    sim.add_argument("--dt", type=float, help="rk4 step size")
    sim.add_argument("--plot", action="store_true", help="render a figure next to the CSV")

    dec = sub.add_parser("decompose", help="interference coefficients A, B, C, S over time")
    add_model_flags(dec)
    add_grid_flags(dec)
    dec.add_argument("--plot", action="store_true", help="render a figure next to the CSV")

    eig = sub.add_parser("eigen", help="numerical spectrum with closed forms where available")
    add_model_flags(eig)

    val = sub.add_parser("validate", help="run the acceptance suite")
    val.add_argument("--tolerance", type=float, help="override upper error bounds")
    val.add_argument("--out", help="write the report table to a file")

    return parser


def _load_config_file(path: str) -> dict:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError("config file must contain a flat JSON object")
    unknown = sorted(set(data) - CONFIG_KEYS)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    return data


def _merged_values(args) -> dict:
    values = {}
    if getattr(args, "config", None):
        values.update(_load_config_file(args.config))
    for key in sorted(CONFIG_KEYS):
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            values[key] = flag_value
    return values


def _take_float(values: dict, key: str, required: bool) -> float | None:
    if key not in values:
        if required:
            raise ValueError(f"missing required parameter: {key}")
        return None
    raw = values[key]
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ValueError(f"parameter {key} must be a number, got {raw!r}")
    value = float(raw)
    if not math.isfinite(value):
        raise ValueError(f"parameter {key} must be finite, got {value!r}")
    return value


def _take_int(values: dict, key: str, required: bool) -> int | None:
    if key not in values:
        if required:
            raise ValueError(f"missing required parameter: {key}")
        return None
    raw = values[key]
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ValueError(f"parameter {key} must be an integer, got {raw!r}")
    return raw


def parse_config(args, command: str) -> RunConfig:
    """Merge config file and flags into a validated RunConfig.

    Flags override file values.  Requirements depend on the subcommand:
    ``eigen`` needs only the model and frequencies, ``decompose`` adds the
    time grid, ``simulate`` adds the initial-state parameters.
    """
    values = _merged_values(args)

    if "model" not in values:
        raise ValueError("missing required parameter: model")
    model = ModelId(values["model"])

    needs_grid = command in ("simulate", "decompose")
    needs_state = command == "simulate"

    omega0 = _take_float(values, "omega0", required=True)
    omega1 = _take_float(values, "omega1", required=True)
    if command == "eigen":
        if omega0 < 0 or omega1 < 0:
            raise ValueError("omega0 and omega1 must be non-negative")
    else:
        if omega0 <= 0:
            raise ValueError(f"omega0 must be positive, got {omega0}")
        if omega1 < 0:
            raise ValueError(f"omega1 must be non-negative, got {omega1}")

    t_max = _take_float(values, "t_max", required=needs_grid)
    t_steps = _take_int(values, "t_steps", required=needs_grid)
    if needs_grid:
        if t_max < 0:
            raise ValueError(f"t_max must be non-negative, got {t_max}")
        if t_steps < 1:
            raise ValueError(f"t_steps must be at least 1, got {t_steps}")

    phi_steps = _take_int(values, "phi_steps", required=False)
    phi_steps = 0 if phi_steps is None else phi_steps
    if phi_steps < 0:
        raise ValueError(f"phi_steps must be non-negative, got {phi_steps}")

    alpha = _take_float(values, "alpha", required=needs_state)
    beta = _take_float(values, "beta", required=needs_state)
    phi = _take_float(values, "phi", required=needs_state and phi_steps == 0)
    if alpha is not None and beta is not None:
        mass = alpha * alpha + beta * beta
        if abs(mass - 1.0) > models.NORMALIZATION_TOL:
            raise ValueError(f"alpha^2 + beta^2 must equal 1, got {mass!r}")

    method = values.get("method", "spectral")
    if method not in ("spectral", "rk4"):
        raise ValueError(f"method must be 'spectral' or 'rk4', got {method!r}")
    dt = _take_float(values, "dt", required=False)
    dt = 1e-3 if dt is None else dt
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")

    out = values.get("out")
    if out is not None and not isinstance(out, str):
        raise ValueError(f"out must be a path string, got {out!r}")
    plot = bool(getattr(args, "plot", False))
    if plot and not out:
        raise ValueError("--plot requires --out so the figure has a base name")

    return RunConfig(
        model=model, omega0=omega0, omega1=omega1, alpha=alpha, beta=beta, phi=phi,
        t_max=t_max, t_steps=t_steps, phi_steps=phi_steps, method=method, dt=dt,
        out=out, plot=plot,
    )


def _time_grid(config: RunConfig) -> np.ndarray:
    # a zero-length window collapses to the single point t = 0
    if config.t_max == 0:
        return np.array([0.0])
    return np.linspace(0.0, config.t_max, config.t_steps + 1)


def _phase_grid(config: RunConfig) -> np.ndarray:
    if config.phi_steps > 0:
        return np.array([2.0 * math.pi * k / config.phi_steps for k in range(config.phi_steps)])
    return np.array([config.phi])


def _figure_path(out: str) -> str:
    stem = out[: -len(".csv")] if out.endswith(".csv") else out
    return stem + ".png"


def _open_out(path):
    if path:
        return open(path, "w", newline="")
    return nullcontext(sys.stdout)


def cmd_simulate(config: RunConfig) -> int:
    records = analysis.phase_sweep(
        config.model, config.omega0, config.omega1, config.alpha, config.beta,
        _time_grid(config), _phase_grid(config), method=config.method, dt=config.dt,
    )
    sites = config.model.sites
    header = ["model", "omega0", "omega1", "alpha", "beta", "phi", "t", "p"]
    header += [f"p_cond_{j}" for j in range(1, sites + 1)]
    header += ["norm"]
    with _open_out(config.out) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for r in records:
            writer.writerow(
                [config.model.value, _fmt(config.omega0), _fmt(config.omega1),
                 _fmt(config.alpha), _fmt(config.beta), _fmt(r.phi), _fmt(r.t), _fmt(r.p)]
                + [_fmt(x) for x in r.p_cond]
                + [_fmt(r.norm)]
            )
    if config.plot:
        from . import plots

        plots.render_simulation(records, config.phi_steps, _figure_path(config.out))
    return EXIT_OK


def cmd_decompose(config: RunConfig) -> int:
    status = EXIT_OK
    try:
        fits = analysis.decompose_interference_grid(
            config.model, config.omega0, config.omega1, _time_grid(config)
        )
    except AnsatzViolationError as exc:
        print(f"warning: {exc}", file=sys.stderr)
        fits = exc.fits
        status = EXIT_ANSATZ
    with _open_out(config.out) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["model", "omega0", "omega1", "t", "A", "B", "C", "S", "residual"])
        for f in fits:
            writer.writerow(
                [config.model.value, _fmt(config.omega0), _fmt(config.omega1),
                 _fmt(f.t), _fmt(f.a), _fmt(f.b), _fmt(f.c), _fmt(f.s), _fmt(f.residual)]
            )
    if config.plot:
        from . import plots

        plots.render_decomposition(fits, _figure_path(config.out))
    return status


def cmd_eigen(config: RunConfig) -> int:
    h = models.free_hamiltonian(config.model, config.omega0) + models.interaction_hamiltonian(
        config.model, config.omega1
    )
    numeric = dynamics.eigendecompose_hermitian(h).eigenvalues

    closed = None
    if config.model is ModelId.C:
        closed = reference.model_c_eigenvalues(config.omega0, config.omega1)
    elif config.model is ModelId.A and config.omega1 == 1.0:
        lams = np.array(reference.lambda_eigenvalues(config.omega0))
        closed = np.sort(np.concatenate([np.repeat(lams, 2), np.repeat(-lams, 2)]))

    with _open_out(config.out) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["model", "omega0", "omega1", "index", "eigenvalue", "closed_form"])
        for k, value in enumerate(numeric):
            closed_cell = _fmt(closed[k]) if closed is not None else ""
            writer.writerow(
                [config.model.value, _fmt(config.omega0), _fmt(config.omega1),
                 str(k), _fmt(value), closed_cell]
            )
    return EXIT_OK


def cmd_validate(args) -> int:
    report = validation.run_all(tolerance=args.tolerance)
    with _open_out(args.out) as fh:
        fh.write(report.table() + "\n")
    return EXIT_OK if report.passed else EXIT_VALIDATION


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args)
        config = parse_config(args, args.command)
        if args.command == "simulate":
            return cmd_simulate(config)
        if args.command == "decompose":
            return cmd_decompose(config)
        return cmd_eigen(config)
    except AnsatzViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANSATZ
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
