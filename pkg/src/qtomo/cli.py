"""Command line interface.

Subcommands
-----------
estimate    unconstrained + constrained estimates from an outcome-count file
project     least-squares density-matrix projection of a trace-one Hermitian
simulate    seeded Monte Carlo trajectory sweep driven by a JSON config
mse         closed-form error matrix of a qubit scheme at a given theta
compare     scheme comparison: single theta as JSON or a ball grid as CSV
povm-check  structural checks of a measurement scheme, with probabilities

Matrices travel as JSON arrays of [re, im] pairs.  Tables are CSV with
floats at 17 significant digits, so values survive a round trip exactly.
All file writes are atomic (temp file then rename).  Exit codes: 0 success,
2 malformed input or config, 3 violated domain invariant, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from .error_analysis import (
    average_mse_over_ball,
    compare_standard_vs_complementary,
    compare_traces_min_vs_comp,
    mse_minimal,
    mse_standard,
    mse_three_direction,
)
from .estimators import constrained_estimate, unconstrained_estimate
from .linalg import InvariantError, hs_distance, is_psd
from .measurement import (
    MeasurementPlan,
    direction_observable,
    minimal_povm,
    outcome_probabilities,
    standard_povm,
)
from .simulation import (
    METRICS,
    ConfigError,
    ExperimentConfig,
    RandomState,
    run_trajectory,
)
from .states import bloch_to_matrix, require_trace_one

DEFAULT_SEED = 42

__all__ = ["main", "entrypoint", "DEFAULT_SEED"]


# ---------------------------------------------------------------------------
# JSON codecs


def matrix_to_json(matrix) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix, complex)]


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ConfigError("matrix must be a nonempty JSON array of rows")
    k = len(obj)
    out = np.empty((k, k), dtype=complex)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != k:
            raise ConfigError(f"matrix row {i} must be an array of {k} entries")
        for j, pair in enumerate(row):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
            ):
                raise ConfigError(f"matrix entry ({i}, {j}) must be a [re, im] number pair")
            out[i, j] = complex(pair[0], pair[1])
    return out


def _load_json(text: str, origin: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {origin}: {exc}") from exc


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _parse_theta(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError("theta must be three comma-separated numbers")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise ConfigError(f"theta entries must be numbers: {exc}") from exc


def _require_keys(obj: dict, allowed: set, origin: str):
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"unknown keys in {origin}: {', '.join(unknown)}")


# ---------------------------------------------------------------------------
# Output helpers


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _emit_json(payload, out: str | None) -> int:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        _atomic_write(Path(out), text + "\n")
    else:
        print(text)
    return 0


def _svg_line_chart(x, y, title: str, xlabel: str, ylabel: str) -> str:
    """Minimal standalone SVG line chart: axes, ticks, polyline, markers."""
    width, height = 640.0, 440.0
    left, right, top, bottom = 70.0, 20.0, 40.0, 50.0
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x_lo, x_hi = float(x.min()), float(x.max())
    y_lo, y_hi = float(y.min()), float(y.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    span_x = x_hi - x_lo
    span_y = y_hi - y_lo

    def px(v):
        return left + (v - x_lo) / span_x * (width - left - right)

    def py(v):
        return height - bottom - (v - y_lo) / span_y * (height - top - bottom)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" y2="{height - bottom}" '
        'stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" stroke="black"/>',
        f'<text x="{(left + width - right) / 2:.1f}" y="{height - 12:.1f}" text-anchor="middle" '
        f'font-size="12">{xlabel}</text>',
        f'<text x="16" y="{(top + height - bottom) / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {(top + height - bottom) / 2:.1f})">{ylabel}</text>',
    ]
    for tick in np.linspace(x_lo, x_hi, 5):
        parts.append(
            f'<line x1="{px(tick):.2f}" y1="{height - bottom}" x2="{px(tick):.2f}" '
            f'y2="{height - bottom + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px(tick):.2f}" y="{height - bottom + 18:.1f}" text-anchor="middle" '
            f'font-size="10">{tick:.4g}</text>'
        )
    for tick in np.linspace(y_lo, y_hi, 5):
        parts.append(
            f'<line x1="{left - 5}" y1="{py(tick):.2f}" x2="{left}" y2="{py(tick):.2f}" '
            'stroke="black"/>'
        )
        parts.append(
            f'<text x="{left - 8:.1f}" y="{py(tick) + 3:.2f}" text-anchor="end" '
            f'font-size="10">{tick:.4g}</text>'
        )
    points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
    parts.append(f'<polyline points="{points}" fill="none" stroke="#1663a9" stroke-width="1.5"/>')
    for a, b in zip(x, y):
        parts.append(f'<circle cx="{px(a):.2f}" cy="{py(b):.2f}" r="3" fill="#1663a9"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_project(args) -> int:
    if (args.matrix is None) == (args.matrix_file is None):
        raise ConfigError("provide exactly one of --matrix or --matrix-file")
    text = args.matrix if args.matrix is not None else _read_source(args.matrix_file)
    matrix = matrix_from_json(_load_json(text, "matrix input"))
    matrix = require_trace_one(matrix)
    projected, steps = constrained_estimate(matrix)
    payload = {
        "input": matrix_to_json(matrix),
        "projected": matrix_to_json(projected),
        "steps": steps,
        "hs_distance": hs_distance(matrix, projected),
        "already_psd": steps == 0,
    }
    return _emit_json(payload, args.out)


_COUNT_KINDS = {"z": 2, "x": 3, "y": 3}


def _counts_from_json(obj) -> tuple[MeasurementPlan, dict]:
    if not isinstance(obj, dict):
        raise ConfigError("counts input must be a JSON object")
    _require_keys(obj, {"dim", "repetitions", "counts"}, "counts input")
    for key in ("dim", "repetitions", "counts"):
        if key not in obj:
            raise ConfigError(f"counts input is missing {key!r}")
    if not isinstance(obj["dim"], int) or not isinstance(obj["repetitions"], int):
        raise ConfigError("dim and repetitions must be integers")
    try:
        plan = MeasurementPlan(obj["dim"], obj["repetitions"])
    except InvariantError as exc:
        raise ConfigError(str(exc)) from exc
    if not isinstance(obj["counts"], dict):
        raise ConfigError("counts must be an object mapping labels to count rows")
    table = {}
    for label, row in obj["counts"].items():
        parts = label.split("_")
        if parts[0] not in _COUNT_KINDS or len(parts) != (2 if parts[0] == "z" else 3):
            raise ConfigError(f"unrecognized count label {label!r}")
        try:
            key = (parts[0], *(int(p) for p in parts[1:]))
        except ValueError as exc:
            raise ConfigError(f"unrecognized count label {label!r}") from exc
        if not isinstance(row, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in row
        ):
            raise ConfigError(f"counts for {label!r} must be an array of numbers")
        table[key] = np.asarray(row, dtype=float)
    missing = [k for k in plan.keys if k not in table]
    if missing:
        raise ConfigError(f"counts are missing observables: {missing}")
    extra = [k for k in table if k not in plan.keys]
    if extra:
        raise ConfigError(f"counts contain unknown observables: {extra}")
    return plan, table


def _cmd_estimate(args) -> int:
    obj = _load_json(_read_source(args.counts), args.counts)
    plan, table = _counts_from_json(obj)
    phi = unconstrained_estimate(plan, table)
    rho, steps = constrained_estimate(phi)
    payload = {
        "dim": plan.dim,
        "repetitions": plan.repetitions,
        "unconstrained": matrix_to_json(phi),
        "constrained": matrix_to_json(rho),
        "steps": steps,
        "psd": bool(is_psd(phi)),
        "hs_distance": hs_distance(phi, rho),
    }
    return _emit_json(payload, args.out)


_STATE_KEYS = {"bloch", "matrix", "random"}
_CONFIG_KEYS = {"state", "scheme", "schedule", "trials", "seed", "metrics", "directions", "out", "svg"}


def _state_from_json(obj):
    if not isinstance(obj, dict) or len(set(obj) & _STATE_KEYS) != 1 or set(obj) - _STATE_KEYS:
        raise ConfigError('state must be an object with exactly one of "bloch", "matrix", "random"')
    if "bloch" in obj:
        vec = obj["bloch"]
        if not isinstance(vec, list) or len(vec) != 3:
            raise ConfigError("bloch state must be an array of three numbers")
        return bloch_to_matrix([float(v) for v in vec]), 2
    if "matrix" in obj:
        m = matrix_from_json(obj["matrix"])
        return m, m.shape[0]
    entry = obj["random"]
    if not isinstance(entry, dict) or "dim" not in entry:
        raise ConfigError('random state must be an object with "dim"')
    _require_keys(entry, {"dim", "eigenvalues"}, "random state")
    if not isinstance(entry["dim"], int) or entry["dim"] < 2:
        raise ConfigError("random state dim must be an integer >= 2")
    eig = entry.get("eigenvalues")
    if eig is not None:
        if not isinstance(eig, list) or len(eig) != entry["dim"]:
            raise ConfigError("random state eigenvalues must list one value per dimension")
        eig = tuple(float(v) for v in eig)
    return RandomState(dim=entry["dim"], eigenvalues=eig), entry["dim"]


def _config_from_file(path: str, args) -> tuple[ExperimentConfig, dict]:
    obj = _load_json(_read_source(path), path)
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    _require_keys(obj, _CONFIG_KEYS, "config")
    for key in ("state", "scheme", "schedule"):
        if key not in obj:
            raise ConfigError(f"config is missing {key!r}")
    state, dim = _state_from_json(obj["state"])
    if not isinstance(obj["schedule"], list):
        raise ConfigError("schedule must be an array of integers")
    metrics = obj.get("metrics")
    if metrics is None:
        metrics = [m for m in METRICS if dim == 2 or m != "fidelity-unconstrained"]
    elif not isinstance(metrics, list):
        raise ConfigError("metrics must be an array of metric names")
    directions = obj.get("directions")
    if directions is not None:
        if not isinstance(directions, list):
            raise ConfigError("directions must be a 3x3 array of numbers")
        directions = np.asarray(directions, dtype=float)
    trials = args.trials if args.trials is not None else obj.get("trials", 1000)
    seed = args.seed if args.seed is not None else obj.get("seed", DEFAULT_SEED)
    if not isinstance(trials, int) or not isinstance(seed, int):
        raise ConfigError("trials and seed must be integers")
    try:
        config = ExperimentConfig(
            state=state,
            scheme=obj["scheme"] if isinstance(obj["scheme"], str) else "",
            schedule=tuple(int(v) for v in obj["schedule"]),
            trials=trials,
            seed=seed,
            metrics=tuple(metrics),
            directions=directions,
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid config: {exc}") from exc
    options = {
        "out": args.out if args.out is not None else obj.get("out", "."),
        "svg": bool(args.svg or obj.get("svg", False)),
    }
    if not isinstance(options["out"], str):
        raise ConfigError("out must be a path string")
    return config, options


def _cmd_simulate(args) -> int:
    config, options = _config_from_file(args.config, args)
    record = run_trajectory(config, workers=args.workers)
    out_dir = Path(options["out"])
    csv_path = out_dir / "trajectory.csv"
    header = ("n", "metric", "mean", "stderr", "trials", "seed")
    _atomic_write(csv_path, _csv_text(header, record.rows()))
    written = [str(csv_path)]
    if options["svg"]:
        for metric in config.metrics:
            svg_path = out_dir / f"trajectory_{metric}.svg"
            chart = _svg_line_chart(
                record.copies,
                record.means[metric],
                title=f"{config.scheme}: {metric}",
                xlabel="copies n",
                ylabel=metric,
            )
            _atomic_write(svg_path, chart)
            written.append(str(svg_path))
    for path in written:
        print(path)
    return 0


_MSE_SCHEMES = ("comp", "three-direction", "standard", "minimal")


def _cmd_mse(args) -> int:
    theta = _parse_theta(args.theta)
    n = args.copies
    if args.scheme in ("comp", "three-direction"):
        if n % 3:
            raise ConfigError("the per-direction schemes need copies divisible by 3")
        if args.scheme == "comp":
            if args.directions is not None:
                raise ConfigError("--directions only applies to scheme three-direction")
            directions = np.eye(3)
        else:
            directions = (
                np.eye(3)
                if args.directions is None
                else np.asarray(_load_json(args.directions, "--directions"), dtype=float)
            )
        matrix = mse_three_direction(theta, directions, n // 3)
    elif args.scheme == "standard":
        matrix = mse_standard(theta, n)
    else:
        matrix = mse_minimal(theta, n)
    payload = {
        "scheme": args.scheme,
        "theta": [float(v) for v in theta],
        "copies": n,
        "mse": [[float(v) for v in row] for row in matrix],
        "trace": float(np.trace(matrix)),
    }
    return _emit_json(payload, args.out)


def _compare_row(theta, n):
    diff, dominated = compare_standard_vs_complementary(theta, n)
    trace_comp, trace_min, trace_ok = compare_traces_min_vs_comp(theta, n)
    min_eig = float(np.linalg.eigvalsh(diff)[0])
    return diff, dominated, min_eig, trace_comp, trace_min, trace_ok


def _cmd_compare(args) -> int:
    n = args.copies
    if n % 3:
        raise ConfigError("comparisons need copies divisible by 3")
    if args.theta is not None:
        theta = _parse_theta(args.theta)
        diff, dominated, min_eig, trace_comp, trace_min, trace_ok = _compare_row(theta, n)
        avg, avg_det = average_mse_over_ball(np.eye(3))
        payload = {
            "theta": [float(v) for v in theta],
            "copies": n,
            "standard_minus_comp": [[float(v) for v in row] for row in diff],
            "standard_minus_comp_min_eig": min_eig,
            "comp_dominates_standard": bool(dominated),
            "trace_comp": trace_comp,
            "trace_min": trace_min,
            "trace_comp_le_trace_min": bool(trace_ok),
            "ball_average_mse_orthogonal": [[float(v) for v in row] for row in avg],
            "ball_average_det_orthogonal": avg_det,
        }
        return _emit_json(payload, args.out)
    grid = args.grid
    if grid < 2:
        raise ConfigError("grid must be at least 2 points per axis")
    axis = np.linspace(-1.0, 1.0, grid)
    rows = []
    for t1 in axis:
        for t2 in axis:
            for t3 in axis:
                theta = np.array([t1, t2, t3])
                if float(np.linalg.norm(theta)) > 1.0 + 1e-12:
                    continue
                _, dominated, min_eig, trace_comp, trace_min, trace_ok = _compare_row(theta, n)
                rows.append(
                    (
                        float(t1),
                        float(t2),
                        float(t3),
                        min_eig,
                        int(dominated),
                        trace_comp,
                        trace_min,
                        int(trace_ok),
                    )
                )
    header = (
        "theta1",
        "theta2",
        "theta3",
        "standard_minus_comp_min_eig",
        "comp_dominates_standard",
        "trace_comp",
        "trace_min",
        "trace_comp_le_trace_min",
    )
    out_dir = Path(args.out if args.out is not None else ".")
    csv_path = out_dir / "comparison.csv"
    _atomic_write(csv_path, _csv_text(header, rows))
    if args.svg:
        eigs = np.sort(np.array([r[3] for r in rows]))
        chart = _svg_line_chart(
            np.arange(len(rows)),
            eigs,
            title="min eig of V_standard - V_comp, sorted over the grid",
            xlabel="grid point (sorted)",
            ylabel="min eigenvalue",
        )
        _atomic_write(out_dir / "comparison.svg", chart)
        print(out_dir / "comparison.svg")
    print(csv_path)
    return 0


def _check_povm(povm) -> dict:
    e = povm.effects
    herm = float(np.abs(e - e.conj().transpose(0, 2, 1)).max())
    comp = float(np.abs(e.sum(axis=0) - np.eye(povm.dim)).max())
    min_eig = float(np.linalg.eigvalsh(e)[:, 0].min())
    return {
        "hermitian": herm <= 1e-10,
        "psd": min_eig >= -1e-10,
        "sums_to_identity": comp <= 1e-10,
        "max_hermiticity_gap": herm,
        "min_effect_eigenvalue": min_eig,
        "max_completeness_gap": comp,
    }


def _cmd_povm_check(args) -> int:
    if args.matrix is not None:
        state = matrix_from_json(_load_json(args.matrix, "--matrix"))
    elif args.theta is not None:
        state = bloch_to_matrix(_parse_theta(args.theta))
    else:
        state = None
    payload = {"scheme": args.scheme}
    if args.scheme in ("standard", "minimal"):
        povm = standard_povm() if args.scheme == "standard" else minimal_povm()
        if state is None:
            state = np.eye(2, dtype=complex) / 2.0
        payload["dim"] = 2
        payload["outcomes"] = povm.n_outcomes
        payload["checks"] = _check_povm(povm)
        payload["probabilities"] = [float(p) for p in outcome_probabilities(povm, state)]
    elif args.scheme == "three-direction":
        directions = (
            np.eye(3)
            if args.directions is None
            else np.asarray(_load_json(args.directions, "--directions"), dtype=float)
        )
        if state is None:
            state = np.eye(2, dtype=complex) / 2.0
        payload["dim"] = 2
        probs = {}
        for a in range(3):
            obs = direction_observable(directions[a])
            probs[f"direction_{a + 1}"] = [
                float(p) for p in outcome_probabilities(obs, state)
            ]
        payload["checks"] = {"unit_rows": True, "invertible": True}
        payload["probabilities"] = probs
    else:
        dim = args.dim
        if state is None:
            state = np.eye(dim, dtype=complex) / dim
        if state.shape[0] != dim:
            raise ConfigError(f"--dim {dim} does not match the given state")
        plan = MeasurementPlan(dim, 1)
        payload["dim"] = dim
        payload["observables"] = len(plan.keys)
        checks = {}
        probs = {}
        for key in plan.keys:
            obs = plan.observables[key]
            p = obs.projectors
            label = "_".join(str(part) for part in key)
            idem = max(
                float(np.abs(p[s] @ p[t] - (p[s] if s == t else 0.0)).max())
                for s in range(p.shape[0])
                for t in range(p.shape[0])
            )
            comp = float(np.abs(p.sum(axis=0) - np.eye(dim)).max())
            checks[label] = bool(idem <= 1e-10 and comp <= 1e-10)
            probs[label] = [float(v) for v in outcome_probabilities(obs, state)]
        payload["checks"] = checks
        payload["probabilities"] = probs
    return _emit_json(payload, args.out)


# ---------------------------------------------------------------------------
# Parser and entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtomo",
        description="Point estimation of finite-dimensional quantum states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="estimates from an outcome-count JSON file")
    p_est.add_argument("--counts", required=True, help="counts JSON file, or - for stdin")
    p_est.add_argument("--out", help="write the JSON result here instead of stdout")
    p_est.set_defaults(func=_cmd_estimate)

    p_proj = sub.add_parser("project", help="project a trace-one Hermitian onto density matrices")
    p_proj.add_argument("--matrix", help="matrix as a JSON array of [re, im] pairs")
    p_proj.add_argument("--matrix-file", help="file with the matrix JSON, or - for stdin")
    p_proj.add_argument("--out", help="write the JSON result here instead of stdout")
    p_proj.set_defaults(func=_cmd_project)

    p_sim = sub.add_parser("simulate", help="run a seeded trajectory sweep from a JSON config")
    p_sim.add_argument("--config", required=True, help="experiment config JSON file")
    p_sim.add_argument("--seed", type=int, help="override the config seed")
    p_sim.add_argument("--trials", type=int, help="override the config trial count")
    p_sim.add_argument("--out", help="output directory (default from config, else cwd)")
    p_sim.add_argument("--svg", action="store_true", help="also write one SVG chart per metric")
    p_sim.add_argument("--workers", type=int, default=1, help="sampling worker processes")
    p_sim.set_defaults(func=_cmd_simulate)

    p_mse = sub.add_parser("mse", help="closed-form error matrix of a qubit scheme")
    p_mse.add_argument("--scheme", required=True, choices=_MSE_SCHEMES)
    p_mse.add_argument("--theta", required=True, help="Bloch vector, e.g. 0.3,0.4,0.5")
    p_mse.add_argument("--copies", type=int, required=True, help="total copies n")
    p_mse.add_argument("--directions", help="3x3 JSON row matrix for three-direction")
    p_mse.add_argument("--out", help="write the JSON result here instead of stdout")
    p_mse.set_defaults(func=_cmd_mse)

    p_cmp = sub.add_parser("compare", help="compare the qubit schemes at equal copy budget")
    p_cmp.add_argument("--copies", type=int, default=300, help="total copies n, divisible by 3")
    p_cmp.add_argument("--theta", help="single Bloch vector; JSON output")
    p_cmp.add_argument("--grid", type=int, default=9, help="grid points per axis for the sweep")
    p_cmp.add_argument("--out", help="output directory for the CSV (or file for --theta)")
    p_cmp.add_argument("--svg", action="store_true", help="also write an SVG chart")
    p_cmp.set_defaults(func=_cmd_compare)

    p_chk = sub.add_parser("povm-check", help="structural checks of a measurement scheme")
    p_chk.add_argument(
        "--scheme",
        default="minimal",
        choices=("standard", "minimal", "three-direction", "klevel-pairs"),
    )
    p_chk.add_argument("--dim", type=int, default=2, help="dimension for klevel-pairs")
    p_chk.add_argument("--theta", help="evaluate probabilities at this Bloch vector")
    p_chk.add_argument("--matrix", help="evaluate probabilities at this density matrix JSON")
    p_chk.add_argument("--directions", help="3x3 JSON row matrix for three-direction")
    p_chk.add_argument("--out", help="write the JSON result here instead of stdout")
    p_chk.set_defaults(func=_cmd_povm_check)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
