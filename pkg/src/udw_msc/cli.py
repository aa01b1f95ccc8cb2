"""Command-line front end.

Subcommands: ``msc`` (one closed-form point, optionally cross-checked
numerically), ``sweep`` (CSV grid), ``evolve`` (integrate a named
initial state and log diagnostics), ``figures`` (panel CSVs plus
metadata, optionally SVG plots), ``check`` (fast invariant suite).

Exit codes: 0 success, 1 check failure, 2 bad arguments, 3 I/O failure.
All CSV output uses comma separators, LF line endings, a trailing
newline and 12 significant digits, and is byte-identical for identical
flags regardless of parallelism.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .lindblad import evolve, thermal_params
from .qmat import trace_distance, validate_density
from .steering import msc_closed_form, msc_numeric, msc_random_povm
from .sweep import (
    GridSpec,
    default_t_grid,
    figure_data,
    inclusive_range,
    monotonicity_report,
    msc_grid,
    msc_point,
    threshold_temperature,
)
from .udw_state import (
    ModelParams,
    coeffs_to_density,
    delta_of_state,
    gamma_ratio,
    steady_state,
    steady_state_coeffs,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

SWEEP_HEADER = ("delta0", "omega", "temperature", "gamma", "msc")
EVOLVE_HEADER = ("tau", "trace", "delta", "min_eig", "dist_to_steady", "msc_numeric")


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _write_rows(path, header, rows) -> None:
    with open(path, "w", encoding="ascii", newline="") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(_fmt(x) for x in row) + "\n")


def _parse_range(text: str, name: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"{name} must look like START:STOP:STEP (got {text!r})")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"{name} must contain numbers (got {text!r})") from None
    return inclusive_range(start, stop, step)


def _parse_list(text: str, name: str) -> tuple[float, ...]:
    try:
        values = tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise ValueError(f"{name} must be a comma-separated list of numbers (got {text!r})") from None
    if not values:
        raise ValueError(f"{name} must be non-empty")
    return values


def _singlet() -> np.ndarray:
    psi = np.zeros(4, dtype=complex)
    psi[1] = 1.0 / math.sqrt(2.0)
    psi[2] = -1.0 / math.sqrt(2.0)
    return np.outer(psi, psi.conj())


def initial_state(name: str) -> np.ndarray:
    """Named initial states spanning the invariant range.

    singlet (Delta=-3), product00/product11 (Delta=1), mixed (Delta=0),
    werner:p = p*singlet + (1-p)*I/4 (Delta=-3p).
    """
    if name == "singlet":
        return _singlet()
    if name == "product00":
        return np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
    if name == "product11":
        return np.diag([0.0, 0.0, 0.0, 1.0]).astype(complex)
    if name == "mixed":
        return np.eye(4, dtype=complex) / 4.0
    if name.startswith("werner:"):
        try:
            p = float(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"werner parameter must be a number (got {name!r})") from None
        if not (0.0 <= p <= 1.0):
            raise ValueError(f"werner parameter must lie in [0, 1] (got {p!r})")
        return p * _singlet() + (1.0 - p) * np.eye(4, dtype=complex) / 4.0
    raise ValueError(
        f"unknown initial state {name!r}; choose singlet, product00, product11, mixed or werner:p"
    )


def cmd_msc(args) -> int:
    params = ModelParams(args.omega, args.temperature, args.delta0)
    coeffs = steady_state(params)
    closed = msc_closed_form(coeffs)
    record = {
        "delta0": params.delta0,
        "omega": params.omega,
        "temperature": params.temperature,
        "gamma": params.gamma,
        "msc": closed.value,
        "optimal_theta": closed.optimal_theta,
    }
    if args.numeric:
        numeric = msc_numeric(coeffs_to_density(coeffs))
        record["msc_numeric"] = numeric.value
        record["abs_difference"] = abs(numeric.value - closed.value)
    if args.json:
        print(json.dumps(record))
    else:
        for key, value in record.items():
            print(f"{key} = {_fmt(value)}")
    return EXIT_OK


def _sweep_worker(point):
    d, w, t = point
    return msc_point(d, w, t).astuple()


def cmd_sweep(args) -> int:
    spec = GridSpec(
        _parse_range(args.delta0_range, "--delta0-range"),
        _parse_list(args.omega_list, "--omega-list"),
        _parse_range(args.t_range, "--t-range"),
    )
    if args.parallel and args.parallel > 1:
        points = [
            (d, w, t)
            for d in spec.delta0_values
            for w in spec.omega_values
            for t in spec.temperature_values
        ]
        chunk = max(1, len(points) // (args.parallel * 8))
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            rows = list(pool.map(_sweep_worker, points, chunksize=chunk))
    else:
        rows = [r.astuple() for r in msc_grid(spec)]
    _write_rows(args.out, SWEEP_HEADER, rows)
    return EXIT_OK


def cmd_evolve(args) -> int:
    rho0 = initial_state(args.initial)
    params = thermal_params(
        args.omega, args.temperature, args.scale, gamma_zero=args.gamma0
    )
    traj = evolve(rho0, params, tau_max=args.tmax, dt=args.dt, store_stride=args.stride)
    delta0 = delta_of_state(rho0)
    target = coeffs_to_density(
        steady_state_coeffs(delta0, gamma_ratio(args.omega, args.temperature))
    )
    rows = []
    for tau, state in zip(traj.times, traj.states):
        report = validate_density(state)
        rows.append(
            (
                tau,
                float(np.trace(state).real),
                delta_of_state(state, validate=False),
                report.min_eigenvalue,
                trace_distance(state, target),
                msc_numeric(state, positivity_tol=1e-6).value,
            )
        )
    _write_rows(args.out, EVOLVE_HEADER, rows)
    return EXIT_OK


def _render_svg(which: str, panels, out_dir: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    for name, rows in panels.items():
        fig, ax = plt.subplots(figsize=(4.4, 3.3))
        if which == "fig1":
            d0s = list(dict.fromkeys(r.delta0 for r in rows))
            ts = list(dict.fromkeys(r.temperature for r in rows))
            grid = np.array([r.msc for r in rows]).reshape(len(d0s), len(ts))
            mesh = ax.pcolormesh(ts, d0s, grid, shading="auto")
            fig.colorbar(mesh, ax=ax, label="MSC")
            ax.set_xlabel("Unruh temperature T")
            ax.set_ylabel("initial invariant")
            ax.set_title(f"gap = {rows[0].omega:g}")
        else:
            for w in dict.fromkeys(r.omega for r in rows):
                sel = [r for r in rows if r.omega == w]
                ax.plot([r.temperature for r in sel], [r.msc for r in sel], label=f"gap {w:g}")
            ax.set_xlabel("Unruh temperature T")
            ax.set_ylabel("MSC")
            ax.set_title(f"initial invariant = {rows[0].delta0:g}")
            ax.legend()
        fig.tight_layout()
        fig.savefig(out_dir / f"{name}.svg")
        plt.close(fig)


def cmd_figures(args) -> int:
    which = f"fig{args.which}"
    omegas = _parse_list(args.omega_list, "--omega-list") if args.omega_list else None
    panels, metadata = figure_data(which, omegas)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, rows in panels.items():
        _write_rows(out_dir / f"{name}.csv", SWEEP_HEADER, (r.astuple() for r in rows))
    with open(out_dir / "metadata.json", "w", encoding="ascii") as f:
        json.dump(metadata, f, indent=2, sort_keys=True)
        f.write("\n")
    if args.svg:
        _render_svg(which, panels, out_dir)
    return EXIT_OK


def _run_checks():
    """Fast invariant suite; returns (name, ok, detail) triples."""
    results = []

    rng = np.random.default_rng(20260809)
    worst = 0.0
    for _ in range(40):
        d0 = rng.uniform(-3.0, 1.0)
        g = rng.uniform(0.02, 0.99)
        coeffs = steady_state_coeffs(d0, g)
        diff = abs(msc_numeric(coeffs_to_density(coeffs)).value - msc_closed_form(coeffs).value)
        worst = max(worst, diff)
    results.append(
        ("closed form vs numeric maximizer (40 samples)", worst <= 1e-6, f"max diff {worst:.2e}")
    )

    params = thermal_params(1.0, 1.0, 1.0)
    rho0 = initial_state("werner:0.5")
    gp = params.rates.gamma_plus
    traj = evolve(rho0, params, tau_max=5.0 / gp, dt=0.01 / gp, store_stride=10)
    d0 = delta_of_state(rho0)
    drift = max(abs(delta_of_state(s, validate=False) - d0) for s in traj.states)
    results.append(("invariant conservation along trajectory", drift <= 1e-8, f"max drift {drift:.2e}"))

    bad = 0
    for d0 in inclusive_range(-3.0, 1.0, 0.25):
        for g in inclusive_range(0.0, 1.0, 0.05):
            rho = coeffs_to_density(steady_state_coeffs(d0, g))
            if not validate_density(rho).ok:
                bad += 1
    results.append(("stationary family is positive on the grid", bad == 0, f"{bad} violations"))

    worst_gap = 0.0
    for d0 in (0.3, 0.7):
        for w in (1.0, 3.0):
            t_star = threshold_temperature(d0, w)
            report = monotonicity_report(d0, w, default_t_grid())
            gap = abs((report.t_min or math.nan) - t_star)
            worst_gap = max(worst_gap, gap)
    results.append(
        ("dip location matches analytic threshold", worst_gap <= 1e-4, f"max gap {worst_gap:.2e}")
    )

    coeffs = steady_state_coeffs(0.5, gamma_ratio(1.0, 1.0))
    best_povm = msc_random_povm(coeffs_to_density(coeffs), n_samples=300, rng=np.random.default_rng(7))
    closed = msc_closed_form(coeffs).value
    results.append(
        (
            "random POVM sampler (informational)",
            True,
            f"best sampled {best_povm:.6f} vs projector optimum {closed:.6f}",
        )
    )
    return results


def cmd_check(args) -> int:
    results = _run_checks()
    failed = 0
    for name, ok, detail in results:
        tag = "PASS" if ok else "FAIL"
        print(f"  [{tag}] {name}: {detail}")
        failed += 0 if ok else 1
    if failed:
        print(f"{failed} check(s) failed")
        return EXIT_CHECK_FAILED
    print("all checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udw-msc",
        description="Maximal steered coherence of two accelerated detectors in a thermal bath.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("msc", help="closed-form MSC at one parameter point")
    p.add_argument("--delta0", type=float, required=True, help="initial invariant in [-3, 1]")
    p.add_argument("--omega", type=float, required=True, help="detector energy gap (> 0)")
    p.add_argument("--temperature", type=float, required=True, help="Unruh temperature (> 0)")
    p.add_argument("--numeric", action="store_true", help="also run the numeric maximizer")
    p.add_argument("--json", action="store_true", help="emit one JSON record")
    p.set_defaults(func=cmd_msc)

    p = sub.add_parser("sweep", help="closed-form MSC over a parameter grid, written as CSV")
    p.add_argument("--delta0-range", required=True, metavar="A:B:STEP")
    p.add_argument("--t-range", required=True, metavar="A:B:STEP")
    p.add_argument("--omega-list", required=True, metavar="W1,W2,...")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--parallel", type=int, default=0, metavar="N", help="worker processes")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("evolve", help="integrate a named initial state and log diagnostics")
    p.add_argument(
        "--initial",
        required=True,
        help="singlet | product00 | product11 | mixed | werner:p",
    )
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--temperature", type=float, required=True)
    p.add_argument("--scale", type=float, default=1.0, help="overall rate scale (default 1)")
    p.add_argument("--gamma0", type=float, default=None, help="override the zero-frequency rate")
    p.add_argument("--tmax", type=float, default=None, help="integration span (default 40/gamma_plus)")
    p.add_argument("--dt", type=float, default=None, help="RK4 step (default 0.01/gamma_plus)")
    p.add_argument("--stride", type=int, default=10, help="store every k-th step (default 10)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("figures", help="emit panel CSVs (and optional SVGs) for the two figures")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--omega-list", default=None, metavar="W1,W2,...")
    p.add_argument("--svg", action="store_true", help="also render simple SVG plots")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("check", help="run the fast invariant suite")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
