"""Command-line driver.

Subcommands: `sweep` runs Monte Carlo percolation sweeps and writes one
curve CSV per lattice size; `threshold` estimates the crossing threshold
from curve files; `collapse` fits scaling exponents and dumps the
transformed point cloud; `paths` and `lattice` dump the shortest-path
table and edge list of a lattice. All theta values are in normalized
(pi/4)^-1 units. Exit codes: 0 success, 2 usage, 3 data/consistency
error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from . import analysis
from .entanglement import concurrence_of_theta
from .lattice import KINDS, build_lattice, write_edge_list
from .paths import all_pairs_paths, write_path_table
from .percolation import PROTOCOLS, read_curve, sweep, write_curve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_IO = 4

_SWEEP_DEFAULTS = {
    "lattice": None,
    "sizes": None,
    "protocol": "gcp",
    "theta_min": 0.0,
    "theta_max": 1.0,
    "points": 101,
    "ensembles": 1000,
    "seed": 0,
    "out": ".",
    "workers": None,
    "pair_sample": None,
}


@dataclass(frozen=True)
class RunConfig:
    """A validated sweep configuration."""

    lattice: str
    sizes: tuple[int, ...]
    protocol: str
    theta_min: float
    theta_max: float
    points: int
    ensembles: int
    seed: int
    out: str
    workers: int | None
    pair_sample: float | None

    def grid(self) -> np.ndarray:
        return np.linspace(self.theta_min, self.theta_max, self.points)


class UsageError(Exception):
    pass


def _parse_sizes(text):
    if isinstance(text, (list, tuple)):
        return tuple(int(s) for s in text)
    try:
        return tuple(int(part) for part in str(text).split(","))
    except ValueError:
        raise UsageError(f"cannot parse sizes {text!r}; expected e.g. 6,7,8") from None


def _load_sweep_config(args) -> RunConfig:
    merged = dict(_SWEEP_DEFAULTS)
    if args.config is not None:
        try:
            with open(args.config, "rb") as fh:
                merged.update(tomllib.load(fh))
        except tomllib.TOMLDecodeError as exc:
            raise UsageError(f"invalid config file {args.config}: {exc}") from exc
    for key in _SWEEP_DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value

    if merged["lattice"] not in KINDS:
        raise UsageError(f"--lattice must be one of {KINDS}")
    if merged["protocol"] not in PROTOCOLS:
        raise UsageError(f"--protocol must be one of {PROTOCOLS}")
    if merged["sizes"] is None:
        raise UsageError("no sizes given (flag --sizes or config key 'sizes')")
    sizes = _parse_sizes(merged["sizes"])
    if not sizes or min(sizes) < 2:
        raise UsageError("all sizes must be >= 2")
    if merged["points"] < 1:
        raise UsageError("--points must be >= 1")
    if not (0.0 <= merged["theta_min"] < merged["theta_max"] <= 1.0):
        raise UsageError("need 0 <= theta-min < theta-max <= 1")
    if merged["ensembles"] < 1:
        raise UsageError("--ensembles must be >= 1")
    if merged["seed"] < 0:
        raise UsageError("--seed must be >= 0")
    if merged["workers"] is not None and merged["workers"] < 1:
        raise UsageError("--workers must be >= 1")
    if merged["pair_sample"] is not None and not (0.0 < merged["pair_sample"] <= 1.0):
        raise UsageError("--pair-sample must be in (0, 1]")
    return RunConfig(
        lattice=merged["lattice"],
        sizes=sizes,
        protocol=merged["protocol"],
        theta_min=float(merged["theta_min"]),
        theta_max=float(merged["theta_max"]),
        points=int(merged["points"]),
        ensembles=int(merged["ensembles"]),
        seed=int(merged["seed"]),
        out=str(merged["out"]),
        workers=merged["workers"],
        pair_sample=merged["pair_sample"],
    )


def cmd_sweep(args) -> int:
    config = _load_sweep_config(args)
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    grid = config.grid()
    for size in config.sizes:
        lattice = build_lattice(config.lattice, size)
        table = all_pairs_paths(lattice) if config.protocol == "gcp" else None
        curve = sweep(
            lattice,
            config.protocol,
            grid,
            config.ensembles,
            config.seed,
            workers=config.workers,
            table=table,
            pair_sample=config.pair_sample,
        )
        path = out_dir / f"{config.protocol}_{config.lattice}_{size}.csv"
        write_curve(curve, path)
        print(
            f"wrote {path} (N={lattice.n_nodes}, {config.ensembles} ensembles,"
            f" {grid.size} grid points, seed {config.seed})"
        )
    return EXIT_OK


def cmd_threshold(args) -> int:
    curves = [read_curve(p) for p in args.inputs]
    estimate = analysis.crossing_threshold(curves)
    analysis.write_threshold_json(estimate, args.out)
    print(
        f"theta_T = {estimate.theta_t:.4f} +- {estimate.uncertainty:.4f}"
        f" (normalized theta, {len(estimate.crossings)} size pairs) -> {args.out}"
    )
    return EXIT_OK


def _default_c_th(curves) -> dict[str, float]:
    # Fix each lattice kind's threshold from its own size family first.
    per_kind: dict[str, float] = {}
    for kind in sorted({c.kind for c in curves}):
        family = [c for c in curves if c.kind == kind]
        estimate = analysis.crossing_threshold(family)
        per_kind[kind] = concurrence_of_theta(estimate.theta_t)
    return per_kind


def cmd_collapse(args) -> int:
    curves = [read_curve(p) for p in args.inputs]
    c_th = args.c_th if args.c_th is not None else _default_c_th(curves)
    if (args.nu is None) != (args.beta is None):
        raise UsageError("--nu and --beta must be given together")
    if args.nu is not None:
        cost = analysis.collapse_cost(curves, args.nu, args.beta, c_th)
        fit = analysis.ScalingFit(nu=args.nu, beta=args.beta, c_th=c_th, cost=cost)
        origin = "fixed exponents"
    else:
        fit = analysis.fit_exponents(curves, c_th)
        origin = "fitted"
    analysis.write_scaling_json(fit, args.out)
    cloud = args.cloud or str(Path(args.out).with_suffix("")) + "_points.csv"
    analysis.write_collapse_points(curves, fit, cloud)
    print(
        f"nu = {fit.nu:.4f}, beta = {fit.beta:.4f} ({origin}),"
        f" cost = {fit.cost:.3e} -> {args.out}, cloud -> {cloud}"
    )
    return EXIT_OK


def cmd_paths(args) -> int:
    lattice = build_lattice(args.lattice, args.size)
    table = all_pairs_paths(lattice)
    write_path_table(table, args.out)
    print(f"wrote {args.out} ({len(table)} pairs, N={lattice.n_nodes})")
    return EXIT_OK


def cmd_lattice(args) -> int:
    lattice = build_lattice(args.lattice, args.size)
    write_edge_list(lattice, args.out)
    print(f"wrote {args.out} (N={lattice.n_nodes}, {len(lattice.edges)} edges)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnetperc",
        description="Entanglement percolation sweeps and finite-size analysis "
        "on 2D lattice quantum networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run Monte Carlo sweeps, one CSV per size")
    p_sweep.add_argument("--lattice", choices=KINDS)
    p_sweep.add_argument("--sizes", help="comma-separated sizes, e.g. 6,7,8,9,10")
    p_sweep.add_argument("--protocol", choices=PROTOCOLS)
    p_sweep.add_argument("--theta-min", dest="theta_min", type=float)
    p_sweep.add_argument("--theta-max", dest="theta_max", type=float)
    p_sweep.add_argument("--points", type=int, help="grid points (default 101)")
    p_sweep.add_argument("--ensembles", type=int, help="ensembles per point (default 1000)")
    p_sweep.add_argument("--seed", type=int, help="master seed (default 0)")
    p_sweep.add_argument("--out", help="output directory (default .)")
    p_sweep.add_argument("--workers", type=int, help="worker threads (default: all cores)")
    p_sweep.add_argument(
        "--pair-sample",
        dest="pair_sample",
        type=float,
        help="optional fraction of distant pairs to keep (GCP only; default all)",
    )
    p_sweep.add_argument("--config", help="TOML file with the same keys; flags override")
    p_sweep.set_defaults(func=cmd_sweep)

    p_thr = sub.add_parser("threshold", help="crossing threshold from >= 2 curve files")
    p_thr.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="CSV")
    p_thr.add_argument("--out", required=True, help="output JSON path")
    p_thr.set_defaults(func=cmd_threshold)

    p_col = sub.add_parser("collapse", help="fit scaling exponents from >= 3 curve files")
    p_col.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="CSV")
    p_col.add_argument("--out", required=True, help="output JSON path")
    p_col.add_argument("--cloud", help="point-cloud CSV path (default: <out>_points.csv)")
    p_col.add_argument(
        "--c-th",
        dest="c_th",
        type=float,
        help="concurrence threshold (default: per-kind crossing estimate)",
    )
    p_col.add_argument("--nu", type=float, help="skip fitting and use this nu")
    p_col.add_argument("--beta", type=float, help="skip fitting and use this beta")
    p_col.set_defaults(func=cmd_collapse)

    p_paths = sub.add_parser("paths", help="dump the all-pairs shortest-path table")
    p_paths.add_argument("--lattice", choices=KINDS, required=True)
    p_paths.add_argument("--size", type=int, required=True)
    p_paths.add_argument("--out", required=True, help="output CSV path")
    p_paths.set_defaults(func=cmd_paths)

    p_lat = sub.add_parser("lattice", help="dump a lattice edge list")
    p_lat.add_argument("--lattice", choices=KINDS, required=True)
    p_lat.add_argument("--size", type=int, required=True)
    p_lat.add_argument("--out", required=True, help="output path")
    p_lat.set_defaults(func=cmd_lattice)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep" and args.sizes is None and args.config is None:
        parser.error("sweep needs --sizes or --config")
    if args.command == "threshold" and len(args.inputs) < 2:
        parser.error("threshold needs at least two curve files")
    if args.command == "collapse" and len(args.inputs) < 3:
        parser.error("collapse needs at least three curve files")
    if args.command in ("paths", "lattice") and args.size < 2:
        parser.error("--size must be >= 2")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
