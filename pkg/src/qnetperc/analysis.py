"""Finite-size analysis: threshold crossings and data collapse.

The threshold of a lattice family is read off from where the P(theta)
curves of different sizes intersect. The critical exponents come from
collapsing all curves onto one master curve: each point is mapped to

    x = (c - c_th) * N^(1/(d nu)),   y = P * N^(beta/(d nu)),   d = 2,

and the collapse quality is the mean squared deviation of every curve
from the piecewise-linear master formed by the other curves, restricted
to overlapping x ranges. Exponents are fitted by a coarse grid search
followed by Nelder-Mead refinement.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .percolation import PercolationCurve

DIMENSION = 2

_WINDOW_LOW = 0.1
_WINDOW_HIGH = 0.9


class NoCrossingError(ValueError):
    """The two curves never bracket each other inside the transition window."""


class DegenerateCrossingError(ValueError):
    """The two curves coincide inside the transition window."""


class InsufficientOverlapError(ValueError):
    """No transformed point falls inside any other curve's x range."""


class FitError(ValueError):
    """Exponent fitting failed or its input is degenerate."""


class CrossingPoint(NamedTuple):
    n_a: int
    n_b: int
    theta: float


@dataclass(frozen=True)
class ThresholdEstimate:
    """Percolation threshold in normalized-theta units."""

    theta_t: float
    uncertainty: float
    crossings: tuple[CrossingPoint, ...]


@dataclass(frozen=True)
class ScalingFit:
    """Fitted collapse exponents; c_th is a scalar or a per-kind mapping."""

    nu: float
    beta: float
    c_th: float | dict[str, float]
    cost: float
    dimension: int = DIMENSION


def _pair_crossings(theta, p_a, p_b, window):
    diff = p_a - p_b
    if not np.any(window):
        raise NoCrossingError("transition window is empty")
    if np.all(diff[window] == 0.0):
        raise DegenerateCrossingError("curves are identical inside the window")
    found = []
    for k in range(len(theta) - 1):
        if not (window[k] or window[k + 1]):
            continue
        a, b = diff[k], diff[k + 1]
        if a == 0.0:
            if k == 0 or diff[k - 1] != 0.0:  # report each zero run once
                found.append(theta[k])
        elif a * b < 0.0:
            found.append(theta[k] + a * (theta[k + 1] - theta[k]) / (a - b))
    if window[-1] and diff[-1] == 0.0 and diff[-2] != 0.0:
        found.append(theta[-1])
    if not found:
        raise NoCrossingError("curves do not cross inside the transition window")
    return float(np.median(found))


def crossing_threshold(curves: list[PercolationCurve]) -> ThresholdEstimate:
    """Threshold from the pairwise crossings of same-kind curves.

    Curves must share the lattice kind and the theta grid and carry
    distinct node counts. The crossing of each size pair is located on
    the linear interpolants, restricted to the window where at least one
    curve satisfies 0.1 < P < 0.9; the estimate is the mean of the
    pairwise crossings and the uncertainty is the larger of their spread
    and half the grid spacing.
    """
    if len(curves) < 2:
        raise ValueError("need at least two curves to locate a crossing")
    kinds = {c.kind for c in curves}
    if len(kinds) != 1:
        raise ValueError(f"curves mix lattice kinds {sorted(kinds)}")
    sizes = [c.n_nodes for c in curves]
    if len(set(sizes)) != len(sizes):
        raise ValueError("curves must have pairwise distinct node counts")
    theta = curves[0].theta
    if theta.size < 2:
        raise ValueError("crossing location needs at least two grid points")
    for c in curves[1:]:
        if c.theta.shape != theta.shape or not np.array_equal(c.theta, theta):
            raise ValueError("curves must share the same theta grid")

    ordered = sorted(curves, key=lambda c: c.n_nodes)
    window = np.zeros(theta.shape, bool)
    for c in ordered:
        window |= (c.p_mean > _WINDOW_LOW) & (c.p_mean < _WINDOW_HIGH)

    crossings = []
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            t_cross = _pair_crossings(
                theta, ordered[i].p_mean, ordered[j].p_mean, window
            )
            crossings.append(
                CrossingPoint(ordered[i].n_nodes, ordered[j].n_nodes, t_cross)
            )
    values = np.array([c.theta for c in crossings])
    half_spacing = float(np.max(np.diff(theta))) / 2.0
    return ThresholdEstimate(
        theta_t=float(values.mean()),
        uncertainty=float(max(values.std(), half_spacing)),
        crossings=tuple(crossings),
    )


def _resolve_c_th(c_th, kind: str) -> float:
    if isinstance(c_th, dict):
        try:
            return c_th[kind]
        except KeyError:
            raise ValueError(f"no c_th given for lattice kind {kind!r}") from None
    return float(c_th)


def transform_curves(curves, nu: float, beta: float, c_th):
    """Collapse coordinates (x, y) per curve; c_th is a scalar or kind map."""
    if nu <= 0.0:
        raise ValueError(f"nu must be positive, got {nu}")
    out = []
    for curve in curves:
        c = np.sin(curve.theta * (np.pi / 2.0))  # vectorized concurrence_of_theta
        scale = float(curve.n_nodes) ** (1.0 / (DIMENSION * nu))
        x = (c - _resolve_c_th(c_th, curve.kind)) * scale
        y = curve.p_mean * float(curve.n_nodes) ** (beta / (DIMENSION * nu))
        out.append((x, y))
    return out


def collapse_cost(curves, nu: float, beta: float, c_th) -> float:
    """Mean squared deviation of each curve from the others' master curve.

    Every transformed point of curve i is compared against the linear
    interpolation of each other same-kind curve that spans its x value;
    deviations are taken from the mean of those interpolants. Only
    points in the transition window 0.1 < P < 0.9 enter: outside it the
    order parameter saturates (at 1 above, at 1/N below) and carries no
    scaling information. Curves of different lattice kinds are never
    compared directly, since the scaling function's amplitude is not
    universal; the exponents are shared, which is what pooling the
    kinds into one cost tests. Points outside every master's range are
    skipped; if nothing overlaps at all the collapse is meaningless and
    InsufficientOverlapError is raised.
    """
    points = transform_curves(curves, nu, beta, c_th)
    if len(points) == 1:
        return 0.0
    windowed = []
    for curve, (x, y) in zip(curves, points):
        keep = (curve.p_mean > _WINDOW_LOW) & (curve.p_mean < _WINDOW_HIGH)
        windowed.append((curve.kind, x[keep], y[keep]))
    total = 0.0
    n_used = 0
    for i, (kind_i, x_i, y_i) in enumerate(windowed):
        if x_i.size == 0:
            continue
        master = np.zeros_like(x_i)
        hits = np.zeros_like(x_i)
        for k, (kind_k, x_k, y_k) in enumerate(windowed):
            if k == i or kind_k != kind_i or x_k.size < 2:
                continue
            inside = (x_i >= x_k[0]) & (x_i <= x_k[-1])
            master += np.where(inside, np.interp(x_i, x_k, y_k), 0.0)
            hits += inside
        used = hits > 0
        if np.any(used):
            residual = y_i[used] - master[used] / hits[used]
            total += float(np.dot(residual, residual))
            n_used += int(used.sum())
    if n_used == 0:
        raise InsufficientOverlapError(
            "no transformed point overlaps another same-kind curve's x range"
        )
    return total / n_used


def fit_exponents(
    curves,
    c_th,
    *,
    optimize_c_th: bool = False,
    nu_grid=(0.8, 2.0, 0.02),
    beta_grid=(0.0, 0.4, 0.005),
) -> ScalingFit:
    """Fit (nu, beta) by grid search plus Nelder-Mead refinement.

    Requires at least three curves spanning at least two node counts;
    `c_th` is a concurrence threshold, either one scalar or a mapping
    from lattice kind to scalar. With `optimize_c_th` the refinement
    stage also adjusts the threshold(s), seeded from the given values
    (the joint fit; crossings-derived thresholds stay the default).
    """
    if len(curves) < 3:
        raise FitError("need at least three curves to fit exponents")
    if len({c.n_nodes for c in curves}) < 2:
        raise FitError("curves must span more than one node count")

    kinds = sorted(c_th) if isinstance(c_th, dict) else None

    def unpack(params):
        if not optimize_c_th:
            return params[0], params[1], c_th
        if kinds is None:
            return params[0], params[1], float(params[2])
        return params[0], params[1], {k: float(v) for k, v in zip(kinds, params[2:])}

    def objective(params):
        nu, beta, thresholds = unpack(params)
        values = thresholds.values() if isinstance(thresholds, dict) else [thresholds]
        if nu <= 0.0 or beta < 0.0 or any(not 0.0 < v < 1.0 for v in values):
            return np.inf
        try:
            return collapse_cost(curves, nu, beta, thresholds)
        except InsufficientOverlapError:
            return np.inf

    nu_values = np.arange(nu_grid[0], nu_grid[1] + nu_grid[2] / 2, nu_grid[2])
    beta_values = np.arange(beta_grid[0], beta_grid[1] + beta_grid[2] / 2, beta_grid[2])
    best = (np.inf, nu_values[0], beta_values[0])
    for nu in nu_values:
        for beta in beta_values:
            try:
                cost = collapse_cost(curves, nu, beta, c_th)
            except InsufficientOverlapError:
                continue
            if cost < best[0]:
                best = (cost, nu, beta)
    if not np.isfinite(best[0]):
        raise FitError("collapse cost is not finite anywhere on the search grid")

    start = [best[1], best[2]]
    if optimize_c_th:
        start += [c_th[k] for k in kinds] if kinds is not None else [float(c_th)]
    result = minimize(
        objective,
        start,
        method="Nelder-Mead",
        options={"xatol": 1e-4, "fatol": 1e-12, "maxiter": 2000 * len(start)},
    )
    nu, beta, thresholds = unpack(result.x)
    cost = float(result.fun)
    if not np.isfinite(cost) or cost > best[0]:
        nu, beta, thresholds, cost = best[1], best[2], c_th, best[0]
    return ScalingFit(nu=float(nu), beta=float(beta), c_th=thresholds, cost=cost)


def write_threshold_json(estimate: ThresholdEstimate, path) -> None:
    payload = {
        "theta_T": estimate.theta_t,
        "uncertainty": estimate.uncertainty,
        "crossings": [
            {"n_a": c.n_a, "n_b": c.n_b, "theta": c.theta} for c in estimate.crossings
        ],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def read_threshold_json(path) -> ThresholdEstimate:
    with open(path) as fh:
        payload = json.load(fh)
    return ThresholdEstimate(
        theta_t=payload["theta_T"],
        uncertainty=payload["uncertainty"],
        crossings=tuple(
            CrossingPoint(c["n_a"], c["n_b"], c["theta"]) for c in payload["crossings"]
        ),
    )


def write_scaling_json(fit: ScalingFit, path) -> None:
    payload = {"nu": fit.nu, "beta": fit.beta, "c_th": fit.c_th, "cost": fit.cost}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def read_scaling_json(path) -> ScalingFit:
    with open(path) as fh:
        payload = json.load(fh)
    return ScalingFit(
        nu=payload["nu"], beta=payload["beta"], c_th=payload["c_th"], cost=payload["cost"]
    )


def write_collapse_points(curves, fit: ScalingFit, path) -> None:
    """Dump the transformed (x, y) cloud, one row per curve point."""
    points = transform_curves(curves, fit.nu, fit.beta, fit.c_th)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["lattice", "N", "x", "y"])
        for curve, (x, y) in zip(curves, points):
            for xi, yi in zip(x, y):
                writer.writerow([curve.kind, curve.n_nodes, repr(float(xi)), repr(float(yi))])
