"""Figure builders: P(theta) curve families and data-collapse scatters."""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .artifacts import (
    read_collapse_points,
    read_curve_csv,
    read_scaling_json,
    read_threshold_json,
)

FIGURE_KINDS = ("curves", "crossing-zoom", "collapse")

_MARKERS = ["o", "s", "^", "D", "v", "p", "*", "X", "<", ">", "h", "8"]


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: input artifact paths, figure kind, output image path."""

    inputs: tuple[str, ...]
    kind: str
    out: str
    threshold: str | None = None
    fit: str | None = None

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; expected {FIGURE_KINDS}")
        if not self.inputs:
            raise ValueError("no input files given")


def plot_curves(spec: FigureSpec):
    """Giant-component fraction versus normalized theta, one series per N.

    With a threshold JSON, a vertical marker is drawn at theta_T; the
    crossing-zoom kind narrows the view to the transition window around it.
    """
    curves = sorted((read_curve_csv(p) for p in spec.inputs), key=lambda c: c.n_nodes)
    threshold = read_threshold_json(spec.threshold) if spec.threshold else None

    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for i, curve in enumerate(curves):
        ax.errorbar(
            curve.theta,
            curve.p_mean,
            yerr=curve.p_stderr,
            fmt=_MARKERS[i % len(_MARKERS)] + "-",
            markersize=3.5,
            linewidth=1.1,
            capsize=2,
            label=curve.label,
        )
    if threshold is not None:
        theta_t = threshold["theta_T"]
        ax.axvline(theta_t, color="gray", linestyle="--", alpha=0.8,
                   label=rf"$\theta_T$ = {theta_t:.3f}")
    ax.set_xlabel(r"$(\pi/4)^{-1}\theta$")
    ax.set_ylabel(r"$P$")
    kinds = {c.kind for c in curves}
    protocols = {c.protocol.upper() for c in curves}
    ax.set_title(f"{'/'.join(sorted(protocols))} on {'/'.join(sorted(kinds))} lattice")
    if spec.kind == "crossing-zoom":
        center = threshold["theta_T"] if threshold else _crossing_guess(curves)
        half = 3 * threshold["uncertainty"] if threshold else 0.05
        ax.set_xlim(center - half, center + half)
        lo, hi = _window_band(curves, center - half, center + half)
        ax.set_ylim(lo, hi)
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(spec.out, dpi=150)
    return fig


def _crossing_guess(curves):
    # midpoint of the steepest curve as a fallback zoom center
    steepest = max(curves, key=lambda c: np.max(np.abs(np.diff(c.p_mean))))
    return float(np.interp(0.5, steepest.p_mean, steepest.theta))


def _window_band(curves, lo, hi):
    values = []
    for c in curves:
        mask = (c.theta >= lo) & (c.theta <= hi)
        values.extend(c.p_mean[mask])
    if not values:
        return 0.0, 1.0
    pad = 0.05 * (max(values) - min(values) or 1.0)
    return min(values) - pad, max(values) + pad


def plot_collapse(spec: FigureSpec):
    """Scatter of the transformed (x, y) cloud, one marker per (kind, N)."""
    if spec.fit is None:
        raise ValueError("collapse figures need the scaling-fit JSON (--fit)")
    fit = read_scaling_json(spec.fit)
    groups = read_collapse_points(spec.inputs[0])

    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for i, ((kind, n_nodes), pts) in enumerate(sorted(groups.items())):
        ax.scatter(
            pts[:, 0],
            pts[:, 1],
            s=14,
            marker=_MARKERS[i % len(_MARKERS)],
            alpha=0.75,
            label=f"{kind}, N = {n_nodes}",
        )
    ax.set_xlabel(r"$(c - c_{th})\,N^{1/d\nu}$")
    ax.set_ylabel(r"$P\,N^{\beta/d\nu}$")
    ax.set_title(
        rf"data collapse at $\nu$ = {fit['nu']:.3f}, $\beta$ = {fit['beta']:.3f}"
    )
    ax.legend(fontsize=7, ncols=2)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(spec.out, dpi=150)
    return fig
