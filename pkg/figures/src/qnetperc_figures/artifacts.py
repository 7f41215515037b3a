"""Readers for the CSV/JSON artifacts the qnetperc CLI emits.

These plots are pure views: everything numeric (curve statistics,
thresholds, fitted exponents, transformed collapse coordinates) is read
from files, never recomputed here.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

CURVE_COLUMNS = [
    "lattice",
    "N",
    "theta_norm",
    "c",
    "P_mean",
    "P_stderr",
    "ensembles",
    "seed",
    "protocol",
]


@dataclass(frozen=True)
class CurveData:
    kind: str
    n_nodes: int
    protocol: str
    theta: np.ndarray
    p_mean: np.ndarray
    p_stderr: np.ndarray

    @property
    def label(self) -> str:
        return f"N = {self.n_nodes}"


def read_curve_csv(path) -> CurveData:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CURVE_COLUMNS:
            raise ValueError(f"{path}: not a curve file (columns {reader.fieldnames})")
        rows = list(reader)
    if not rows:
        raise ValueError(f"{path}: empty curve file")
    kinds = {r["lattice"] for r in rows}
    sizes = {r["N"] for r in rows}
    if len(kinds) != 1 or len(sizes) != 1:
        raise ValueError(f"{path}: mixed curve metadata")
    return CurveData(
        kind=rows[0]["lattice"],
        n_nodes=int(rows[0]["N"]),
        protocol=rows[0]["protocol"],
        theta=np.array([float(r["theta_norm"]) for r in rows]),
        p_mean=np.array([float(r["P_mean"]) for r in rows]),
        p_stderr=np.array([float(r["P_stderr"]) for r in rows]),
    )


def read_threshold_json(path) -> dict:
    with open(path) as fh:
        payload = json.load(fh)
    for key in ("theta_T", "uncertainty"):
        if key not in payload:
            raise ValueError(f"{path}: missing key {key!r} in threshold file")
    return payload


def read_scaling_json(path) -> dict:
    with open(path) as fh:
        payload = json.load(fh)
    for key in ("nu", "beta", "cost"):
        if key not in payload:
            raise ValueError(f"{path}: missing key {key!r} in scaling-fit file")
    return payload


def read_collapse_points(path):
    """Point cloud rows grouped by (lattice kind, N), insertion ordered."""
    groups: dict[tuple[str, int], list[tuple[float, float]]] = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["lattice", "N", "x", "y"]:
            raise ValueError(f"{path}: not a collapse point cloud")
        for row in reader:
            key = (row["lattice"], int(row["N"]))
            groups.setdefault(key, []).append((float(row["x"]), float(row["y"])))
    if not groups:
        raise ValueError(f"{path}: empty point cloud")
    return {key: np.array(pts) for key, pts in groups.items()}
