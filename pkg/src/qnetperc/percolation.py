"""Monte Carlo percolation engine.

For a lattice and a normalized angle t, the protocol determines a set of
probabilistic edges: GCP assigns every unordered node pair the singlet
conversion probability of its distilled shortest-path link, CEP keeps
only the physical lattice edges at the direct conversion probability.
Each ensemble member samples every edge independently, and the order
parameter is the giant-component fraction f_gc = s_max / N, computed by
union-find (path compression + union by size).

Reproducibility: the draws for grid point i, ensemble member j come from
a counter-based Philox stream keyed by (master_seed, i, j), so a sweep
is bit-identical for a fixed seed no matter how many workers run it.
The pair list always starts with the physical lattice edges, which makes
GCP and CEP runs at equal seeds share those edges' uniforms draw for
draw; CEP successes are then a subset of GCP successes sample by sample.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from .entanglement import (
    concurrence_of_theta,
    gcp_pair_concurrence,
    singlet_prob_of_concurrence,
    singlet_prob_of_theta,
)
from .lattice import Lattice
from .paths import PathSummary, PathTable, all_pairs_paths

PROTOCOLS = ("gcp", "cep")

_ENSEMBLE_CHUNK = 256


@njit(cache=True, nogil=True)
def _uf_find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True, nogil=True)
def _largest_component(n_nodes, edge_u, edge_v):
    parent = np.arange(n_nodes)
    size = np.ones(n_nodes, np.int64)
    best = 1
    for k in range(edge_u.shape[0]):
        a = _uf_find(parent, edge_u[k])
        b = _uf_find(parent, edge_v[k])
        if a != b:
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            if size[a] > best:
                best = size[a]
    return best


@njit(cache=True, nogil=True)
def _giant_fraction_batch(n_nodes, edge_u, edge_v, probs, uniforms, out):
    parent = np.empty(n_nodes, np.int64)
    size = np.empty(n_nodes, np.int64)
    for e in range(uniforms.shape[0]):
        for i in range(n_nodes):
            parent[i] = i
            size[i] = 1
        best = 1
        for k in range(edge_u.shape[0]):
            if uniforms[e, k] < probs[k]:
                a = _uf_find(parent, edge_u[k])
                b = _uf_find(parent, edge_v[k])
                if a != b:
                    if size[a] < size[b]:
                        a, b = b, a
                    parent[b] = a
                    size[a] += size[b]
                    if size[a] > best:
                        best = size[a]
        out[e] = best / n_nodes


def giant_fraction(n_nodes: int, edges) -> float:
    """Fraction of nodes in the largest connected component.

    `edges` is any sequence of (u, v) node-id pairs; isolated nodes count
    as components of size one, so the result is always >= 1/n_nodes.
    """
    if n_nodes < 1:
        raise ValueError("n_nodes must be >= 1")
    pairs = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges)
    if pairs.size == 0:
        return 1.0 / n_nodes
    pairs = pairs.reshape(-1, 2).astype(np.int64)
    if pairs.min() < 0 or pairs.max() >= n_nodes:
        raise ValueError("edge endpoints must be node ids in [0, n_nodes)")
    best = _largest_component(n_nodes, np.ascontiguousarray(pairs[:, 0]),
                              np.ascontiguousarray(pairs[:, 1]))
    return best / n_nodes


@dataclass(frozen=True)
class ProbabilisticEdgeSet:
    """Sampling targets for one (lattice, theta, protocol) triple.

    GCP holds all N(N-1)/2 unordered pairs, physical lattice edges first;
    CEP holds exactly the lattice edges, all at the same probability.
    """

    protocol: str
    n_nodes: int
    edge_u: np.ndarray
    edge_v: np.ndarray
    probs: np.ndarray

    def __len__(self) -> int:
        return len(self.probs)


class _PairSystem:
    """Pair endpoints plus (length, count) group index, built once per sweep."""

    def __init__(self, lattice: Lattice, table: PathTable | None, protocol: str):
        if protocol not in PROTOCOLS:
            raise ValueError(f"unknown protocol {protocol!r}; expected one of {PROTOCOLS}")
        self.protocol = protocol
        self.n_nodes = lattice.n_nodes
        if protocol == "cep":
            u = np.fromiter((e[0] for e in lattice.edges), np.int64)
            v = np.fromiter((e[1] for e in lattice.edges), np.int64)
            self.edge_u, self.edge_v = u, v
            self.group_keys = [PathSummary(1, 1)]
            self.group_index = np.zeros(len(u), np.intp)
            self.n_direct = len(u)
            return
        if table is None:
            table = all_pairs_paths(lattice)
        if (table.kind, table.size, table.n_nodes) != (
            lattice.kind,
            lattice.size,
            lattice.n_nodes,
        ):
            raise ValueError(
                f"path table for {table.kind} size={table.size} does not match "
                f"lattice {lattice.kind} size={lattice.size}"
            )
        lattice_edges = [(u, v) if u < v else (v, u) for u, v in lattice.edges]
        edge_set = set(lattice_edges)
        ordered = lattice_edges + [p for p in sorted(table.summaries) if p not in edge_set]
        groups: dict[PathSummary, int] = {}
        index = np.empty(len(ordered), np.intp)
        for k, pair in enumerate(ordered):
            summary = table.summaries[pair]
            index[k] = groups.setdefault(summary, len(groups))
        self.edge_u = np.fromiter((p[0] for p in ordered), np.int64)
        self.edge_v = np.fromiter((p[1] for p in ordered), np.int64)
        self.group_keys = list(groups)
        self.group_index = index
        self.n_direct = len(lattice_edges)

    def probs_at(self, theta_norm: float) -> np.ndarray:
        """Per-pair success probabilities at one grid point."""
        direct = singlet_prob_of_theta(theta_norm)
        if self.protocol == "cep":
            return np.full(len(self.group_index), direct)
        c_edge = concurrence_of_theta(theta_norm)
        per_group = np.empty(len(self.group_keys))
        for g, summary in enumerate(self.group_keys):
            if summary.length == 1:
                # direct links keep the plain conversion probability, exactly
                per_group[g] = direct
            else:
                per_group[g] = singlet_prob_of_concurrence(
                    gcp_pair_concurrence(c_edge, summary)
                )
        return per_group[self.group_index]

    def subsample(self, fraction: float, master_seed: int) -> None:
        """Keep lattice edges plus a random fraction of the distant pairs."""
        if not 0.0 < fraction <= 1.0:
            raise ValueError(f"pair-sample fraction must be in (0, 1], got {fraction}")
        if self.protocol == "cep" or fraction == 1.0:
            return
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=master_seed, spawn_key=(0,)))
        )
        keep = rng.random(len(self.group_index) - self.n_direct) < fraction
        mask = np.concatenate([np.ones(self.n_direct, bool), keep])
        self.edge_u = self.edge_u[mask]
        self.edge_v = self.edge_v[mask]
        self.group_index = self.group_index[mask]


def build_edge_probs(
    lattice: Lattice,
    table: PathTable | None,
    theta_norm: float,
    protocol: str,
) -> ProbabilisticEdgeSet:
    """Probabilistic edge set for one lattice, angle, and protocol.

    For GCP the table must describe the same lattice (it is computed on
    the fly when omitted); CEP ignores it.
    """
    system = _PairSystem(lattice, table, protocol)
    return ProbabilisticEdgeSet(
        protocol=protocol,
        n_nodes=system.n_nodes,
        edge_u=system.edge_u,
        edge_v=system.edge_v,
        probs=system.probs_at(theta_norm),
    )


@dataclass(frozen=True)
class PercolationCurve:
    """Sampled giant-component fraction P(theta) for one lattice and size."""

    kind: str
    n_nodes: int
    protocol: str
    theta: np.ndarray
    p_mean: np.ndarray
    p_stderr: np.ndarray
    ensembles: int
    seed: int

    def __post_init__(self):
        theta = np.asarray(self.theta, float)
        if theta.ndim != 1 or theta.size == 0:
            raise ValueError("theta grid must be a nonempty 1D array")
        if np.any(theta < 0.0) or np.any(theta > 1.0):
            raise ValueError("theta grid must lie within [0, 1]")
        if np.any(np.diff(theta) <= 0.0):
            raise ValueError("theta grid must be strictly increasing")
        p_mean = np.asarray(self.p_mean, float)
        p_stderr = np.asarray(self.p_stderr, float)
        if p_mean.shape != theta.shape or p_stderr.shape != theta.shape:
            raise ValueError("theta, p_mean and p_stderr must have equal length")
        if np.any(p_mean < 0.0) or np.any(p_mean > 1.0):
            raise ValueError("P values must lie in [0, 1]")
        if np.any(p_stderr < 0.0):
            raise ValueError("standard errors must be >= 0")
        for name, arr in (("theta", theta), ("p_mean", p_mean), ("p_stderr", p_stderr)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def _cell_stream(master_seed: int, theta_index: int, ensemble_index: int):
    # 2-tuple spawn keys cannot collide with the 1-tuple pair-sampling stream
    seq = np.random.SeedSequence(
        entropy=master_seed, spawn_key=(theta_index, ensemble_index)
    )
    return np.random.Generator(np.random.Philox(seq))


def sweep(
    lattice: Lattice,
    protocol: str,
    grid,
    ensembles: int,
    master_seed: int,
    *,
    workers: int | None = None,
    table: PathTable | None = None,
    pair_sample: float | None = None,
) -> PercolationCurve:
    """Sample the percolation curve P(theta) over a grid of angles.

    Parameters
    ----------
    lattice, protocol : the network and the protocol ("gcp" or "cep").
    grid : strictly increasing theta values in [0, 1].
    ensembles : independent realizations per grid point (>= 1).
    master_seed : non-negative integer; fixes every draw of the sweep.
    workers : thread count (default: machine parallelism). Results are
        identical for every worker count.
    table : optional precomputed PathTable for GCP lattices.
    pair_sample : optional fraction in (0, 1] of distant pairs to keep
        (GCP only); physical edges are always kept. Default: all pairs.
    """
    grid = np.asarray(grid, float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("theta grid must be a nonempty 1D array")
    if np.any(grid < 0.0) or np.any(grid > 1.0):
        raise ValueError("theta grid must lie within [0, 1]")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("theta grid must be strictly increasing")
    if ensembles < 1:
        raise ValueError(f"ensemble count must be >= 1, got {ensembles}")
    if master_seed < 0:
        raise ValueError(f"master seed must be >= 0, got {master_seed}")

    system = _PairSystem(lattice, table, protocol)
    if pair_sample is not None:
        system.subsample(pair_sample, master_seed)
    prob_columns = [system.probs_at(t) for t in grid]
    n_nodes = system.n_nodes
    edge_u, edge_v = system.edge_u, system.edge_v
    n_pairs = len(edge_u)

    cells = [
        (ti, start, min(start + _ENSEMBLE_CHUNK, ensembles))
        for ti in range(grid.size)
        for start in range(0, ensembles, _ENSEMBLE_CHUNK)
    ]

    def run_cell(cell):
        ti, start, stop = cell
        uniforms = np.empty((stop - start, n_pairs))
        for j in range(start, stop):
            uniforms[j - start] = _cell_stream(master_seed, ti, j).random(n_pairs)
        out = np.empty(stop - start)
        _giant_fraction_batch(n_nodes, edge_u, edge_v, prob_columns[ti], uniforms, out)
        return out

    samples = np.empty((grid.size, ensembles))
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1:
        for cell, out in zip(cells, map(run_cell, cells)):
            samples[cell[0], cell[1]:cell[2]] = out
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for cell, out in zip(cells, pool.map(run_cell, cells)):
                samples[cell[0], cell[1]:cell[2]] = out

    p_mean = samples.mean(axis=1)
    if ensembles > 1:
        p_stderr = samples.std(axis=1, ddof=1) / np.sqrt(ensembles)
    else:
        p_stderr = np.zeros(grid.size)
    assert np.all(samples >= 1.0 / n_nodes) and np.all(samples <= 1.0)
    return PercolationCurve(
        kind=lattice.kind,
        n_nodes=n_nodes,
        protocol=protocol,
        theta=grid,
        p_mean=p_mean,
        p_stderr=p_stderr,
        ensembles=ensembles,
        seed=master_seed,
    )


_CURVE_COLUMNS = [
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


def write_curve(curve: PercolationCurve, path) -> None:
    """Write a curve as CSV; floats use repr so the round trip is lossless."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CURVE_COLUMNS)
        for t, p, se in zip(curve.theta, curve.p_mean, curve.p_stderr):
            writer.writerow(
                [
                    curve.kind,
                    curve.n_nodes,
                    repr(float(t)),
                    repr(concurrence_of_theta(float(t))),
                    repr(float(p)),
                    repr(float(se)),
                    curve.ensembles,
                    curve.seed,
                    curve.protocol,
                ]
            )


def read_curve(path) -> PercolationCurve:
    """Parse a curve CSV written by `write_curve`."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != _CURVE_COLUMNS:
            raise ValueError(f"{path}: unexpected columns {reader.fieldnames}")
        rows = list(reader)
    if not rows:
        raise ValueError(f"{path}: empty curve file")
    meta = {
        (row["lattice"], int(row["N"]), int(row["ensembles"]), int(row["seed"]), row["protocol"])
        for row in rows
    }
    if len(meta) != 1:
        raise ValueError(f"{path}: inconsistent curve metadata")
    kind, n_nodes, ensembles, seed, protocol = next(iter(meta))
    return PercolationCurve(
        kind=kind,
        n_nodes=n_nodes,
        protocol=protocol,
        theta=np.array([float(r["theta_norm"]) for r in rows]),
        p_mean=np.array([float(r["P_mean"]) for r in rows]),
        p_stderr=np.array([float(r["P_stderr"]) for r in rows]),
        ensembles=ensembles,
        seed=seed,
    )
