"""Shortest-path length and count for every node pair of a lattice.

Square and triangular lattices admit closed-form answers; the triangular
formulas split into three cases depending on whether the pair can ride
the up-right diagonals. Hexagonal lattices (and cross-checks for the
other two) use breadth-first counting over the shortest-path DAG.

Counts are exact integers. Anything that would not fit in a signed
64-bit word raises OverflowError instead of wrapping; the largest count
needed at the simulated sizes is C(18, 9) = 48620.
"""

from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass
from math import comb
from typing import NamedTuple

from .lattice import Lattice

INT64_MAX = 2**63 - 1


class PathSummary(NamedTuple):
    """Shortest-path length (edge count) and number of distinct shortest paths."""

    length: int
    count: int


def _checked_binomial(n: int, k: int) -> int:
    value = comb(n, k)
    if value > INT64_MAX:
        raise OverflowError(
            f"shortest-path count C({n}, {k}) = {value} exceeds 64-bit range"
        )
    return value


def _check_on_grid(pt, size):
    x, y = pt
    if x < 0 or y < 0:
        raise ValueError(f"coordinate {pt} is negative")
    if size is not None and (x >= size or y >= size):
        raise ValueError(f"coordinate {pt} lies outside an L={size} lattice")


def shortest_square(s, t, size: int | None = None) -> PathSummary:
    """Closed-form shortest paths between two square-lattice coordinates.

    Length is the Manhattan distance; the count is the binomial
    coefficient C(dx + dy, dx). When `size` is given, coordinates are
    validated against the L x L grid.
    """
    _check_on_grid(s, size)
    _check_on_grid(t, size)
    dx = abs(s[0] - t[0])
    dy = abs(s[1] - t[1])
    if dx == 0 and dy == 0:
        return PathSummary(0, 1)
    return PathSummary(dx + dy, _checked_binomial(dx + dy, dx))


def shortest_triangular(s, t, size: int | None = None) -> PathSummary:
    """Closed-form shortest paths on the square-plus-diagonals lattice.

    After reordering so that x_s <= x_t, three cases apply:

    * y_s >= y_t: the diagonals cannot help, square-lattice formulas hold.
    * y_s < y_t and dx == dy: the single all-diagonal path, length dx.
    * y_s < y_t and dx != dy: min(dx, dy) diagonal steps plus
      |dx - dy| axis steps interleave freely, so length is max(dx, dy)
      and the count is C(length, min(dx, dy)).
    """
    _check_on_grid(s, size)
    _check_on_grid(t, size)
    if s[0] > t[0]:
        s, t = t, s
    dx = abs(s[0] - t[0])
    dy = abs(s[1] - t[1])
    if dx == 0 and dy == 0:
        return PathSummary(0, 1)
    if s[1] >= t[1]:
        return PathSummary(dx + dy, _checked_binomial(dx + dy, dx))
    if dx == dy:
        return PathSummary(dx, 1)
    diag = min(dx, dy)
    length = diag + abs(dx - dy)
    return PathSummary(length, _checked_binomial(length, diag))


def bfs_path_counts(lattice: Lattice, source: int) -> dict[int, PathSummary]:
    """Breadth-first shortest-path lengths and counts from one source node.

    Counts follow the usual DAG dynamic program: count(source) = 1 and
    count(v) = sum of count(u) over predecessors u with dist(u) + 1 =
    dist(v). Works on any of the three lattices; unit edge weights make
    BFS equivalent to Dijkstra here.
    """
    if not 0 <= source < lattice.n_nodes:
        raise ValueError(f"source {source} not on lattice with N={lattice.n_nodes}")
    adjacency = lattice.adjacency
    dist = {source: 0}
    count = {source: 1}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        cu = count[u]
        for v in adjacency[u]:
            if v not in dist:
                dist[v] = du + 1
                count[v] = cu
                queue.append(v)
            elif dist[v] == du + 1:
                count[v] += cu
    out = {}
    for v, d in dist.items():
        c = count[v]
        if c > INT64_MAX:
            raise OverflowError(f"shortest-path count {c} exceeds 64-bit range")
        out[v] = PathSummary(d, c)
    return out


@dataclass(frozen=True)
class PathTable:
    """PathSummary for every unordered node pair of one lattice."""

    kind: str
    size: int
    n_nodes: int
    summaries: dict[tuple[int, int], PathSummary]

    def get(self, u: int, v: int) -> PathSummary:
        if u == v:
            raise KeyError("self-pairs are not stored in a PathTable")
        if u > v:
            u, v = v, u
        return self.summaries[(u, v)]

    def __len__(self) -> int:
        return len(self.summaries)


def all_pairs_paths(lattice: Lattice) -> PathTable:
    """Shortest-path table for all N(N-1)/2 unordered pairs.

    Uses the analytic formulas for square and triangular lattices and
    per-source BFS counting for hexagonal ones.
    """
    n = lattice.n_nodes
    summaries: dict[tuple[int, int], PathSummary] = {}
    if lattice.kind in ("square", "triangular"):
        formula = shortest_square if lattice.kind == "square" else shortest_triangular
        coords = lattice.coords
        for u in range(n):
            cu = coords[u]
            for v in range(u + 1, n):
                summaries[(u, v)] = formula(cu, coords[v], size=lattice.size)
    else:
        for u in range(n):
            per_source = bfs_path_counts(lattice, u)
            for v, summary in per_source.items():
                if v > u:
                    summaries[(u, v)] = summary
    return PathTable(
        kind=lattice.kind, size=lattice.size, n_nodes=n, summaries=summaries
    )


def write_path_table(table: PathTable, path) -> None:
    """Dump a PathTable as CSV with columns u, v, l, n."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["u", "v", "l", "n"])
        for (u, v) in sorted(table.summaries):
            summary = table.summaries[(u, v)]
            writer.writerow([u, v, summary.length, summary.count])
