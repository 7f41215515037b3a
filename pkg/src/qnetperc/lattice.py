"""Construction of the three 2D lattices used by the simulator.

Square and triangular lattices live on an L x L integer grid; the
triangular lattice is the square one plus an up-right diagonal per unit
cell. The hexagonal (honeycomb) lattice is a k x k patch of hexagonal
cells in a brick-wall integer embedding, which gives N = 2k^2 + 4k nodes.
All constructions are deterministic: identical arguments produce
identical node and edge orderings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

KINDS = ("square", "triangular", "hexagonal")


@dataclass(frozen=True)
class Lattice:
    """An immutable 2D lattice.

    Attributes
    ----------
    kind : str
        One of ``square``, ``triangular``, ``hexagonal``.
    size : int
        Side length L (square/triangular) or cell count k (hexagonal).
    coords : tuple of (x, y)
        Integer coordinates, indexed by dense node id.
    edges : tuple of (u, v)
        Unordered node-id pairs with u < v; no duplicates, no self loops.
    """

    kind: str
    size: int
    coords: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def n_nodes(self) -> int:
        return len(self.coords)

    @cached_property
    def coord_index(self) -> dict[tuple[int, int], int]:
        """Map from (x, y) coordinate to node id."""
        return {xy: i for i, xy in enumerate(self.coords)}

    def node_id(self, x: int, y: int) -> int:
        try:
            return self.coord_index[(x, y)]
        except KeyError:
            raise ValueError(f"({x}, {y}) is not on this {self.kind} lattice") from None

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbor ids per node, in edge-insertion order."""
        neigh: list[list[int]] = [[] for _ in self.coords]
        for u, v in self.edges:
            neigh[u].append(v)
            neigh[v].append(u)
        return tuple(tuple(ns) for ns in neigh)


def build_lattice(kind: str, size: int) -> Lattice:
    """Build a lattice of the given kind and size.

    Parameters
    ----------
    kind : {"square", "triangular", "hexagonal"}
    size : int
        L for square/triangular (N = L^2), k for hexagonal (N = 2k^2 + 4k).
        Must be >= 2.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown lattice kind {kind!r}; expected one of {KINDS}")
    if size < 2:
        raise ValueError(f"lattice size must be >= 2, got {size}")
    if kind == "hexagonal":
        coords, edges = _build_hexagonal(size)
    else:
        coords, edges = _build_grid(size, diagonals=(kind == "triangular"))
    return Lattice(kind=kind, size=size, coords=coords, edges=edges)


def _build_grid(length: int, diagonals: bool):
    coords = tuple((x, y) for y in range(length) for x in range(length))
    idx = {xy: i for i, xy in enumerate(coords)}
    edges = []
    for (x, y) in coords:
        i = idx[(x, y)]
        if x + 1 < length:
            edges.append((i, idx[(x + 1, y)]))
        if y + 1 < length:
            edges.append((i, idx[(x, y + 1)]))
        if diagonals and x + 1 < length and y + 1 < length:
            edges.append((i, idx[(x + 1, y + 1)]))
    return coords, tuple(edges)


def _build_hexagonal(k: int):
    # Brick-wall embedding: each hexagonal cell is a 1x2 brick, rows of
    # bricks offset by one column. Vertical bonds exist where x and y have
    # equal parity; horizontal bonds join every adjacent coordinate pair.
    coords = []
    for y in range(k + 1):
        if y == 0:
            xs = range(0, 2 * k + 1)
        elif y == k:
            parity = (k - 1) % 2
            xs = range(parity, 2 * k + parity + 1)
        else:
            xs = range(0, 2 * k + 2)
        coords.extend((x, y) for x in xs)
    coords = tuple(coords)
    idx = {xy: i for i, xy in enumerate(coords)}
    edges = []
    for (x, y) in coords:
        i = idx[(x, y)]
        if (x + 1, y) in idx:
            edges.append((i, idx[(x + 1, y)]))
        if x % 2 == y % 2 and (x, y + 1) in idx:
            edges.append((i, idx[(x, y + 1)]))
    return coords, tuple(edges)


def write_edge_list(lattice: Lattice, path) -> None:
    """Dump a lattice as a JSON header line followed by one "u v" per line."""
    header = {"kind": lattice.kind, "size": lattice.size, "N": lattice.n_nodes}
    with open(path, "w") as fh:
        fh.write(json.dumps(header) + "\n")
        for u, v in lattice.edges:
            fh.write(f"{u} {v}\n")
