"""Connectivity and path analysis of geometric graphs."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csgraph

from .models import GeometricGraph


@dataclass(frozen=True)
class AxisBox:
    """Axis-aligned box given by lower and upper corner."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo = tuple(float(x) for x in self.lo)
        hi = tuple(float(x) for x in self.hi)
        if len(lo) != len(hi):
            raise ValueError("corner dimensions differ")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"lower corner exceeds upper corner: {lo} vs {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def volume(self) -> float:
        v = 1.0
        for a, b in zip(self.lo, self.hi):
            v *= b - a
        return v

    def contains(self, x, closed: bool = True) -> bool:
        """Closed membership by default; closed=False tests the open interior."""
        if closed:
            return all(a <= xi <= b for xi, a, b in zip(x, self.lo, self.hi))
        return all(a < xi < b for xi, a, b in zip(x, self.lo, self.hi))

    def intersects(self, other: "AxisBox") -> bool:
        """Closed boxes share at least a boundary point."""
        return all(a <= d and c <= b for a, b, c, d in
                   zip(self.lo, self.hi, other.lo, other.hi))


@dataclass
class ComponentLabeling:
    """labels[v] is the component id of vertex v; sizes[k] its size."""

    labels: np.ndarray
    sizes: np.ndarray

    @property
    def n_components(self) -> int:
        return len(self.sizes)


def connected_components(g: GeometricGraph) -> ComponentLabeling:
    """Label vertices by connected component (ids 0..k-1)."""
    n = g.n_vertices
    if n == 0:
        return ComponentLabeling(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))
    _, labels = csgraph.connected_components(g.to_csr(), directed=False)
    labels = labels.astype(np.int64)
    sizes = np.bincount(labels)
    return ComponentLabeling(labels, sizes)


def largest_component_deficit(g: GeometricGraph) -> int:
    """Number of vertices outside the largest connected component."""
    if g.n_vertices == 0:
        return 0
    comp = connected_components(g)
    return int(g.n_vertices - comp.sizes.max())


def shortest_path(g: GeometricGraph, u: int, v: int):
    """Exact Dijkstra between vertices u and v.

    Returns (length, path) where path is the vertex index sequence, or
    None when u and v are disconnected. Among equal-length shortest
    paths the lexicographically smallest vertex sequence wins: the heap
    is ordered by (length, sequence), and appending an edge preserves
    that order, so the first settled entry per vertex is the minimum.
    """
    n = g.n_vertices
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"vertex out of range: {u}, {v} with n={n}")
    if u == v:
        return 0.0, [u]
    adj = g.adjacency()
    heap = [(0.0, (u,))]
    done = set()
    while heap:
        dist, path = heapq.heappop(heap)
        node = path[-1]
        if node in done:
            continue
        done.add(node)
        if node == v:
            return dist, list(path)
        for nbr, w in adj[node]:
            if nbr not in done:
                heapq.heappush(heap, (dist + w, path + (nbr,)))
    return None


def graph_distances(g: GeometricGraph, sources) -> np.ndarray:
    """Shortest-path lengths from each source to every vertex.

    Bulk companion to shortest_path (lengths only, no tie rule); rows
    follow `sources`, unreachable entries are +inf.
    """
    sources = np.asarray(sources, dtype=np.int64)
    if sources.size == 0:
        return np.empty((0, g.n_vertices))
    return csgraph.dijkstra(g.to_csr(), directed=False, indices=sources)


def stretch(g: GeometricGraph, u: int, v: int, denominator: float):
    """Graph distance over a reference distance, or None if disconnected."""
    if denominator <= 0:
        raise ValueError(f"denominator must be positive, got {denominator}")
    res = shortest_path(g, u, v)
    if res is None:
        return None
    return res[0] / denominator


def restrict_to_region(g: GeometricGraph, box: AxisBox):
    """Subgraph of vertices inside the closed box; an edge survives iff
    both endpoints do. Returns (subgraph, index_map) where index_map[k]
    is the original index of new vertex k."""
    if box.dim != g.dim:
        raise ValueError(f"box dimension {box.dim} != graph dimension {g.dim}")
    lo = np.array(box.lo)
    hi = np.array(box.hi)
    inside = np.all((g.points >= lo) & (g.points <= hi), axis=1)
    index_map = np.flatnonzero(inside)
    new_id = np.full(g.n_vertices, -1, dtype=np.int64)
    new_id[index_map] = np.arange(index_map.size)
    keep = inside[g.edge_u] & inside[g.edge_v]
    sub = GeometricGraph(g.points[index_map], new_id[g.edge_u[keep]],
                         new_id[g.edge_v[keep]], g.edge_length[keep])
    return sub, index_map


def subgraph_on_vertices(g: GeometricGraph, mask: np.ndarray):
    """Induced subgraph on the vertices where mask is True; same
    remapping convention as restrict_to_region."""
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (g.n_vertices,):
        raise ValueError("mask must have one entry per vertex")
    index_map = np.flatnonzero(mask)
    new_id = np.full(g.n_vertices, -1, dtype=np.int64)
    new_id[index_map] = np.arange(index_map.size)
    keep = mask[g.edge_u] & mask[g.edge_v]
    sub = GeometricGraph(g.points[index_map], new_id[g.edge_u[keep]],
                         new_id[g.edge_v[keep]], g.edge_length[keep])
    return sub, index_map


@dataclass
class OccupancyReport:
    """Cell counts for a grid and its half-shifted twin."""

    cells: int
    empty_cells: int
    shifted_cells: int
    shifted_empty_cells: int


def tessellation_occupancy(points: np.ndarray, region, eps: float) -> OccupancyReport:
    """Occupancy of the eps-grid over a region of the unit cube.

    The base grid partitions [0, 1)^d into half-open cubes of side eps
    anchored at the origin; the twin grid is shifted by eps/2 along
    every axis. A cell counts when it intersects some box of `region`;
    it is empty when no sample point falls in it.
    """
    points = np.asarray(points, dtype=np.float64)
    if eps <= 0 or eps > 1:
        raise ValueError(f"cell side must lie in (0, 1], got {eps}")
    if isinstance(region, AxisBox):
        region = [region]
    region = list(region)
    if not region:
        raise ValueError("region must contain at least one box")
    d = region[0].dim
    if points.size and points.shape[1] != d:
        raise ValueError("points and region dimensions differ")

    def _count(shift: float):
        k_max = int(np.floor((1.0 + shift) / eps))
        k_min = int(np.floor(shift / eps)) if shift else 0
        axis_cells = range(k_min, k_max + 1)
        live = []
        for cell in itertools.product(axis_cells, repeat=d):
            lo = [k * eps - shift for k in cell]
            hi = [min(1.0, (k + 1) * eps - shift) for k in cell]
            lo = [max(0.0, x) for x in lo]
            if any(a >= b for a, b in zip(lo, hi)):
                continue
            cell_box = AxisBox(lo, hi)
            if any(cell_box.intersects(b) for b in region):
                live.append(cell)
        if points.size:
            occupied = set(map(tuple, np.floor((points + shift) / eps).astype(np.int64)))
        else:
            occupied = set()
        empty = sum(1 for cell in live if cell not in occupied)
        return len(live), empty

    cells, empty_cells = _count(0.0)
    shifted_cells, shifted_empty = _count(eps / 2.0)
    return OccupancyReport(cells, empty_cells, shifted_cells, shifted_empty)
