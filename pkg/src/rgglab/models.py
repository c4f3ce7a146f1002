"""Geometric graph construction on point sets in the unit cube.

Four connection rules over the same vertex set:

* Disk: edge iff Euclidean distance <= r.
* Bluetooth: each vertex picks min(c, #candidates) distinct neighbors
  uniformly without replacement from its disk candidates; the union of
  picks, symmetrized, is the edge set.
* Soft: each pair within r is admitted independently with probability
  phi(distance), one draw per unordered pair.
* Embedded: every pair is admitted with probability p, no radius.

Randomness is keyed: the Soft/Embedded draw for pair (i, j), i < j,
depends only on (seed, i, j); the Bluetooth pick sequence of vertex v
depends only on (seed, v). Construction order therefore never changes
the result.
"""

from __future__ import annotations

import io
import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np

from .geometry import PointSet
from .rng import KeyedStream, keyed_uniform


# ---------------------------------------------------------------------------
# connection probability profiles


@dataclass(frozen=True)
class LinearDecay:
    """phi(z) = 1 - z/r on [0, r], 0 beyond."""


@dataclass(frozen=True)
class Constant:
    """phi(z) = q on [0, r], 0 beyond."""

    q: float

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"constant probability must be in [0, 1], got {self.q}")


@dataclass(frozen=True)
class Custom:
    """Piecewise-linear phi over normalized distance t = z/r.

    `table` is a sequence of (t, p) breakpoints with t ascending in
    [0, 1] and p in [0, 1]; values interpolate linearly and vanish for
    z > r.
    """

    table: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ts = [t for t, _ in self.table]
        ps = [p for _, p in self.table]
        if len(self.table) < 2:
            raise ValueError("custom profile needs at least two breakpoints")
        if ts != sorted(ts) or ts[0] < 0.0 or ts[-1] > 1.0:
            raise ValueError("breakpoint positions must ascend within [0, 1]")
        if any(not 0.0 <= p <= 1.0 for p in ps):
            raise ValueError("breakpoint probabilities must lie in [0, 1]")


PhiSpec = LinearDecay | Constant | Custom


def soft_phi(z: float, r: float) -> float:
    """Linear-decay profile: 1 - z/r for z <= r, 0 beyond."""
    if r <= 0:
        raise ValueError(f"radius must be positive, got {r}")
    if z < 0:
        raise ValueError(f"distance must be >= 0, got {z}")
    return 0.0 if z > r else 1.0 - z / r


def phi_values(phi: PhiSpec, z: np.ndarray, r: float) -> np.ndarray:
    """Vectorized phi(z) for distances z under the given profile."""
    z = np.asarray(z, dtype=np.float64)
    if isinstance(phi, LinearDecay):
        out = 1.0 - z / r
    elif isinstance(phi, Constant):
        out = np.full(z.shape, phi.q)
    elif isinstance(phi, Custom):
        ts = np.array([t for t, _ in phi.table])
        ps = np.array([p for _, p in phi.table])
        out = np.interp(z / r, ts, ps)
    else:
        raise TypeError(f"unknown phi profile: {phi!r}")
    return np.where(z > r, 0.0, out)


# ---------------------------------------------------------------------------
# connection models


@dataclass(frozen=True)
class Disk:
    r: float

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError(f"radius must be positive, got {self.r}")


@dataclass(frozen=True)
class Bluetooth:
    r: float
    c: int
    seed: int

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError(f"radius must be positive, got {self.r}")
        if self.c < 1:
            raise ValueError(f"pick count must be >= 1, got {self.c}")
        if self.c < 2:
            warnings.warn("pick count below 2 disconnects the graph with high "
                          "probability", stacklevel=3)


@dataclass(frozen=True)
class Soft:
    r: float
    phi: PhiSpec
    seed: int

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError(f"radius must be positive, got {self.r}")


@dataclass(frozen=True)
class Embedded:
    p: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"edge probability must be in [0, 1], got {self.p}")


ConnectionModel = Disk | Bluetooth | Soft | Embedded


# ---------------------------------------------------------------------------
# graph container


@dataclass
class GeometricGraph:
    """Undirected weighted graph over embedded vertices.

    Edges are stored once with edge_u < edge_v, sorted lexicographically;
    edge_length is the Euclidean distance between the endpoints.
    """

    points: np.ndarray
    edge_u: np.ndarray
    edge_v: np.ndarray
    edge_length: np.ndarray
    _adj: list | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_pairs(cls, points: np.ndarray, u, v, lengths=None) -> "GeometricGraph":
        """Build from endpoint index arrays; normalizes and deduplicates."""
        points = np.asarray(points, dtype=np.float64)
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        if u.shape != v.shape:
            raise ValueError("endpoint arrays must have equal length")
        if u.size and (u.min() < 0 or v.min() < 0
                       or max(u.max(), v.max()) >= len(points)):
            raise ValueError("edge endpoint out of range")
        if np.any(u == v):
            raise ValueError("self-loops are not allowed")
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        if lo.size:
            order = np.lexsort((hi, lo))
            lo, hi = lo[order], hi[order]
            keep = np.ones(lo.size, dtype=bool)
            keep[1:] = (np.diff(lo) != 0) | (np.diff(hi) != 0)
            lo, hi = lo[keep], hi[keep]
        lengths = np.linalg.norm(points[lo] - points[hi], axis=1)
        return cls(points, lo, hi, lengths)

    @property
    def n_vertices(self) -> int:
        return self.points.shape[0]

    @property
    def n_edges(self) -> int:
        return self.edge_u.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def adjacency(self) -> list:
        """Per-vertex list of (neighbor, length), neighbors ascending."""
        if self._adj is None:
            adj = [[] for _ in range(self.n_vertices)]
            for a, b, w in zip(self.edge_u.tolist(), self.edge_v.tolist(),
                               self.edge_length.tolist()):
                adj[a].append((b, w))
                adj[b].append((a, w))
            for lst in adj:
                lst.sort()
            self._adj = adj
        return self._adj

    def to_csr(self):
        """Symmetric scipy CSR adjacency with lengths as weights."""
        from scipy.sparse import csr_matrix

        n = self.n_vertices
        rows = np.concatenate([self.edge_u, self.edge_v])
        cols = np.concatenate([self.edge_v, self.edge_u])
        data = np.concatenate([self.edge_length, self.edge_length])
        return csr_matrix((data, (rows, cols)), shape=(n, n))

    def edge_set(self) -> set:
        return set(zip(self.edge_u.tolist(), self.edge_v.tolist()))


# ---------------------------------------------------------------------------
# fixed-radius neighbor search


@dataclass
class GridIndex:
    """Uniform hash grid: a point lives in cell floor(coord / h) per axis."""

    h: float
    dim: int
    cells: dict

    def cell_of(self, q: np.ndarray) -> tuple:
        return tuple(int(np.floor(c / self.h)) for c in q)


def build_grid_index(points: np.ndarray, h: float) -> GridIndex:
    points = np.asarray(points, dtype=np.float64)
    if h <= 0:
        raise ValueError(f"cell side must be positive, got {h}")
    n, d = points.shape
    cells: dict = {}
    if n:
        coords = np.floor(points / h).astype(np.int64)
        order = np.lexsort(coords.T[::-1])
        sc = coords[order]
        change = np.any(sc[1:] != sc[:-1], axis=1)
        starts = np.concatenate(([0], np.flatnonzero(change) + 1))
        ends = np.concatenate((starts[1:], [n]))
        for s, e in zip(starts, ends):
            cells[tuple(sc[s])] = np.sort(order[s:e])
    return GridIndex(h, d, cells)


def radius_neighbors(points: np.ndarray, index: GridIndex, q: np.ndarray,
                     r: float) -> np.ndarray:
    """Indices i with ||points[i] - q|| <= r, ascending.

    Scans the ceil(r/h)-ring of grid cells around q, so any cell side
    works; h = r gives the usual 3^d scan. A vertex coinciding with q
    bitwise is excluded (querying from a graph vertex must not return
    the vertex itself).
    """
    points = np.asarray(points, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    h = index.h
    ranges = [range(int(np.floor((qi - r) / h)), int(np.floor((qi + r) / h)) + 1)
              for qi in q]
    chunks = []
    for cell in itertools.product(*ranges):
        idx = index.cells.get(cell)
        if idx is not None:
            chunks.append(idx)
    if not chunks:
        return np.empty(0, dtype=np.int64)
    cand = np.concatenate(chunks)
    pts = points[cand]
    dist = np.linalg.norm(pts - q, axis=1)
    keep = dist <= r
    keep &= ~np.all(pts == q, axis=1)
    return np.sort(cand[keep])


def _pairs_within(points: np.ndarray, r: float):
    """All unordered pairs at distance <= r, as (u, v, dist) with u < v,
    sorted lexicographically. Grid-bucketed: each pair is examined in
    exactly one (cell, offset) combination."""
    n, d = points.shape
    empty = (np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0, np.float64))
    if n < 2:
        return empty
    index = build_grid_index(points, r)
    zero = (0,) * d
    offsets = [off for off in itertools.product((-1, 0, 1), repeat=d) if off > zero]
    us, vs, ws = [], [], []
    for cell, idx in index.cells.items():
        p = points[idx]
        if idx.size > 1:
            a, b = np.triu_indices(idx.size, k=1)
            dist = np.linalg.norm(p[a] - p[b], axis=1)
            keep = dist <= r
            us.append(idx[a[keep]])
            vs.append(idx[b[keep]])
            ws.append(dist[keep])
        for off in offsets:
            other = tuple(c + o for c, o in zip(cell, off))
            jdx = index.cells.get(other)
            if jdx is None:
                continue
            diff = p[:, None, :] - points[jdx][None, :, :]
            dist = np.linalg.norm(diff, axis=2)
            a, b = np.nonzero(dist <= r)
            us.append(idx[a])
            vs.append(jdx[b])
            ws.append(dist[a, b])
    if not us:
        return empty
    u = np.concatenate(us)
    v = np.concatenate(vs)
    w = np.concatenate(ws)
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    order = np.lexsort((hi, lo))
    return lo[order], hi[order], w[order]


# ---------------------------------------------------------------------------
# model-specific construction


def _pair_keys(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """64-bit key (u << 32) | v for pairs with u < v < 2^32."""
    return (u.astype(np.uint64) << np.uint64(32)) | v.astype(np.uint64)


def _bluetooth_picks(points: np.ndarray, model: Bluetooth):
    """Per-vertex pick lists, each drawn uniformly without replacement
    from the vertex's disk candidates (ascending index order) via a
    partial Fisher-Yates walk on the vertex's own substream.

    Vertices sharing a grid cell share one candidate pool (their 3^d
    cell neighborhood), so the pool is gathered and sorted once per
    cell rather than once per vertex.
    """
    n, d = points.shape
    index = build_grid_index(points, model.r)
    r = model.r
    picks: list = [None] * n
    neighborhood = list(itertools.product((-1, 0, 1), repeat=d))
    for cell, idx in index.cells.items():
        chunks = []
        for off in neighborhood:
            arr = index.cells.get(tuple(c + o for c, o in zip(cell, off)))
            if arr is not None:
                chunks.append(arr)
        pool = np.sort(np.concatenate(chunks))
        pool_pts = points[pool]
        blk = points[idx]
        # chunk the vertex block so the distance matrix stays small
        step = max(1, 4_000_000 // max(1, pool.size))
        for lo_i in range(0, idx.size, step):
            sub = idx[lo_i:lo_i + step]
            diff = blk[lo_i:lo_i + step, None, :] - pool_pts[None, :, :]
            near = np.linalg.norm(diff, axis=2) <= r
            ii, jj = np.nonzero(near)
            counts = np.bincount(ii, minlength=sub.size)
            groups = np.split(pool[jj], np.cumsum(counts)[:-1])
            for v, cand in zip(sub.tolist(), groups):
                cand = cand[cand != v]
                m = cand.size
                k = min(model.c, m)
                if k == 0:
                    picks[v] = np.empty(0, dtype=np.int64)
                    continue
                stream = KeyedStream(model.seed, v)
                for t in range(k):
                    j = t + stream.next_below(m - t)
                    cand[t], cand[j] = cand[j], cand[t]
                picks[v] = cand[:k]
    return picks


def build_graph(points, model: ConnectionModel) -> GeometricGraph:
    """Construct the geometric graph of `model` over `points`.

    Accepts a PointSet or an (n, d) array. Deterministic: the same
    points and model (including seed) always produce the same graph.
    """
    pts = points.points if isinstance(points, PointSet) else np.asarray(points, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError("points must form an (n, d) array")
    n = pts.shape[0]
    if n >= 1 << 32:
        raise ValueError("vertex count must fit in 32 bits")

    if isinstance(model, Disk):
        u, v, w = _pairs_within(pts, model.r)
        return GeometricGraph(pts, u, v, w)

    if isinstance(model, Soft):
        u, v, w = _pairs_within(pts, model.r)
        draws = keyed_uniform(model.seed, _pair_keys(u, v))
        keep = draws < phi_values(model.phi, w, model.r)
        return GeometricGraph(pts, u[keep], v[keep], w[keep])

    if isinstance(model, Bluetooth):
        picks = _bluetooth_picks(pts, model)
        src = np.concatenate([np.full(p.size, v, dtype=np.int64)
                              for v, p in enumerate(picks)]) if picks else np.empty(0, np.int64)
        dst = np.concatenate(picks) if picks else np.empty(0, np.int64)
        return GeometricGraph.from_pairs(pts, src, dst)

    if isinstance(model, Embedded):
        if model.p == 0.0 or n < 2:
            return GeometricGraph(pts, np.empty(0, np.int64), np.empty(0, np.int64),
                                  np.empty(0, np.float64))
        us, vs = [], []
        for i in range(n - 1):
            j = np.arange(i + 1, n, dtype=np.int64)
            keys = _pair_keys(np.full(j.size, i, dtype=np.int64), j)
            keep = keyed_uniform(model.seed, keys) < model.p
            if np.any(keep):
                sel = j[keep]
                us.append(np.full(sel.size, i, dtype=np.int64))
                vs.append(sel)
        if not us:
            return GeometricGraph(pts, np.empty(0, np.int64), np.empty(0, np.int64),
                                  np.empty(0, np.float64))
        u = np.concatenate(us)
        v = np.concatenate(vs)
        w = np.linalg.norm(pts[u] - pts[v], axis=1)
        return GeometricGraph(pts, u, v, w)

    raise TypeError(f"unknown connection model: {model!r}")


# ---------------------------------------------------------------------------
# plain-text graph dump


def write_graph_dump(g: GeometricGraph, path_or_file) -> None:
    """Write `d n m`, then n coordinate lines, then m `u v` edge lines.

    Vertex indices are 0-based; floats use shortest round-trip form;
    lines end with a single newline.
    """
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    f = open(path_or_file, "w", encoding="utf-8") if own else path_or_file
    try:
        f.write(f"{g.dim} {g.n_vertices} {g.n_edges}\n")
        for row in g.points:
            f.write(" ".join(repr(float(x)) for x in row) + "\n")
        for a, b in zip(g.edge_u.tolist(), g.edge_v.tolist()):
            f.write(f"{a} {b}\n")
    finally:
        if own:
            f.close()


def read_graph_dump(path_or_file) -> GeometricGraph:
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    f = open(path_or_file, "r", encoding="utf-8") if own else path_or_file
    try:
        header = f.readline().split()
        if len(header) != 3:
            raise ValueError("malformed graph dump header")
        d, n, m = (int(x) for x in header)
        pts = np.empty((n, d), dtype=np.float64)
        for i in range(n):
            vals = f.readline().split()
            if len(vals) != d:
                raise ValueError(f"vertex line {i} has {len(vals)} coordinates, expected {d}")
            pts[i] = [float(x) for x in vals]
        u = np.empty(m, dtype=np.int64)
        v = np.empty(m, dtype=np.int64)
        for k in range(m):
            a, b = f.readline().split()
            u[k], v[k] = int(a), int(b)
    finally:
        if own:
            f.close()
    if m:
        return GeometricGraph.from_pairs(pts, u, v)
    return GeometricGraph(pts, u, v, np.empty(0, dtype=np.float64))


def graph_dump_string(g: GeometricGraph) -> str:
    buf = io.StringIO()
    write_graph_dump(g, buf)
    return buf.getvalue()
