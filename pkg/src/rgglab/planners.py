"""Sampling-based roadmap planners over obstacle environments.

The builder draws n uniform samples (plus an optional start state),
generates candidate edges under a connection model, and keeps the
candidates whose straight segments avoid every obstacle interior. The
candidate stage uses exactly the same keyed randomness as the
obstacle-free graph construction, so an empty environment reproduces
build_graph verbatim and any obstacle can only remove edges. Samples
that land inside obstacles stay as vertices; no candidate edge of
theirs can be collision free end to end unless it never enters an
interior, so paths remain valid.

Query connects the two endpoints to every roadmap vertex within the
query radius through collision-free segments (deterministically, with
no probabilistic filter) and runs Dijkstra.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .environment import Environment, is_free, save_environment, segments_hit_obstacles
from .geometry import (bluetooth_threshold, connection_radius, sample_uniform,
                       thresholds)
from .models import (Bluetooth, ConnectionModel, Disk, Embedded, GeometricGraph,
                     LinearDecay, Soft, build_graph, graph_dump_string,
                     read_graph_dump)


@dataclass
class Roadmap:
    graph: GeometricGraph
    env: Environment
    model: ConnectionModel
    seed: int
    n_samples: int

    @property
    def dim(self) -> int:
        return self.env.dim


@dataclass
class QueryResult:
    success: bool
    path: list
    length: float | None


def default_gamma(model_kind: str, d: int, multiplier: float = 1.5) -> float:
    """`multiplier` times the connectivity constant of the model family."""
    t = thresholds(d)
    if model_kind == "disk":
        return multiplier * t.gamma_star
    if model_kind == "soft":
        return multiplier * t.soft_gamma
    if model_kind == "bluetooth":
        return multiplier * t.gamma_star_star
    raise ValueError(f"no radius constant for model kind {model_kind!r}")


def default_model(kind: str, n: int, d: int, seed: int,
                  multiplier: float = 1.5, beta: float = 1.0) -> ConnectionModel:
    """Connection model at the recommended operating point.

    disk/soft/bluetooth use r = multiplier * constant * (ln n / n)^(1/d)
    with the family's own constant; bluetooth picks ceil(1.1 c*_n)
    edges per vertex; embedded uses p = min(1, beta (ln n)^d ln ln n / n).
    """
    if kind == "embedded":
        p = min(1.0, beta * math.log(n) ** d * math.log(math.log(n)) / n)
        return Embedded(p, seed)
    r = connection_radius(n, default_gamma(kind, d, multiplier), d)
    if kind == "disk":
        return Disk(r)
    if kind == "soft":
        return Soft(r, LinearDecay(), seed)
    if kind == "bluetooth":
        c = math.ceil(1.1 * bluetooth_threshold(n))
        return Bluetooth(r, c, seed)
    raise ValueError(f"unknown model kind {kind!r}")


def build_roadmap(env: Environment, n: int, model: ConnectionModel, seed: int,
                  x_init=None) -> Roadmap:
    """Sample n vertices, connect under `model`, drop colliding edges."""
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    samples = sample_uniform(n, env.dim, seed).points
    if x_init is not None:
        x_init = np.asarray(x_init, dtype=np.float64)
        if not is_free(env, x_init):
            raise ValueError("x_init is not in free space")
        points = np.vstack([x_init[None, :], samples])
    else:
        points = samples
    candidate = build_graph(points, model)
    if env.obstacles and candidate.n_edges:
        hit = segments_hit_obstacles(env, points[candidate.edge_u],
                                     points[candidate.edge_v])
        keep = ~hit
        graph = GeometricGraph(points, candidate.edge_u[keep],
                               candidate.edge_v[keep],
                               candidate.edge_length[keep])
    else:
        graph = candidate
    return Roadmap(graph, env, model, seed, n)


def query(rm: Roadmap, s, t, gamma_query: float | None = None) -> QueryResult:
    """Plan from s to t through the roadmap.

    Both endpoints connect to every roadmap vertex within
    r = gamma_query (ln n / n)^(1/d) whose connecting segment is
    collision free; the shortest path then comes from Dijkstra. The
    default gamma_query is 1.2 times the disk connectivity constant; a
    value at or below the constant draws a warning since long-range
    connectivity is no longer guaranteed.
    """
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    env = rm.env
    if not is_free(env, s):
        raise ValueError(f"query start {s.tolist()} is not in free space")
    if not is_free(env, t):
        raise ValueError(f"query goal {t.tolist()} is not in free space")
    d = rm.dim
    gstar = thresholds(d).gamma_star
    if gamma_query is None:
        gamma_query = 1.2 * gstar
    elif gamma_query <= gstar:
        warnings.warn("query radius constant at or below the connectivity "
                      "threshold; expect failures", stacklevel=2)
    if np.array_equal(s, t):
        return QueryResult(True, [s.copy()], 0.0)

    r_query = connection_radius(rm.n_samples, gamma_query, d)
    g = rm.graph
    n = g.n_vertices
    rows = [np.concatenate([g.edge_u, g.edge_v]).astype(np.int64)]
    cols = [np.concatenate([g.edge_v, g.edge_u]).astype(np.int64)]
    vals = [np.concatenate([g.edge_length, g.edge_length])]
    for pid, p in ((n, s), (n + 1, t)):
        dist = np.linalg.norm(g.points - p, axis=1)
        near = np.flatnonzero(dist <= r_query)
        if near.size:
            hit = segments_hit_obstacles(env, np.tile(p, (near.size, 1)),
                                         g.points[near])
            near = near[~hit]
        rows.append(np.full(near.size, pid, dtype=np.int64))
        cols.append(near)
        vals.append(np.linalg.norm(g.points[near] - p, axis=1))
        rows.append(near)
        cols.append(np.full(near.size, pid, dtype=np.int64))
        vals.append(np.linalg.norm(g.points[near] - p, axis=1))
    mat = csr_matrix((np.concatenate(vals),
                      (np.concatenate(rows), np.concatenate(cols))),
                     shape=(n + 2, n + 2))
    dist, pred = dijkstra(mat, directed=False, indices=n,
                          return_predecessors=True)
    if math.isinf(dist[n + 1]):
        return QueryResult(False, None, None)
    ids = [n + 1]
    while ids[-1] != n:
        ids.append(int(pred[ids[-1]]))
    ids.reverse()

    def node_point(i):
        return s if i == n else t if i == n + 1 else g.points[i]

    path = [node_point(i).copy() for i in ids]
    return QueryResult(True, path, float(dist[n + 1]))


def path_length(path) -> float:
    """Sum of consecutive segment lengths along a point sequence."""
    if len(path) < 1:
        raise ValueError("path needs at least one point")
    pts = np.asarray(path, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError("path points must share one dimension")
    if len(pts) == 1:
        return 0.0
    return float(np.linalg.norm(np.diff(pts, axis=0), axis=1).sum())


def save_roadmap(rm: Roadmap, path, env_path) -> None:
    """Graph dump prefixed by a reference to the environment file,
    which is written alongside."""
    save_environment(rm.env, env_path)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"env {env_path}\n")
        f.write(graph_dump_string(rm.graph))


def load_roadmap_graph(path):
    """Read back a serialized roadmap: (environment path, graph)."""
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline().rstrip("\n")
        if not first.startswith("env "):
            raise ValueError("missing environment reference line")
        env_path = first[4:]
        graph = read_graph_dump(f)
    return env_path, graph
