"""Experiment harness: deterministic sweeps written as CSV.

Every CSV has the columns

    experiment,d,n,gamma,model,trial,seed,metric_name,metric_value

one row per metric. The per-trial seed is base_seed XOR a SplitMix64
chain over (d, n, trial), so any row can be reproduced in isolation
and reruns are byte identical. Trials may run in a process pool; rows
are sorted by (d, n, trial, model, metric) before writing, so the
thread count never changes the output. Wall-clock timing metrics from
the planner experiment are the one nondeterministic product; the CLI
routes them to a `.timings.csv` sidecar so the main file replays byte
for byte.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analysis import graph_distances, largest_component_deficit, subgraph_on_vertices
from .environment import Environment, geodesic_estimate, make_toy_scenario
from .geometry import bluetooth_threshold, connection_radius, sample_uniform, thresholds
from .integrals import estimate_In
from .models import (Bluetooth, Constant, Custom, Disk, Embedded, LinearDecay,
                     Soft, build_graph)
from .planners import build_roadmap, default_gamma, query
from .rng import keyed_uint64, philox

_TIMING_METRICS = frozenset({"build_seconds", "query_seconds"})

_ALGORITHM_FAMILY = {
    "prm": "disk",
    "soft_prm": "soft",
    "bluetooth_prm": "bluetooth",
    "embedded_prm": "embedded",
}

KINDS = ("connectivity", "stretch", "obstacle", "planner", "integral", "calibrate")


@dataclass
class ExperimentSpec:
    """Configuration of one experiment sweep; mirrors the CLI config file."""

    kind: str
    dims: list = field(default_factory=lambda: [2, 3])
    n_values: list = field(default_factory=lambda: [1_000, 10_000, 100_000])
    gamma: float | None = None
    gamma_multiplier: float = 1.5
    gammas: list | None = None
    model: str = "disk"
    phi: object = "linear"
    c: object = "auto"
    beta: float = 1.0
    p: float | None = None
    trials: int = 20
    base_seed: int = 20260815
    coverage: float = 0.25
    m_vertices: int = 50
    resolution: int = 512
    outer_samples: int = 1_000_000
    inner_samples: int = 10_000
    algorithms: list = field(default_factory=lambda: ["prm", "soft_prm"])
    out: str | None = None
    threads: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; "
                             f"expected one of {', '.join(KINDS)}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if sorted(self.n_values) != list(self.n_values):
            raise ValueError("n_values must be ascending")
        for alg in self.algorithms:
            if alg not in _ALGORITHM_FAMILY:
                raise ValueError(f"unknown algorithm {alg!r}; expected one of "
                                 f"{', '.join(_ALGORITHM_FAMILY)}")

    @classmethod
    def from_dict(cls, payload: dict) -> "ExperimentSpec":
        known = set(cls.__dataclass_fields__)
        bad = set(payload) - known
        if bad:
            raise ValueError(f"unknown config keys: {', '.join(sorted(bad))}")
        return cls(**payload)


@dataclass(frozen=True)
class Row:
    experiment: str
    d: int
    n: int
    gamma: float | None
    model: str
    trial: int
    seed: int
    metric_name: str
    metric_value: float


def trial_seed(base_seed: int, d: int, n: int, trial: int) -> int:
    """base_seed XOR mix(d, n, trial); documented, platform independent."""
    h = keyed_uint64(int(keyed_uint64(int(keyed_uint64(0xD1CE, d)), n)), trial)
    return (base_seed ^ int(h)) & ((1 << 64) - 1)


def _phi_spec(phi):
    if phi == "linear" or isinstance(phi, LinearDecay):
        return LinearDecay()
    if isinstance(phi, (Constant, Custom)):
        return phi
    if isinstance(phi, dict):
        if "constant" in phi:
            return Constant(float(phi["constant"]))
        if "table" in phi:
            return Custom(tuple((float(t), float(p)) for t, p in phi["table"]))
    raise ValueError(f"cannot interpret phi specification {phi!r}")


def resolve_gamma(spec: ExperimentSpec, family: str, d: int) -> float:
    """Absolute radius constant for this run: explicit gamma, or the
    multiplier applied to the family's own connectivity constant."""
    if spec.gamma is not None:
        return spec.gamma
    if family == "embedded":
        return spec.gamma_multiplier * thresholds(d).gamma_star
    return default_gamma(family, d, spec.gamma_multiplier)


def make_model(spec: ExperimentSpec, family: str, n: int, d: int, seed: int):
    gamma = resolve_gamma(spec, family, d)
    if family == "embedded":
        p = spec.p if spec.p is not None else min(
            1.0, spec.beta * math.log(n) ** d * math.log(math.log(n)) / n)
        return Embedded(p, seed), gamma
    r = connection_radius(n, gamma, d)
    if family == "disk":
        return Disk(r), gamma
    if family == "soft":
        return Soft(r, _phi_spec(spec.phi), seed), gamma
    if family == "bluetooth":
        c = math.ceil(1.1 * bluetooth_threshold(n)) if spec.c == "auto" else int(spec.c)
        return Bluetooth(r, c, seed), gamma
    raise ValueError(f"unknown model family {family!r}")


def _free_mask(env: Environment, points: np.ndarray) -> np.ndarray:
    free = np.ones(len(points), dtype=bool)
    for box in env.obstacles:
        lo = np.array(box.lo)
        hi = np.array(box.hi)
        free &= ~np.all((points > lo) & (points < hi), axis=1)
    return free


# ---------------------------------------------------------------------------
# per-trial workers (module level so a process pool can pickle them)


def _connectivity_trial(args):
    spec, d, n, trial = args
    seed = trial_seed(spec.base_seed, d, n, trial)
    model, gamma = make_model(spec, spec.model, n, d, seed)
    g = build_graph(sample_uniform(n, d, seed), model)
    deficit = largest_component_deficit(g)
    return [Row(spec.kind, d, n, gamma, spec.model, trial, seed,
                "deficit", float(deficit))]


def _stretch_trial(args):
    spec, d, n, trial = args
    seed = trial_seed(spec.base_seed, d, n, trial)
    model, gamma = make_model(spec, spec.model, n, d, seed)
    g = build_graph(sample_uniform(n, d, seed), model)
    m = min(spec.m_vertices, n)
    chosen = philox(int(keyed_uint64(seed, 0x57)))\
        .choice(n, size=m, replace=False)
    chosen = np.sort(chosen)
    dist = graph_distances(g, chosen)[:, chosen]
    diff = g.points[chosen][:, None, :] - g.points[chosen][None, :, :]
    euclid = np.linalg.norm(diff, axis=2)
    iu, iv = np.triu_indices(m, k=1)
    gd = dist[iu, iv]
    ed = euclid[iu, iv]
    valid = np.isfinite(gd) & (ed > 0)
    rows = [Row(spec.kind, d, n, gamma, spec.model, trial, seed,
                "skipped_pairs", float(np.sum(~valid)))]
    if np.any(valid):
        rows.append(Row(spec.kind, d, n, gamma, spec.model, trial, seed,
                        "max_stretch", float((gd[valid] / ed[valid]).max())))
    return rows


def _obstacle_trial(args):
    spec, d, n, trial, geodesic = args
    seed = trial_seed(spec.base_seed, d, n, trial)
    env = make_toy_scenario(d, spec.coverage)
    model, gamma = make_model(spec, spec.model, n, d, seed)
    rm = build_roadmap(env, n, model, seed)
    free_graph, _ = subgraph_on_vertices(rm.graph, _free_mask(env, rm.graph.points))
    rows = [Row(spec.kind, d, n, gamma, spec.model, trial, seed,
                "deficit", float(largest_component_deficit(free_graph)))]
    s = np.zeros(d)
    t = np.full(d, 0.5)
    res = query(rm, s, t, gamma_query=gamma)
    rows.append(Row(spec.kind, d, n, gamma, spec.model, trial, seed,
                    "query_success", float(res.success)))
    if res.success:
        rows.append(Row(spec.kind, d, n, gamma, spec.model, trial, seed,
                        "path_length", res.length))
        rows.append(Row(spec.kind, d, n, gamma, spec.model, trial, seed,
                        "stretch_euclidean", res.length / float(np.linalg.norm(t - s))))
        if geodesic is not None:
            rows.append(Row(spec.kind, d, n, gamma, spec.model, trial, seed,
                            "stretch_geodesic", res.length / geodesic))
    return rows


def _planner_trial(args):
    spec, alg, d, n, trial, geodesic = args
    family = _ALGORITHM_FAMILY[alg]
    seed = trial_seed(spec.base_seed, d, n, trial)
    env = make_toy_scenario(d, spec.coverage)
    model, gamma = make_model(spec, family, n, d, seed)
    t0 = time.perf_counter()
    rm = build_roadmap(env, n, model, seed)
    t1 = time.perf_counter()
    s = np.zeros(d)
    t = np.full(d, 0.5)
    res = query(rm, s, t, gamma_query=gamma)
    t2 = time.perf_counter()
    rows = [
        Row(spec.kind, d, n, gamma, alg, trial, seed, "build_seconds", t1 - t0),
        Row(spec.kind, d, n, gamma, alg, trial, seed, "query_seconds", t2 - t1),
        Row(spec.kind, d, n, gamma, alg, trial, seed, "success", float(res.success)),
    ]
    if res.success:
        rows.append(Row(spec.kind, d, n, gamma, alg, trial, seed,
                        "path_length", res.length))
        if geodesic is not None:
            rows.append(Row(spec.kind, d, n, gamma, alg, trial, seed,
                            "length_over_geodesic", res.length / geodesic))
    return rows


def _integral_trial(args):
    spec, d, n, gamma, trial = args
    seed = trial_seed(spec.base_seed, d, n, trial)
    est = estimate_In(n, gamma, d, spec.outer_samples, seed,
                      inner_samples=spec.inner_samples)
    return [
        Row(spec.kind, d, n, gamma, "soft", trial, seed, "In_estimate", est.value),
        Row(spec.kind, d, n, gamma, "soft", trial, seed, "In_std_error", est.std_error),
    ]


def mean_degree_target(n: int, d: int) -> float:
    """Calibration target: nbr(n) = (2^(d-1) / d) ln n."""
    return 2.0 ** (d - 1) / d * math.log(n)


def _calibrated_radius_once(d: int, n: int, seed: int, probes: int) -> float:
    k = min(math.ceil(mean_degree_target(n, d)), n)
    samples = sample_uniform(n, d, seed).points
    queries = philox(int(keyed_uint64(seed, 0xCA11))).random((probes, d))
    dist = np.linalg.norm(samples[None, :, :] - queries[:, None, :], axis=2)
    return float(np.partition(dist, k - 1, axis=1)[:, k - 1].mean())


def calibrate_radius(env: Environment, n: int, trials: int,
                     base_seed: int = 20260815, probes: int = 100) -> float:
    """Empirical radius giving each of `probes` random points
    ceil(nbr(n)) neighbors among n uniform samples, averaged over the
    probes and trials. When the target reaches n the radius clamps to
    the distance of the farthest sample."""
    if n < 2:
        raise ValueError(f"need n >= 2 samples, got {n}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    d = env.dim
    total = 0.0
    for trial in range(trials):
        seed = trial_seed(base_seed, d, n, trial)
        total += _calibrated_radius_once(d, n, seed, probes)
    return total / trials


def _calibrate_trial(args):
    spec, d, n, trial = args
    seed = trial_seed(spec.base_seed, d, n, trial)
    value = _calibrated_radius_once(d, n, seed, probes=100)
    return [Row(spec.kind, d, n, None, spec.model, trial, seed,
                "calibrated_radius", value)]


# ---------------------------------------------------------------------------
# sweep drivers


def _run_tasks(worker, tasks, threads: int):
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(worker, tasks))
    else:
        results = [worker(t) for t in tasks]
    rows = [row for chunk in results for row in chunk]
    rows.sort(key=lambda r: (r.d, r.n, r.trial, r.model,
                             r.gamma if r.gamma is not None else -1.0,
                             r.metric_name))
    return rows


def _toy_geodesics(spec: ExperimentSpec):
    out = {}
    for d in spec.dims:
        env = make_toy_scenario(d, spec.coverage)
        res = spec.resolution if d == 2 else min(spec.resolution, 64)
        out[d] = geodesic_estimate(env, np.zeros(d), np.full(d, 0.5), res)
    return out


def run_experiment(spec: ExperimentSpec):
    """Dispatch a sweep and return its rows (also see write_csv)."""
    if spec.kind == "connectivity":
        tasks = [(spec, d, n, t) for d in spec.dims for n in spec.n_values
                 for t in range(spec.trials)]
        return _run_tasks(_connectivity_trial, tasks, spec.threads)
    if spec.kind == "stretch":
        tasks = [(spec, d, n, t) for d in spec.dims for n in spec.n_values
                 for t in range(spec.trials)]
        return _run_tasks(_stretch_trial, tasks, spec.threads)
    if spec.kind == "obstacle":
        geo = _toy_geodesics(spec)
        tasks = [(spec, d, n, t, geo[d]) for d in spec.dims
                 for n in spec.n_values for t in range(spec.trials)]
        return _run_tasks(_obstacle_trial, tasks, spec.threads)
    if spec.kind == "planner":
        geo = _toy_geodesics(spec)
        tasks = [(spec, alg, d, n, t, geo[d]) for alg in spec.algorithms
                 for d in spec.dims for n in spec.n_values
                 for t in range(spec.trials)]
        return _run_tasks(_planner_trial, tasks, spec.threads)
    if spec.kind == "integral":
        gammas = spec.gammas if spec.gammas is not None else [1.5, 0.5]
        tasks = [(spec, d, n, g, t) for d in spec.dims for n in spec.n_values
                 for g in gammas for t in range(spec.trials)]
        return _run_tasks(_integral_trial, tasks, spec.threads)
    if spec.kind == "calibrate":
        tasks = [(spec, d, n, t) for d in spec.dims for n in spec.n_values
                 for t in range(spec.trials)]
        return _run_tasks(_calibrate_trial, tasks, spec.threads)
    raise ValueError(f"unknown experiment kind {spec.kind!r}")


def _fmt(x: float) -> str:
    return repr(float(x))


def format_csv(rows) -> str:
    lines = ["experiment,d,n,gamma,model,trial,seed,metric_name,metric_value"]
    for r in rows:
        gamma = _fmt(r.gamma) if r.gamma is not None else ""
        lines.append(f"{r.experiment},{r.d},{r.n},{gamma},{r.model},"
                     f"{r.trial},{r.seed},{r.metric_name},{_fmt(r.metric_value)}")
    return "\n".join(lines) + "\n"


def write_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_csv(rows))


def strip_timing(rows):
    """Rows without wall-clock metrics; the reproducible planner subset."""
    return [r for r in rows if r.metric_name not in _TIMING_METRICS]


def timing_rows(rows):
    """The wall-clock complement of strip_timing."""
    return [r for r in rows if r.metric_name in _TIMING_METRICS]
