"""Acceptance battery: one test per shipped criterion.

Statistical criteria run at desk scale with fixed seed schedules, so
every number below is reproducible. Expect roughly half an hour for
the full battery on one core; the connectivity and pick-count sweeps
dominate.
"""

import json
import math
import statistics

import numpy as np
import pytest

from rgglab.analysis import (
    connected_components,
    graph_distances,
    largest_component_deficit,
    subgraph_on_vertices,
)
from rgglab.cli import main as cli_main
from rgglab.environment import geodesic_estimate, make_toy_scenario
from rgglab.experiments import trial_seed
from rgglab.geometry import (
    bluetooth_threshold,
    connection_radius,
    sample_uniform,
    thresholds,
    unit_ball_volume,
)
from rgglab.integrals import (
    estimate_In,
    interior_inner_integral,
    region_volume,
)
from rgglab.models import (
    Bluetooth,
    Constant,
    Disk,
    Embedded,
    LinearDecay,
    Soft,
    build_graph,
    build_grid_index,
    radius_neighbors,
)
from rgglab.planners import build_roadmap, default_model, query
from rgglab.rng import keyed_uint64, philox

from oracles import brute_radius_neighbors, mc_inner_integral, visibility_geodesic

BASE = 20260815
TOY = make_toy_scenario(2, 0.25)
CENTER_GEODESIC = 0.7905694150420949  # two quarter arcs replaced by corner legs


def seeds(d, n, trials):
    return [trial_seed(BASE, d, n, t) for t in range(trials)]


def test_criterion_01_closed_form_constants():
    t = thresholds(2)
    assert t.gamma_star == pytest.approx(1.0 / math.sqrt(math.pi), abs=1e-12)
    assert t.gamma_star_star == pytest.approx(2.0 * 2.0**1.5, abs=1e-12)
    assert t.soft_gamma == pytest.approx(
        math.sqrt(3.0) / math.sqrt(math.pi), abs=1e-12
    )
    for d in range(3, 13):
        assert unit_ball_volume(d) == pytest.approx(
            unit_ball_volume(d - 2) * 2.0 * math.pi / d, rel=1e-12
        )


def test_criterion_02_grid_search_equals_brute_force():
    for d in (2, 3, 6):
        for seed in range(20):
            pts = sample_uniform(1000, d, keyed_uint64(BASE, (d << 8) | seed)).points
            r = connection_radius(1000, 0.8 + 0.4 * (seed % 3), d)
            idx = build_grid_index(pts, r)
            queries = philox(keyed_uint64(BASE ^ 0xA5, (d << 8) | seed)).random((100, d))
            for q in queries:
                got = radius_neighbors(pts, idx, q, r)
                want = brute_radius_neighbors(pts, q, r)
                assert np.array_equal(got, want), (d, seed)


def test_criterion_03_connectivity_phase_transition():
    n, d, trials = 50_000, 2, 100
    gam = thresholds(d).gamma_star
    r_hi = connection_radius(n, 1.5 * gam, d)
    r_lo = connection_radius(n, 0.7 * gam, d)
    connected_hi = disconnected_lo = 0
    for s in seeds(d, n, trials):
        pts = sample_uniform(n, d, s)
        if largest_component_deficit(build_graph(pts, Disk(r=r_hi))) == 0:
            connected_hi += 1
        if largest_component_deficit(build_graph(pts, Disk(r=r_lo))) > 0:
            disconnected_lo += 1
    print(f"above threshold: {connected_hi}/100 connected; "
          f"below: {disconnected_lo}/100 disconnected")
    assert connected_hi >= 90
    assert disconnected_lo >= 95


def test_criterion_04_soft_connectivity_above_threshold():
    n, d, trials = 50_000, 2, 100
    r = connection_radius(n, 1.5 * thresholds(d).soft_gamma, d)
    connected = 0
    for s in seeds(d, n, trials):
        pts = sample_uniform(n, d, s)
        g = build_graph(pts, Soft(r=r, phi=LinearDecay(), seed=s))
        if largest_component_deficit(g) == 0:
            connected += 1
    print(f"soft model: {connected}/100 connected")
    assert connected >= 90


def test_criterion_05_pick_count_governs_bluetooth_connectivity():
    n, d, trials = 20_000, 2, 100
    r = connection_radius(n, 1.5 * thresholds(d).gamma_star_star, d)
    c = math.ceil(1.1 * bluetooth_threshold(n))
    connected = disconnected_single = 0
    for s in seeds(d, n, trials):
        pts = sample_uniform(n, d, s)
        if largest_component_deficit(build_graph(pts, Bluetooth(r=r, c=c, seed=s))) == 0:
            connected += 1
        with pytest.warns(UserWarning):
            single = Bluetooth(r=r, c=1, seed=s)
        if largest_component_deficit(build_graph(pts, single)) > 0:
            disconnected_single += 1
    print(f"c={c}: {connected}/100 connected; c=1: "
          f"{disconnected_single}/100 disconnected")
    assert connected >= 90
    assert disconnected_single >= 80


def _max_stretch(n, d, s):
    pts = sample_uniform(n, d, s)
    g = build_graph(pts, Disk(r=connection_radius(n, 1.5 * thresholds(d).gamma_star, d)))
    sel = np.sort(philox(keyed_uint64(s, 0x57)).choice(n, size=50, replace=False))
    D = graph_distances(g, sel)[:, sel]
    E = np.linalg.norm(pts.points[sel][:, None, :] - pts.points[sel][None, :, :], axis=2)
    iu = np.triu_indices(50, k=1)
    ratios = D[iu] / E[iu]
    finite = ratios[np.isfinite(ratios)]
    assert finite.size > 0
    assert np.all(finite >= 1.0 - 1e-9)
    return float(finite.max())


def test_criterion_06_stretch_shrinks_with_density():
    trials, d = 20, 2
    small = [_max_stretch(1_000, d, s) for s in seeds(d, 1_000, trials)]
    large = [_max_stretch(100_000, d, s) for s in seeds(d, 100_000, trials)]
    med_small = statistics.median(small)
    med_large = statistics.median(large)
    print(f"median max-stretch: n=1e3 {med_small:.4f}, n=1e5 {med_large:.4f}")
    assert med_large < med_small


def _obstacle_trial(n, gamma, s):
    rm = build_roadmap(TOY, n, Disk(r=connection_radius(n, gamma, 2)), seed=s)
    pts = rm.graph.points
    free = np.ones(n, dtype=bool)
    for box in TOY.obstacles:
        free &= ~np.all((pts > np.array(box.lo)) & (pts < np.array(box.hi)), axis=1)
    sub, _ = subgraph_on_vertices(rm.graph, free)
    deficit = largest_component_deficit(sub)
    res = query(rm, (0.0, 0.0), (0.5, 0.5), gamma_query=gamma)
    ratio = res.length / CENTER_GEODESIC if res.success else math.inf
    return deficit, ratio


def test_criterion_07_obstacle_deficit_and_geodesic_stretch():
    trials = 20
    gamma = 1.5 * thresholds(2).gamma_star

    grid = geodesic_estimate(TOY, (0.0, 0.0), (0.5, 0.5), resolution=256)
    vis = visibility_geodesic(TOY, (0.0, 0.0), (0.5, 0.5))
    assert grid == pytest.approx(CENTER_GEODESIC, rel=0.01)
    assert vis == pytest.approx(CENTER_GEODESIC, rel=0.01)

    medians = {}
    deficits_at_largest = []
    for n in (1_000, 10_000, 100_000):
        ratios = []
        for s in seeds(2, n, trials):
            deficit, ratio = _obstacle_trial(n, gamma, s)
            ratios.append(ratio)
            if n == 100_000:
                deficits_at_largest.append(deficit)
        medians[n] = statistics.median(ratios)
    print(f"geodesic-stretch medians: {medians}; "
          f"deficit median at n=1e5: {statistics.median(deficits_at_largest)}")
    assert statistics.median(deficits_at_largest) == 0
    assert medians[100_000] <= 1.2
    assert medians[1_000] >= medians[10_000] >= medians[100_000]


def test_criterion_08_connectivity_integral_behaviour():
    for d in (2, 3, 4):
        for r in (0.01, 0.1, 0.4):
            total = sum(region_volume(d, j, r) for j in range(d + 1))
            assert total == pytest.approx(1.0, abs=1e-12)

    closed = interior_inner_integral(2, 0.1)
    sampled = mc_inner_integral(np.array([0.5, 0.5]), 0.1, 1_000_000, seed=BASE)
    assert sampled == pytest.approx(closed, rel=0.01)

    falling = [
        estimate_In(n, 1.5, 2, outer_samples=1_000_000, seed=BASE, inner_samples=10_000).value
        for n in (1_000, 10_000, 100_000)
    ]
    print(f"In at gamma=1.5: {falling}")
    assert falling[0] > falling[1] > falling[2]
    assert falling[2] < 0.2

    rising = [
        estimate_In(n, 0.5, 2, outer_samples=1_000_000, seed=BASE, inner_samples=10_000).value
        for n in (1_000, 10_000)
    ]
    print(f"In at gamma=0.5: {rising}")
    assert rising[1] > rising[0]


def test_criterion_09_planner_reaches_center_near_optimally():
    n, trials = 20_000, 100
    counts = {"disk": [0, 0, 0], "soft": [0, 0, 0]}  # success, in-band, total
    for kind in ("disk", "soft"):
        gamma = 1.5 * (thresholds(2).soft_gamma if kind == "soft" else thresholds(2).gamma_star)
        for s in seeds(2, n, trials):
            rm = build_roadmap(TOY, n, default_model(kind, n, 2, seed=s), seed=s)
            res = query(rm, (0.0, 0.0), (0.5, 0.5), gamma_query=gamma)
            counts[kind][2] += 1
            if not res.success:
                continue
            counts[kind][0] += 1
            ratio = res.length / CENTER_GEODESIC
            if 1.0 - 1e-9 <= ratio <= 1.2:
                counts[kind][1] += 1
    print(f"planner counts (success, in-band, trials): {counts}")
    for kind, (succ, band, total) in counts.items():
        assert succ >= 95, kind
        assert band >= 90, kind


def test_criterion_10_model_edge_set_relations():
    for seed in range(20):
        pts = sample_uniform(1500, 2, keyed_uint64(BASE, 0xE0 | seed)).points
        disk = build_graph(pts, Disk(r=0.1))
        soft = build_graph(pts, Soft(r=0.1, phi=LinearDecay(), seed=seed))
        blue = build_graph(pts, Bluetooth(r=0.1, c=3, seed=seed))
        assert soft.edge_set() <= disk.edge_set()
        assert blue.edge_set() <= disk.edge_set()

        sure = build_graph(pts, Soft(r=0.1, phi=Constant(1.0), seed=seed))
        assert np.array_equal(sure.edge_u, disk.edge_u)
        assert np.array_equal(sure.edge_v, disk.edge_v)
        assert np.array_equal(sure.edge_length, disk.edge_length)

    few = sample_uniform(200, 2, BASE).points
    assert build_graph(few, Embedded(p=1.0, seed=0)).n_edges == 200 * 199 // 2
    assert build_graph(few, Embedded(p=0.0, seed=0)).n_edges == 0


CONFIGS = {
    "connectivity": {"dims": [2], "n_values": [300], "trials": 2},
    "stretch": {"dims": [2], "n_values": [300], "trials": 2, "m_vertices": 8},
    "obstacle": {"dims": [2], "n_values": [400], "trials": 2, "resolution": 64},
    "planner": {"dims": [2], "n_values": [300], "trials": 2, "resolution": 64,
                "algorithms": ["prm", "soft_prm"]},
    "integral": {"dims": [2], "n_values": [300], "trials": 2,
                 "outer_samples": 3000, "inner_samples": 1100},
    "calibrate": {"dims": [2], "n_values": [300], "trials": 2},
}


def test_criterion_11_csv_replay_is_byte_identical(tmp_path):
    for kind, payload in CONFIGS.items():
        cfg = tmp_path / f"{kind}.json"
        cfg.write_text(json.dumps({"kind": kind, **payload}))
        outs = []
        for rep in range(2):
            out = tmp_path / f"{kind}.{rep}.csv"
            code = cli_main([kind, "--config", str(cfg), "--out", str(out)])
            assert code == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1], kind
        assert outs[0].startswith(b"experiment,d,n,gamma,model,trial,seed,")
