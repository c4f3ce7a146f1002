"""Connectivity integral for soft graphs with linear decay.

The integral

    I_n = n * integral over x in [0,1]^d of
          exp(-n * integral over y of phi(||y - x||)) dx

vanishing as n grows certifies asymptotic connectivity. The cube
splits into region classes R_j: an x whose ball B_r(x) crosses the
boundary along exactly j axes lies in R_j, which is a disjoint union of
binom(d, j) * 2^j congruent boxes of volume (1-2r)^(d-j) * r^j each.

For interior points (j = 0) the inner integral is the closed form
theta_d r^d / (d+1), so that stratum contributes exactly. Boundary
strata are estimated by Monte Carlo: outer points sampled uniformly
within the stratum, inner integrals by uniform sampling of the ball
clipped to the cube.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import connection_radius, unit_ball_volume
from .rng import keyed_uint64, philox


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    std_error: float
    samples: int


def classify_region(x, r: float) -> int:
    """Number of axes along which B_r(x) crosses the cube boundary."""
    x = np.asarray(x, dtype=np.float64)
    if r <= 0.0 or r >= 0.5:
        raise ValueError(f"radius must lie in (0, 1/2), got {r}")
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise ValueError(f"point {x.tolist()} is outside the unit cube")
    return int(np.sum(np.minimum(x, 1.0 - x) < r))


def region_volume(d: int, j: int, r: float) -> float:
    """Volume of region class j: binom(d,j) 2^j (1-2r)^(d-j) r^j."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if not 0 <= j <= d:
        raise ValueError(f"class index must lie in 0..{d}, got {j}")
    if r <= 0.0 or r >= 0.5:
        raise ValueError(f"radius must lie in (0, 1/2), got {r}")
    return math.comb(d, j) * 2.0 ** j * (1.0 - 2.0 * r) ** (d - j) * r ** j


def interior_inner_integral(d: int, r: float) -> float:
    """Exact inner integral for interior points: theta_d r^d / (d+1)."""
    return unit_ball_volume(d) * r ** d / (d + 1.0)


def _ball_phi_masses(x: np.ndarray, r: float, k: int, rng) -> tuple:
    """MC estimate of integral of (1 - ||y-x||/r) over B_r(x) cut to the
    cube: mean and std error over k uniform ball samples."""
    d = x.size
    nu = unit_ball_volume(d) * r ** d
    dirs = rng.standard_normal((k, d))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    radii = r * rng.random(k) ** (1.0 / d)
    y = x + dirs * radii[:, None]
    inside = np.all((y >= 0.0) & (y <= 1.0), axis=1)
    vals = (1.0 - radii / r) * inside
    return nu * vals.mean(), nu * vals.std(ddof=1) / math.sqrt(k)


def inner_integral(x, r: float, mc_samples: int, seed: int) -> IntegralEstimate:
    """Inner connectivity integral at one point.

    Interior points return the closed form with zero error and zero
    samples; boundary points use `mc_samples` ball draws (at least 10^3,
    the estimate is too noisy below that to be useful).
    """
    x = np.asarray(x, dtype=np.float64)
    j = classify_region(x, r)
    if j == 0:
        return IntegralEstimate(interior_inner_integral(x.size, r), 0.0, 0)
    if mc_samples < 1000:
        raise ValueError(f"boundary points need >= 1000 samples, got {mc_samples}")
    mean, se = _ball_phi_masses(x, r, mc_samples, philox(seed))
    return IntegralEstimate(float(mean), float(se), mc_samples)


def _sample_stratum(n_pts: int, d: int, j: int, r: float, rng) -> np.ndarray:
    """Uniform points in region class j: pick j random axes near a
    random side of the boundary, the rest strictly interior."""
    x = r + (1.0 - 2.0 * r) * rng.random((n_pts, d))
    if j > 0:
        ranks = rng.random((n_pts, d)).argsort(axis=1)
        chosen = ranks < j
        near = r * rng.random((n_pts, d))
        high = rng.random((n_pts, d)) < 0.5
        boundary_coord = np.where(high, 1.0 - near, near)
        x = np.where(chosen, boundary_coord, x)
    return x


def estimate_In(n: int, gamma: float, d: int, outer_samples: int, seed: int,
                inner_samples: int = 10_000,
                max_stratum_samples: int = 20_000) -> IntegralEstimate:
    """Stratified estimate of the connectivity integral I_n.

    The interior stratum enters in closed form (its integrand is
    constant). Each boundary stratum j >= 1 receives its volume share
    of `outer_samples` capped at `max_stratum_samples`, since every
    boundary point costs `inner_samples` ball draws; the cap keeps a
    full sweep tractable while the propagated standard error reports
    the achieved accuracy. Deterministic in all arguments.
    """
    if outer_samples < 1:
        raise ValueError(f"outer_samples must be >= 1, got {outer_samples}")
    r = connection_radius(n, gamma, d)
    if r >= 0.5:
        raise ValueError(f"connection radius {r} reaches half the cube; "
                         "the region decomposition needs r < 1/2")
    weights = [region_volume(d, j, r) for j in range(d + 1)]
    iota0 = interior_inner_integral(d, r)
    total = weights[0] * math.exp(-n * iota0)
    var = 0.0
    used = 0
    for j in range(1, d + 1):
        if weights[j] == 0.0:
            continue
        n_j = int(round(outer_samples * weights[j]))
        n_j = max(1000, min(n_j, max_stratum_samples))
        rng = philox(int(keyed_uint64(seed, j)))
        g_sum = 0.0
        g_sq = 0.0
        done = 0
        chunk = max(1, (1 << 23) // max(inner_samples, 1))
        while done < n_j:
            k = min(chunk, n_j - done)
            xs = _sample_stratum(k, d, j, r, rng)
            g = np.empty(k)
            for i in range(k):
                mean, _ = _ball_phi_masses(xs[i], r, inner_samples, rng)
                g[i] = math.exp(-n * mean)
            g_sum += g.sum()
            g_sq += (g * g).sum()
            done += k
        mean_j = g_sum / n_j
        var_j = max(g_sq / n_j - mean_j ** 2, 0.0) * n_j / max(n_j - 1, 1)
        total += weights[j] * mean_j
        var += weights[j] ** 2 * var_j / n_j
        used += n_j
    return IntegralEstimate(n * total, n * math.sqrt(var), used)
