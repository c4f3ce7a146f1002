"""Unit-cube geometry: ball volumes, connectivity constants, sampling.

All logarithms are natural. The domain is always [0, 1)^d with the
Euclidean metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import philox


@dataclass(frozen=True)
class Thresholds:
    """Connectivity constants for one dimension.

    gamma_star is the sharp disk-graph constant, gamma_star_star the
    sparse two-stage constant, soft_gamma the linear-decay constant
    (d+1)^(1/d) * gamma_star, and theta_d the unit-ball volume.
    """

    dim: int
    gamma_star: float
    gamma_star_star: float
    soft_gamma: float
    theta_d: float


@dataclass
class PointSet:
    """n points in [0, 1)^d plus the seed that produced them."""

    points: np.ndarray
    dim: int
    seed: int

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise ValueError("points must have shape (n, dim)")
        self.points = pts

    def __len__(self) -> int:
        return self.points.shape[0]


def unit_ball_volume(d: int) -> float:
    """Volume of the d-dimensional Euclidean unit ball.

    Evaluated as exp((d/2) ln pi - lgamma(d/2 + 1)) to stay finite and
    accurate in high dimension.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return math.exp(0.5 * d * math.log(math.pi) - math.lgamma(0.5 * d + 1.0))


def thresholds(d: int) -> Thresholds:
    """Connectivity constants for dimension d >= 2."""
    if d < 2:
        raise ValueError(f"thresholds need dimension >= 2, got {d}")
    theta = unit_ball_volume(d)
    gamma_star = 2.0 * (2.0 * d * theta) ** (-1.0 / d)
    gamma_star_star = d * 2.0 ** (1.0 + 1.0 / d)
    soft_gamma = (d + 1.0) ** (1.0 / d) * gamma_star
    return Thresholds(d, gamma_star, gamma_star_star, soft_gamma, theta)


def connection_radius(n: int, gamma: float, d: int) -> float:
    """r = gamma * (ln n / n)^(1/d)."""
    if n < 2:
        raise ValueError(f"need n >= 2 points, got {n}")
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    return gamma * (math.log(n) / n) ** (1.0 / d)


def bluetooth_threshold(n: int) -> float:
    """c*_n = sqrt(2 ln n / ln ln n), defined for n >= 16 (> e^e)."""
    if n < 16:
        raise ValueError(f"need n >= 16 so that ln ln n > 0, got {n}")
    return math.sqrt(2.0 * math.log(n) / math.log(math.log(n)))


def sample_uniform(n: int, d: int, seed: int) -> PointSet:
    """n i.i.d. uniform points in [0, 1)^d, deterministic in seed."""
    if n < 0:
        raise ValueError(f"need n >= 0 points, got {n}")
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    pts = philox(seed).random((n, d))
    return PointSet(pts, d, seed)
