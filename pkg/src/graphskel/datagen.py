"""Seeded synthetic point-cloud generators and the time-delay embedding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import ParameterError


@dataclass
class GeneratorConfig:
    """Knobs shared by the circle generators.

    ``nonuniformity`` skews the angular density toward theta = 0 with density
    proportional to max(0, 1 + nonuniformity * cos(theta)); values above 1
    open a genuine gap on the far side of the circle.
    """

    seed: int = 0
    n_points: int = 500
    noise_sigma: float = 0.05
    background_fraction: float = 0.0
    nonuniformity: float = 0.0

    def __post_init__(self):
        if self.n_points < 1:
            raise ParameterError("n_points must be >= 1")
        if not 0 <= self.background_fraction < 1:
            raise ParameterError("background_fraction must be in [0, 1)")
        if self.nonuniformity < 0:
            raise ParameterError("nonuniformity must be >= 0")
        if self.noise_sigma < 0:
            raise ParameterError("noise_sigma must be >= 0")


def _sample_angles(rng: np.random.Generator, n: int, skew: float) -> np.ndarray:
    """Rejection sampling from density proportional to max(0, 1 + skew cos t)."""
    if skew == 0.0 or n == 0:
        return rng.uniform(0.0, 2.0 * np.pi, n)
    out = np.empty(0)
    peak = 1.0 + skew
    while out.size < n:
        cand = rng.uniform(0.0, 2.0 * np.pi, 4 * n)
        accept = rng.uniform(0.0, peak, cand.size) < np.maximum(
            0.0, 1.0 + skew * np.cos(cand)
        )
        out = np.concatenate([out, cand[accept]])
    return out[:n]


def _dedupe(rng: np.random.Generator, points: np.ndarray, resample) -> np.ndarray:
    """Resample rows until all points are distinct (collisions are rare)."""
    for _ in range(100):
        _, first = np.unique(points, axis=0, return_index=True)
        if first.size == len(points):
            return points
        dup = np.setdiff1d(np.arange(len(points)), first)
        points[dup] = resample(rng, dup.size)
    raise ParameterError("could not generate distinct points")


def _circle_points(
    rng: np.random.Generator,
    n: int,
    center: Tuple[float, float],
    radius: float,
    sigma: float,
    skew: float,
    phase: float = 0.0,
) -> np.ndarray:
    theta = _sample_angles(rng, n, skew) + phase
    r = radius + rng.normal(0.0, sigma, n)
    return np.column_stack(
        [center[0] + r * np.cos(theta), center[1] + r * np.sin(theta)]
    )


def gen_circle(config: GeneratorConfig) -> np.ndarray:
    """Noisy, possibly non-uniform sample around the unit circle, plus background."""
    rng = np.random.default_rng(config.seed)
    n_bg = int(round(config.n_points * config.background_fraction))
    n_sig = config.n_points - n_bg

    def sig(r, m):
        return _circle_points(r, m, (0.0, 0.0), 1.0, config.noise_sigma, config.nonuniformity)

    def bg(r, m):
        return r.uniform(-1.4, 1.4, (m, 2))

    pts = np.vstack([sig(rng, n_sig), bg(rng, n_bg)])
    return _dedupe(rng, pts, lambda r, m: sig(r, m) if n_bg == 0 else bg(r, m))


# layout of the two-circle scene: radii in ratio 1:4, centers far enough apart
SMALL_RADIUS = 1.0
LARGE_RADIUS = 4.0
SMALL_CENTER = (0.0, 0.0)
LARGE_CENTER = (7.0, 0.0)
SMALL_SHARE = 0.4  # fraction of signal points on the small circle


def gen_two_circles(config: GeneratorConfig) -> np.ndarray:
    """Two circles of radii 1 and 4; the large one gets the non-uniform sampling.

    The small circle is sampled uniformly and densely, the large circle with
    the configured skew, so no single Rips radius captures both features.
    """
    rng = np.random.default_rng(config.seed)
    n_bg = int(round(config.n_points * config.background_fraction))
    n_sig = config.n_points - n_bg
    n_small = int(round(n_sig * SMALL_SHARE))
    n_large = n_sig - n_small

    def small(r, m):
        return _circle_points(r, m, SMALL_CENTER, SMALL_RADIUS, config.noise_sigma, 0.0)

    def large(r, m):
        # phase pi: the sparse side of the large circle faces away from the
        # small one, so a bridge over the gap cannot shortcut through it
        return _circle_points(
            r, m, LARGE_CENTER, LARGE_RADIUS, config.noise_sigma,
            config.nonuniformity, phase=np.pi,
        )

    def bg(r, m):
        return np.column_stack(
            [r.uniform(-2.0, 12.0, m), r.uniform(-5.0, 5.0, m)]
        )

    pts = np.vstack([small(rng, n_small), large(rng, n_large), bg(rng, n_bg)])
    return _dedupe(rng, pts, bg if n_bg else small)


def time_delay_embed(series: np.ndarray, m: int, tau: int) -> np.ndarray:
    """Delay embedding: row t is (f(t), f(t+tau), ..., f(t+m*tau)), dimension m+1."""
    series = np.asarray(series, dtype=float).ravel()
    if m < 1 or tau < 1:
        raise ParameterError("m and tau must be >= 1")
    if len(series) <= m * tau:
        raise ParameterError(
            f"series of length {len(series)} too short for m={m}, tau={tau}"
        )
    n = len(series) - m * tau
    return np.column_stack([series[i * tau : i * tau + n] for i in range(m + 1)])
