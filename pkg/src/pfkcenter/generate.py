"""Deterministic synthetic front generators for benchmarks and tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .front import ParetoFront, build_front

__all__ = ["SHAPES", "InstanceSpec", "generate_front"]

SHAPES = ("convex", "concave", "linear", "random-staircase")


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for a synthetic front: shape family, jitter level, and seed."""

    n: int
    shape: str = "random-staircase"
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"instance size must be at least 1, got {self.n}")
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}; choose from {SHAPES}")
        if self.noise < 0:
            raise ValueError(f"noise must be non-negative, got {self.noise}")

    def build(self) -> ParetoFront:
        return generate_front(self.n, self.shape, self.noise, self.seed)


def _raw_points(shape: str, m: int, noise: float, rng) -> np.ndarray:
    if shape == "random-staircase":
        x = np.cumsum(rng.uniform(0.05, 1.0, m))
        y = np.cumsum(rng.uniform(0.05, 1.0, m))[::-1]
        x = x / x[-1]
        y = y / y[0]
    else:
        t = np.linspace(0.0, 1.0, m)
        x = t
        if shape == "convex":
            y = (1.0 - t) ** 2
        elif shape == "concave":
            y = np.sqrt(np.maximum(0.0, 1.0 - t * t))
        else:  # linear
            y = 1.0 - t
    if noise > 0.0:
        x = x + rng.normal(0.0, noise, m)
        y = y + rng.normal(0.0, noise, m)
    return np.column_stack((x, y))


def generate_front(
    n: int, shape: str = "random-staircase", noise: float = 0.0, seed: int = 0
) -> ParetoFront:
    """Build a valid front of exactly n points, deterministic per seed.

    Raw samples are dominance-filtered; if the jitter knocked out too
    many points the sample is regrown until n survive, then n of them
    are taken evenly across the survivors.
    """
    spec = InstanceSpec(n, shape, noise, seed)
    rng = np.random.default_rng(spec.seed)
    m = spec.n
    for _ in range(32):
        front = build_front(_raw_points(spec.shape, m, spec.noise, rng), sanitize=True)
        if len(front) >= spec.n:
            idx = np.round(np.linspace(0, len(front) - 1, spec.n)).astype(np.int64)
            return ParetoFront(front.xs[idx], front.ys[idx])
        m *= 2
    raise RuntimeError(
        f"could not realize {spec.n} non-dominated points with noise {spec.noise}"
    )
