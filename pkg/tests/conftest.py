import numpy as np

from pfkcenter import ParetoFront, build_front


def random_front(rng: np.random.Generator, n: int, scale: float = 1.0) -> ParetoFront:
    """Strict staircase of n points: cumulative positive steps both ways."""
    xs = np.cumsum(rng.uniform(0.05, 1.0, n)) * scale
    ys = np.cumsum(rng.uniform(0.05, 1.0, n))[::-1] * scale
    return ParetoFront(xs, ys)


def square_front() -> ParetoFront:
    """The 4-point staircase (0,3),(1,2),(2,1),(3,0) used across the suite."""
    return build_front([(0.0, 3.0), (1.0, 2.0), (2.0, 1.0), (3.0, 0.0)])
