"""Small named graphs and random 3-regular generators."""

from __future__ import annotations

import random

from .grid import EdgeLabeledGraph


def theta() -> EdgeLabeledGraph:
    return EdgeLabeledGraph(2, ((0, 1), (0, 1), (0, 1)))


def k4() -> EdgeLabeledGraph:
    return EdgeLabeledGraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def k33() -> EdgeLabeledGraph:
    return EdgeLabeledGraph(6, tuple((u, v) for u in range(3) for v in range(3, 6)))


def prism() -> EdgeLabeledGraph:
    return EdgeLabeledGraph(6, ((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)))


def random_cubic_multigraph(n: int, rng: random.Random) -> EdgeLabeledGraph:
    """Configuration-model pairing of 3n half-edges; loops and parallel edges allowed."""
    if n % 2:
        raise ValueError("a 3-regular graph needs an even number of vertices")
    stubs = [v for v in range(n) for _ in range(3)]
    rng.shuffle(stubs)
    return EdgeLabeledGraph(n, tuple(zip(stubs[::2], stubs[1::2])))


def random_cubic_graph(n: int, rng: random.Random, max_tries: int = 10_000) -> EdgeLabeledGraph:
    """Simple 3-regular graph by rejection sampling from the configuration model."""
    for _ in range(max_tries):
        g = random_cubic_multigraph(n, rng)
        seen = set()
        ok = True
        for u, v in g.edges:
            key = (min(u, v), max(u, v))
            if u == v or key in seen:
                ok = False
                break
            seen.add(key)
        if ok:
            return g
    raise RuntimeError(f"no simple cubic graph on {n} vertices after {max_tries} tries")
