"""Shared fixtures and brute-force oracles used across the suite."""

import numpy as np
import pytest

from engagesim.graph import OpinionVector, SocialNetwork
from engagesim.policy import TemplateRealizer
from engagesim.scoring import LexiconScorer


def random_digraph(rng: np.random.Generator, n: int, p: float) -> SocialNetwork:
    """Erdos-Renyi style directed graph without self-loops or duplicates."""
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    edges = [(int(u), int(v)) for u, v in zip(*np.nonzero(mask))]
    return SocialNetwork(n, edges)


def random_opinions(rng: np.random.Generator, n: int) -> OpinionVector:
    return OpinionVector(rng.random(n))


def brute_force_betweenness(network: SocialNetwork) -> dict[int, float]:
    """Betweenness by explicit shortest-path enumeration (small graphs only).

    For every ordered pair (s, t), enumerate all shortest s->t paths by DFS
    over the BFS distance structure and credit each interior node.
    """
    n = network.node_count
    score = {v: 0.0 for v in range(n)}
    for s in range(n):
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in network.out_neighbors(u):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt

        def all_shortest_paths(t):
            if t not in dist or t == s:
                return []
            paths = []

            def extend(path):
                u = path[-1]
                if u == t:
                    paths.append(list(path))
                    return
                for w in network.out_neighbors(u):
                    if dist.get(w) == dist[u] + 1 and dist[w] <= dist[t]:
                        path.append(w)
                        extend(path)
                        path.pop()

            extend([s])
            return paths

        for t in range(n):
            paths = all_shortest_paths(t)
            if not paths:
                continue
            for path in paths:
                for v in path[1:-1]:
                    score[v] += 1.0 / len(paths)
    return score


@pytest.fixture(scope="session")
def bundled_scorer() -> LexiconScorer:
    return LexiconScorer.bundled()


@pytest.fixture(scope="session")
def bundled_realizer() -> TemplateRealizer:
    return TemplateRealizer.bundled()
