"""Bounded-confidence engagement cascades.

A post with sentiment s spreads from its source in synchronous rounds: every
follower w of an engaged node joins when |s - x_w| <= epsilon. The source is
exempt from its own filter. Opinions never change; a node engages at most
once; the process is deterministic, so two routes must agree: the round-based
`propagate` and the path-based `reachability_oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import OpinionVector, SocialNetwork


@dataclass(frozen=True)
class CascadeConfig:
    """epsilon: confidence window; max_rounds: optional safety valve (None = run to closure)."""

    epsilon: float = 0.2
    max_rounds: int | None = None

    def validate(self) -> None:
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {self.epsilon!r}")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise ValueError("max_rounds must be positive when set")


@dataclass(frozen=True)
class CascadeResult:
    """Engaged set (source included), rounds that activated someone, and the inputs."""

    active: frozenset[int]
    rounds: int
    source: int
    sentiment: float

    @property
    def size(self) -> int:
        return len(self.active)


def _check_inputs(network: SocialNetwork, opinions: OpinionVector, source: int,
                  sentiment: float, config: CascadeConfig) -> None:
    config.validate()
    if len(opinions) != network.node_count:
        raise ValueError("opinions do not match network size")
    if not 0 <= source < network.node_count:
        raise ValueError(f"source {source} out of range")
    if not 0.0 <= sentiment <= 1.0:
        raise ValueError(f"sentiment must be in [0, 1], got {sentiment!r}")


def propagate(network: SocialNetwork, opinions: OpinionVector, source: int,
              sentiment: float, config: CascadeConfig = CascadeConfig()) -> CascadeResult:
    """Breadth-synchronous cascade; returns the engaged set including the source."""
    _check_inputs(network, opinions, source, sentiment, config)
    x = opinions.values
    eps = config.epsilon
    active = {source}
    contagious = [source]
    rounds = 0
    while contagious:
        fresh: list[int] = []
        for u in contagious:
            for w in network.out_neighbors(u):
                if w not in active and abs(sentiment - x[w]) <= eps:
                    active.add(w)
                    fresh.append(w)
        if not fresh:
            break
        rounds += 1
        if config.max_rounds is not None and rounds >= config.max_rounds:
            break
        contagious = fresh
    return CascadeResult(active=frozenset(active), rounds=rounds,
                         source=source, sentiment=float(sentiment))


def reachability_oracle(network: SocialNetwork, opinions: OpinionVector, source: int,
                        sentiment: float, config: CascadeConfig = CascadeConfig()) -> frozenset[int]:
    """Independent check: nodes reachable from the source through eligible nodes only.

    Plain depth-first search over {w : |sentiment - x_w| <= epsilon}, with the
    source exempt. Ignores max_rounds (full closure).
    """
    _check_inputs(network, opinions, source, sentiment, config)
    x = opinions.values
    eps = config.epsilon
    visited = {source}
    stack = [source]
    while stack:
        u = stack.pop()
        for w in network.out_neighbors(u):
            if w not in visited and abs(sentiment - x[w]) <= eps:
                visited.add(w)
                stack.append(w)
    return frozenset(visited)


def default_sentiment_grid(points: int = 101) -> np.ndarray:
    """Evenly spaced sentiment grid on [0, 1]."""
    if points < 1:
        raise ValueError("grid needs at least one point")
    return np.linspace(0.0, 1.0, points)


def sentiment_sweep(network: SocialNetwork, opinions: OpinionVector, source: int,
                    grid: Sequence[float], config: CascadeConfig = CascadeConfig()
                    ) -> list[tuple[float, int]]:
    """Engagement count for every grid sentiment, in grid order."""
    grid = [float(s) for s in grid]
    if not grid:
        raise ValueError("sentiment grid is empty")
    return [(s, propagate(network, opinions, source, s, config).size) for s in grid]


def engagement_upper_bound(network: SocialNetwork, opinions: OpinionVector, source: int,
                           grid: Sequence[float], config: CascadeConfig = CascadeConfig()
                           ) -> tuple[float, int]:
    """(best_sentiment, max_count) over the grid; ties go to the smallest sentiment."""
    best_s, best_c = None, -1
    for s, count in sentiment_sweep(network, opinions, source, grid, config):
        if count > best_c or (count == best_c and s < best_s):
            best_s, best_c = s, count
    return best_s, best_c
