"""Synthetic follower networks with planted communities and opinion structure.

Construction: power-law degrees and community sizes, stub matching that keeps
a (1 - mixing) fraction of each node's edges inside its community, one
directed edge per matched stub pair (orientation uniform at random), then a
two-level opinion model: each community draws an anchor opinion from
Beta(alpha, beta) and each node adopts it with probability `homophily`,
otherwise drawing its own Beta sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import GenerationError
from .graph import CommunityPartition, OpinionVector, SocialNetwork

_PROFILES = {
    "uniform": (1.0, 1.0),
    "positive": (8.0, 2.0),
    "negative": (2.0, 8.0),
    "neutral": (10.0, 10.0),
}

_MATCH_RETRIES = 50


def opinion_profile(name: str) -> tuple[float, float]:
    """Beta(alpha, beta) parameters for a named opinion climate."""
    try:
        return _PROFILES[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown opinion profile {name!r}; "
                         f"expected one of {sorted(_PROFILES)}") from None


@dataclass(frozen=True)
class GeneratorConfig:
    n: int = 300
    homophily: float = 0.75        # probability a node adopts its community's opinion
    mixing: float = 0.05           # fraction of stubs pointed outside the community
    alpha: float = 1.0
    beta: float = 1.0
    avg_degree: float = 10.0
    degree_exponent: float = 2.5
    community_exponent: float = 1.5
    max_degree: int | None = None  # default n // 10
    seed: int = 0

    def resolved_max_degree(self) -> int:
        return self.max_degree if self.max_degree is not None else max(self.n // 10, 2)

    def validate(self) -> None:
        problems = []
        if self.n < 10:
            problems.append("n must be >= 10")
        if not 0.0 <= self.homophily <= 1.0:
            problems.append("homophily must lie in [0, 1]")
        if not 0.0 < self.mixing < 1.0:
            problems.append("mixing must lie in (0, 1)")
        if self.alpha <= 0 or self.beta <= 0:
            problems.append("alpha and beta must be positive")
        if self.avg_degree < 2.0:
            problems.append("avg_degree must be >= 2")
        if self.degree_exponent <= 1.0:
            problems.append("degree_exponent must exceed 1")
        if self.community_exponent <= 1.0:
            problems.append("community_exponent must exceed 1")
        kmax = self.resolved_max_degree()
        if kmax < 2:
            problems.append("max_degree must be >= 2")
        elif self.avg_degree >= kmax:
            problems.append(f"avg_degree {self.avg_degree} must be below max_degree {kmax}")
        if problems:
            raise ValueError("; ".join(problems))


@dataclass(frozen=True)
class GeneratedNetwork:
    network: SocialNetwork
    opinions: OpinionVector
    communities: CommunityPartition
    community_opinions: tuple[float, ...]
    config: GeneratorConfig


def _truncated_power_mean(a: float, b: float, gamma: float) -> float:
    # mean of the continuous truncated power law p(k) ~ k^-gamma on [a, b]
    p, q = 1.0 - gamma, 2.0 - gamma
    return (p / q) * (b ** q - a ** q) / (b ** p - a ** p)


def _solve_k_min(avg: float, k_max: float, gamma: float) -> float:
    lo, hi = 1.0, float(k_max)
    if _truncated_power_mean(lo, k_max, gamma) >= avg:
        return lo  # cannot push the mean lower; accept the closest sequence
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _truncated_power_mean(mid, k_max, gamma) < avg:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _sample_power_law(rng: np.random.Generator, size: int, a: float, b: float,
                      gamma: float) -> np.ndarray:
    # inverse-CDF sampling of the continuous truncated power law
    p = 1.0 - gamma
    u = rng.random(size)
    return (a ** p + u * (b ** p - a ** p)) ** (1.0 / p)


def _community_sizes(rng: np.random.Generator, cfg: GeneratorConfig) -> list[int]:
    s_min = max(10, int(round(cfg.avg_degree)))
    s_max = max(2 * s_min, cfg.n // 4)
    if s_min >= cfg.n:
        return [cfg.n]  # too small to split: one community holds everyone
    sizes: list[int] = []
    while sum(sizes) < cfg.n:
        s = int(round(float(_sample_power_law(rng, 1, s_min, s_max, cfg.community_exponent)[0])))
        sizes.append(min(max(s, s_min), s_max))
    excess = sum(sizes) - cfg.n
    # trim the overshoot off the last community; fold it away if it got too small
    sizes[-1] -= excess
    if sizes[-1] < s_min and len(sizes) > 1:
        leftover = sizes.pop()
        for i in range(leftover):
            sizes[i % len(sizes)] += 1
    return sizes


def _match_stubs(rng: np.random.Generator, stubs: np.ndarray,
                 forbidden_pairs: set[tuple[int, int]],
                 same_community: np.ndarray | None) -> tuple[list[tuple[int, int]], int]:
    """Pair stubs uniformly, rejecting self-loops, duplicates, and (optionally)
    pairs inside one community. Returns (pairs, unmatched_stub_count)."""
    pairs: list[tuple[int, int]] = []
    pool = np.array(stubs, dtype=np.int64)
    if pool.size % 2 == 1:
        # drop one stub from the heaviest participant (deterministic)
        counts = np.bincount(pool)
        heavy = int(np.argmax(counts))
        drop = int(np.flatnonzero(pool == heavy)[0])
        pool = np.delete(pool, drop)
    for _ in range(_MATCH_RETRIES):
        if pool.size == 0:
            break
        rng.shuffle(pool)
        leftovers: list[int] = []
        for k in range(0, pool.size - 1, 2):
            u, v = int(pool[k]), int(pool[k + 1])
            key = (u, v) if u < v else (v, u)
            bad = (u == v or key in forbidden_pairs
                   or (same_community is not None and same_community[u] == same_community[v]))
            if bad:
                leftovers.extend((u, v))
            else:
                forbidden_pairs.add(key)
                pairs.append(key)
        if len(leftovers) == pool.size:
            break  # no progress; every remaining combination is rejected
        pool = np.array(leftovers, dtype=np.int64)
    return pairs, int(pool.size)


def generate(config: GeneratorConfig) -> GeneratedNetwork:
    """Build a network + opinions + planted partition; bit-reproducible per seed."""
    config.validate()
    rng = np.random.default_rng(config.seed)
    n = config.n
    k_max = config.resolved_max_degree()
    k_min = _solve_k_min(config.avg_degree, k_max, config.degree_exponent)
    degrees = np.clip(np.rint(_sample_power_law(rng, n, k_min, k_max,
                                                config.degree_exponent)),
                      1, k_max).astype(np.int64)

    sizes = _community_sizes(rng, config)
    order = rng.permutation(n)
    community = np.empty(n, dtype=np.int64)
    start = 0
    for c, size in enumerate(sizes):
        community[order[start:start + size]] = c
        start += size
    partition = CommunityPartition(community)
    size_of = np.array([partition.size(c) for c in range(partition.community_count)])

    if partition.community_count == 1:
        internal = degrees.copy()  # nowhere else to point
    else:
        internal = np.rint((1.0 - config.mixing) * degrees).astype(np.int64)
        internal = np.minimum(internal, size_of[community] - 1)  # must fit in the community
        internal = np.minimum(internal, degrees)
    external = degrees - internal

    forbidden: set[tuple[int, int]] = set()
    undirected: list[tuple[int, int]] = []
    unmatched = 0
    for c in range(partition.community_count):
        members = np.flatnonzero(community == c)
        stubs = np.repeat(members, internal[members])
        pairs, left = _match_stubs(rng, stubs, forbidden, same_community=None)
        undirected.extend(pairs)
        unmatched += left
    ext_stubs = np.repeat(np.arange(n), external)
    pairs, left = _match_stubs(rng, ext_stubs, forbidden,
                               same_community=community if partition.community_count > 1 else None)
    undirected.extend(pairs)
    unmatched += left

    total_stubs = int(degrees.sum())
    if total_stubs and unmatched > 0.1 * total_stubs:
        raise GenerationError(
            f"degree sequence infeasible: {unmatched} of {total_stubs} stubs "
            f"unmatched after {_MATCH_RETRIES} retries")

    edges = []
    for u, v in undirected:
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
    network = SocialNetwork(n, edges)

    anchors = np.array([rng.beta(config.alpha, config.beta)
                        for _ in range(partition.community_count)])
    opinions = np.empty(n)
    for node in range(n):
        if rng.random() < config.homophily:
            opinions[node] = anchors[community[node]]
        else:
            opinions[node] = rng.beta(config.alpha, config.beta)

    return GeneratedNetwork(network=network,
                            opinions=OpinionVector(opinions),
                            communities=partition,
                            community_opinions=tuple(float(a) for a in anchors),
                            config=config)


def measure_homophily(network: SocialNetwork, opinions: OpinionVector) -> float:
    """1 minus the mean opinion gap across edges; 1.0 means perfectly alike neighbors."""
    if network.edge_count == 0:
        raise ValueError("homophily needs at least one edge")
    if len(opinions) != network.node_count:
        raise ValueError("opinions do not match network size")
    src, dst = network.edge_arrays()
    x = opinions.values
    return float(1.0 - np.abs(x[src] - x[dst]).mean())
