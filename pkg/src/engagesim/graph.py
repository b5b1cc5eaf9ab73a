"""Directed social graph: ingestion, centrality, communities, injection placement.

Nodes are dense integers 0..N-1. An edge (u, v) means content posted at u is
seen by v (v follows u), so cascades travel along out-edges. Graphs and the
vectors attached to them are immutable once built; analytics never mutate
their inputs.
"""

from __future__ import annotations

import logging
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence, TextIO

import numpy as np

from .errors import DataError

logger = logging.getLogger(__name__)

_INT_LABEL = re.compile(r"[+-]?\d+\Z")


def _read_lines(source: TextIO | str | "os.PathLike[str]"):
    """Yield (line_number, text) from an open stream or a path."""
    if hasattr(source, "read"):
        for i, line in enumerate(source, 1):
            yield i, line
    else:
        with open(source, "r", encoding="utf-8") as handle:
            for i, line in enumerate(handle, 1):
                yield i, line


def _split_record(line: str) -> list[str]:
    # accepts "a,b" and "a b"; collapses repeated separators
    return [tok for tok in re.split(r"[,\s]+", line.strip()) if tok]


class SocialNetwork:
    """Immutable directed graph over dense node ids.

    Out-neighbors are stored sorted ascending, so every traversal that walks
    them in storage order is deterministic.
    """

    __slots__ = ("_n", "_adj", "_labels", "_label_ids", "_edge_count",
                 "_out_deg", "_in_deg", "_edge_arrays")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]],
                 labels: Sequence[str] | None = None):
        if node_count < 1:
            raise ValueError("node_count must be positive")
        self._n = int(node_count)
        adj: list[list[int]] = [[] for _ in range(self._n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < self._n and 0 <= v < self._n):
                raise ValueError(f"edge ({u}, {v}) out of range for {self._n} nodes")
            if u == v:
                raise ValueError(f"self-loop ({u}, {u}) rejected")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v}) rejected")
            seen.add((u, v))
            adj[u].append(v)
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        self._edge_count = len(seen)
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != self._n:
                raise ValueError("labels length must equal node_count")
            self._label_ids = {lab: i for i, lab in enumerate(labels)}
            if len(self._label_ids) != self._n:
                raise ValueError("labels must be unique")
        else:
            self._label_ids = None
        self._labels = labels
        out_deg = np.array([len(a) for a in self._adj], dtype=np.int64)
        in_deg = np.zeros(self._n, dtype=np.int64)
        for nbrs in self._adj:
            for v in nbrs:
                in_deg[v] += 1
        out_deg.flags.writeable = False
        in_deg.flags.writeable = False
        self._out_deg = out_deg
        self._in_deg = in_deg
        self._edge_arrays = None

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    def out_neighbors(self, u: int) -> tuple[int, ...]:
        return self._adj[u]

    def out_degree(self, u: int) -> int:
        return len(self._adj[u])

    def in_degree(self, u: int) -> int:
        return int(self._in_deg[u])

    @property
    def out_degrees(self) -> np.ndarray:
        return self._out_deg

    @property
    def in_degrees(self) -> np.ndarray:
        return self._in_deg

    def edges(self):
        """Iterate edges as (u, v) in ascending (u, v) order."""
        for u, nbrs in enumerate(self._adj):
            for v in nbrs:
                yield u, v

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edges as parallel (src, dst) int arrays, cached."""
        if self._edge_arrays is None:
            src = np.empty(self._edge_count, dtype=np.int64)
            dst = np.empty(self._edge_count, dtype=np.int64)
            k = 0
            for u, nbrs in enumerate(self._adj):
                for v in nbrs:
                    src[k] = u
                    dst[k] = v
                    k += 1
            src.flags.writeable = False
            dst.flags.writeable = False
            self._edge_arrays = (src, dst)
        return self._edge_arrays

    def label_of(self, node: int) -> str:
        if self._labels is None:
            return str(node)
        return self._labels[node]

    def id_of(self, label: str) -> int:
        if self._label_ids is None:
            node = int(label)
            if not 0 <= node < self._n:
                raise KeyError(label)
            return node
        return self._label_ids[label]

    def __repr__(self):
        return f"SocialNetwork(nodes={self._n}, edges={self._edge_count})"


def _dense_label_order(labels: set[str]) -> list[str]:
    # numeric sort when every label is an integer literal, else lexicographic
    if all(_INT_LABEL.match(lab) for lab in labels):
        return sorted(labels, key=int)
    return sorted(labels)


def load_edge_list(source: TextIO | str) -> tuple[SocialNetwork, int]:
    """Parse `src,dst` (or whitespace-separated) lines into a SocialNetwork.

    Lines starting with '#' and blank lines are skipped. Arbitrary node labels
    are mapped to dense ids in sorted order (numeric when all labels are
    integers). Self-loops and duplicate edges are dropped; the second return
    value is the count of dropped lines. Nodes mentioned only on dropped lines
    still exist in the graph.
    """
    labels: set[str] = set()
    raw_pairs: list[tuple[str, str]] = []
    for lineno, line in _read_lines(source):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        toks = _split_record(text)
        if len(toks) != 2:
            raise DataError(f"edge list line {lineno}: expected 'src,dst', got {text!r}")
        raw_pairs.append((toks[0], toks[1]))
        labels.add(toks[0])
        labels.add(toks[1])
    if not raw_pairs:
        raise DataError("edge list is empty")
    order = _dense_label_order(labels)
    ids = {lab: i for i, lab in enumerate(order)}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    dropped = 0
    for a, b in raw_pairs:
        u, v = ids[a], ids[b]
        if u == v or (u, v) in seen:
            dropped += 1
            continue
        seen.add((u, v))
        edges.append((u, v))
    if dropped:
        logger.warning("edge list: dropped %d self-loop/duplicate line(s)", dropped)
    identity = all(lab == str(i) for i, lab in enumerate(order))
    network = SocialNetwork(len(order), edges, labels=None if identity else order)
    return network, dropped


class OpinionVector:
    """Read-only per-node opinions in [0, 1], aligned with dense node ids."""

    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.array(values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("opinions must be a non-empty 1-d vector")
        if not np.isfinite(arr).all():
            raise ValueError("opinions must be finite")
        if (arr < 0.0).any() or (arr > 1.0).any():
            bad = int(np.argmax((arr < 0.0) | (arr > 1.0)))
            raise ValueError(f"opinion for node {bad} is {arr[bad]!r}, outside [0, 1]")
        arr.flags.writeable = False
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self):
        return self._values.size

    def __getitem__(self, node):
        return float(self._values[node])

    def __iter__(self):
        return iter(self._values)

    def __repr__(self):
        return f"OpinionVector(n={self._values.size})"


def load_opinions(source: TextIO | str, network: SocialNetwork) -> OpinionVector:
    """Parse `node,value` lines into an OpinionVector for `network`.

    Every node must receive exactly one opinion; values must lie in [0, 1].
    """
    values = np.full(network.node_count, np.nan)
    for lineno, line in _read_lines(source):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        toks = _split_record(text)
        if len(toks) != 2:
            raise DataError(f"opinion file line {lineno}: expected 'node,value', got {text!r}")
        try:
            node = network.id_of(toks[0])
        except (KeyError, ValueError):
            raise DataError(f"opinion file line {lineno}: unknown node {toks[0]!r}") from None
        try:
            val = float(toks[1])
        except ValueError:
            raise DataError(f"opinion file line {lineno}: bad value {toks[1]!r}") from None
        if not 0.0 <= val <= 1.0:
            raise DataError(f"opinion file line {lineno}: value {val!r} outside [0, 1]")
        if not np.isnan(values[node]):
            raise DataError(f"opinion file line {lineno}: node {toks[0]!r} assigned twice")
        values[node] = val
    missing = np.flatnonzero(np.isnan(values))
    if missing.size:
        raise DataError(f"node {network.label_of(int(missing[0]))!r} has no opinion "
                        f"({missing.size} node(s) missing)")
    return OpinionVector(values)


class CommunityPartition:
    """Dense community labels 0..C-1, exactly one per node, no empty community."""

    __slots__ = ("_assignment", "_members")

    def __init__(self, assignment):
        arr = np.array(assignment, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("assignment must be a non-empty 1-d vector")
        if (arr < 0).any():
            raise ValueError("community ids must be non-negative")
        c = int(arr.max()) + 1
        present = np.zeros(c, dtype=bool)
        present[arr] = True
        if not present.all():
            missing = int(np.argmin(present))
            raise ValueError(f"community ids not dense: id {missing} is empty")
        arr.flags.writeable = False
        self._assignment = arr
        members: list[list[int]] = [[] for _ in range(c)]
        for node, comm in enumerate(arr):
            members[comm].append(node)
        self._members = tuple(tuple(m) for m in members)

    @property
    def assignment(self) -> np.ndarray:
        return self._assignment

    @property
    def community_count(self) -> int:
        return len(self._members)

    def of(self, node: int) -> int:
        return int(self._assignment[node])

    def size(self, community: int) -> int:
        return len(self._members[community])

    def members(self, community: int) -> tuple[int, ...]:
        return self._members[community]

    def __len__(self):
        return self._assignment.size

    def __eq__(self, other):
        if not isinstance(other, CommunityPartition):
            return NotImplemented
        return self._members == other._members

    def __hash__(self):
        return hash(self._members)

    def __repr__(self):
        return f"CommunityPartition(nodes={len(self)}, communities={self.community_count})"


def load_communities(source: TextIO | str, network: SocialNetwork) -> CommunityPartition:
    """Parse `node,community` sidecar lines; community labels are relabeled densely."""
    raw = {}
    for lineno, line in _read_lines(source):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        toks = _split_record(text)
        if len(toks) != 2:
            raise DataError(f"community file line {lineno}: expected 'node,community', got {text!r}")
        try:
            node = network.id_of(toks[0])
        except (KeyError, ValueError):
            raise DataError(f"community file line {lineno}: unknown node {toks[0]!r}") from None
        if node in raw:
            raise DataError(f"community file line {lineno}: node {toks[0]!r} assigned twice")
        raw[node] = toks[1]
    if len(raw) != network.node_count:
        raise DataError(f"community file covers {len(raw)} of {network.node_count} nodes")
    order = _dense_label_order(set(raw.values()))
    ids = {lab: i for i, lab in enumerate(order)}
    return CommunityPartition([ids[raw[node]] for node in range(network.node_count)])


class PlacementStrategy(Enum):
    """Where to inject content: opinion extremes, community size, or centrality."""

    ECHO_LOW = "echo-low"
    ECHO_HIGH = "echo-high"
    COMM_LARGEST = "comm-largest"
    COMM_SMALLEST = "comm-smallest"
    CENTRAL = "central"

    @classmethod
    def parse(cls, text: str) -> "PlacementStrategy":
        norm = text.strip().lower().replace("_", "-")
        for member in cls:
            if member.value == norm:
                return member
        raise ValueError(f"unknown placement strategy {text!r}; "
                         f"expected one of {[m.value for m in cls]}")

    def __str__(self):
        return self.value


def betweenness_centrality(network: SocialNetwork, *, sample_threshold: int = 20_000,
                           sample_size: int = 2_000, seed: int = 0) -> dict[int, float]:
    """Directed betweenness via Brandes' accumulation, unnormalized.

    Exact (all sources) up to `sample_threshold` nodes; beyond that a
    seeded source sample of `sample_size` is used and contributions are
    rescaled by N / sample_size.
    """
    n = network.node_count
    if n > sample_threshold:
        rng = np.random.default_rng(seed)
        sources = sorted(int(s) for s in rng.choice(n, size=sample_size, replace=False))
        scale = n / sample_size
    else:
        sources = range(n)
        scale = 1.0
    score = np.zeros(n)
    for s in sources:
        # single-source shortest-path counts (unweighted BFS)
        sigma = np.zeros(n)
        sigma[s] = 1.0
        dist = np.full(n, -1, dtype=np.int64)
        dist[s] = 0
        preds: list[list[int]] = [[] for _ in range(n)]
        order: list[int] = []
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in network.out_neighbors(u):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                if dist[w] == dist[u] + 1:
                    sigma[w] += sigma[u]
                    preds[w].append(u)
        # dependency accumulation, farthest first
        delta = np.zeros(n)
        for w in reversed(order):
            for u in preds[w]:
                delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w])
            if w != s:
                score[w] += delta[w]
    if scale != 1.0:
        score *= scale
    return {v: float(score[v]) for v in range(n)}


def newman_modularity(network: SocialNetwork, partition: CommunityPartition) -> float:
    """Directed modularity: intra-edge fraction minus the in/out-degree null model."""
    m = network.edge_count
    if m == 0:
        raise ValueError("modularity is undefined for a graph with no edges")
    if len(partition) != network.node_count:
        raise ValueError("partition size does not match network")
    src, dst = network.edge_arrays()
    comm = partition.assignment
    intra = int(np.count_nonzero(comm[src] == comm[dst]))
    c = partition.community_count
    out_c = np.bincount(comm, weights=network.out_degrees, minlength=c)
    in_c = np.bincount(comm, weights=network.in_degrees, minlength=c)
    return float(intra / m - np.dot(out_c, in_c) / (m * m))


def _louvain_one_level(n: int, src: np.ndarray, dst: np.ndarray, weight: np.ndarray,
                       m: float, rng: np.random.Generator) -> tuple[np.ndarray, bool]:
    """Local-move phase on a weighted digraph; returns (assignment, moved_any)."""
    out_w: list[dict[int, float]] = [dict() for _ in range(n)]
    in_w: list[dict[int, float]] = [dict() for _ in range(n)]
    s_out = np.zeros(n)
    s_in = np.zeros(n)
    for u, v, w in zip(src, dst, weight):
        u, v, w = int(u), int(v), float(w)
        s_out[u] += w
        s_in[v] += w
        if u == v:
            continue  # self-loop weight never moves between communities
        out_w[u][v] = out_w[u].get(v, 0.0) + w
        in_w[v][u] = in_w[v].get(u, 0.0) + w
    comm = np.arange(n)
    comm_out = s_out.copy()
    comm_in = s_in.copy()
    moved_any = False
    while True:
        moved_this_sweep = False
        for u in rng.permutation(n):
            u = int(u)
            home = int(comm[u])
            # take u out of its community
            comm_out[home] -= s_out[u]
            comm_in[home] -= s_in[u]
            link: dict[int, float] = {home: 0.0}
            for v, w in out_w[u].items():
                link[comm[v]] = link.get(comm[v], 0.0) + w
            for v, w in in_w[u].items():
                link[comm[v]] = link.get(comm[v], 0.0) + w
            def gain_of(cand: int) -> float:
                return (link[cand] / m
                        - (s_out[u] * comm_in[cand] + s_in[u] * comm_out[cand]) / (m * m))

            # staying put wins ties: only strictly improving moves are taken,
            # and among those the smallest community id wins
            best_c, best_gain = home, gain_of(home)
            for cand in sorted(link):
                if cand == home:
                    continue
                gain = gain_of(cand)
                if gain > best_gain + 1e-12:
                    best_c, best_gain = cand, gain
            comm_out[best_c] += s_out[u]
            comm_in[best_c] += s_in[u]
            if best_c != home:
                comm[u] = best_c
                moved_this_sweep = True
                moved_any = True
        if not moved_this_sweep:
            break
    return comm, moved_any


def louvain(network: SocialNetwork, seed: int = 0) -> CommunityPartition:
    """Greedy modularity communities on the directed graph.

    Deterministic for a fixed seed (the seed drives node visit order). The
    result's modularity is never below the all-singletons partition, because
    every accepted move strictly increases modularity.
    """
    if network.edge_count == 0:
        raise ValueError("community detection needs at least one edge")
    rng = np.random.default_rng(seed)
    src, dst = network.edge_arrays()
    src = src.astype(np.int64).copy()
    dst = dst.astype(np.int64).copy()
    weight = np.ones(len(src))
    m = float(weight.sum())
    n = network.node_count
    node_map = np.arange(n)  # original node -> current supernode
    while True:
        comm, moved = _louvain_one_level(n, src, dst, weight, m, rng)
        # densify level labels
        uniq, dense = np.unique(comm, return_inverse=True)
        if not moved or len(uniq) == n:
            break
        node_map = dense[node_map]
        # aggregate the graph: communities become supernodes, weights sum
        n = len(uniq)
        agg: dict[tuple[int, int], float] = {}
        for u, v, w in zip(dense[src], dense[dst], weight):
            key = (int(u), int(v))
            agg[key] = agg.get(key, 0.0) + float(w)
        items = sorted(agg.items())
        src = np.array([k[0] for k, _ in items], dtype=np.int64)
        dst = np.array([k[1] for k, _ in items], dtype=np.int64)
        weight = np.array([w for _, w in items])
    # canonical labels: communities numbered by their smallest original node
    first_seen: dict[int, int] = {}
    relabel = np.empty(len(node_map), dtype=np.int64)
    for node in range(len(node_map)):
        c = int(node_map[node])
        if c not in first_seen:
            first_seen[c] = len(first_seen)
        relabel[node] = first_seen[c]
    return CommunityPartition(relabel)


def _argmax_node(candidates: Iterable[int], key) -> int:
    """Max by key, ties broken toward the smallest node id."""
    best, best_key = None, None
    for node in candidates:
        k = key(node)
        if best is None or k > best_key or (k == best_key and node < best):
            best, best_key = node, k
    if best is None:
        raise ValueError("no candidates")
    return best


def select_injection(network: SocialNetwork, opinions: OpinionVector,
                     partition: CommunityPartition | None,
                     strategy: PlacementStrategy) -> int:
    """Pick the injection node for a strategy.

    Community strategies choose a community first (mean opinion extremes or
    size extremes, ties toward the smaller community id), then the member
    with the highest in-community out-degree (ties toward the smaller node
    id). CENTRAL takes the global betweenness argmax and needs no partition.
    """
    if len(opinions) != network.node_count:
        raise ValueError("opinions do not match network size")
    if strategy is PlacementStrategy.CENTRAL:
        bc = betweenness_centrality(network)
        return _argmax_node(range(network.node_count), lambda v: bc[v])
    if partition is None or partition.community_count == 0:
        raise ValueError(f"{strategy} placement requires a community partition")
    if len(partition) != network.node_count:
        raise ValueError("partition does not match network size")
    x = opinions.values
    comms = range(partition.community_count)
    if strategy is PlacementStrategy.ECHO_LOW:
        target = min(comms, key=lambda c: (float(x[list(partition.members(c))].mean()), c))
    elif strategy is PlacementStrategy.ECHO_HIGH:
        target = min(comms, key=lambda c: (-float(x[list(partition.members(c))].mean()), c))
    elif strategy is PlacementStrategy.COMM_LARGEST:
        target = min(comms, key=lambda c: (-partition.size(c), c))
    elif strategy is PlacementStrategy.COMM_SMALLEST:
        target = min(comms, key=lambda c: (partition.size(c), c))
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unhandled strategy {strategy}")
    members = set(partition.members(target))

    def reach(u: int) -> int:
        return sum(1 for w in network.out_neighbors(u) if w in members)

    return _argmax_node(partition.members(target), reach)
