"""Weighted undirected user-interaction graph built from reply records.

Reply directions are merged into undirected weights BEFORE thresholding,
so A->B x2 plus B->A x1 survives a min weight of 3. Self-replies are
dropped (self-loops distort modularity's degree terms). Node identity is
the user_id string; nodes get dense integer indices in sorted-id order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from chamberlens.errors import FormatError, ValidationError
from chamberlens.ingest import TweetRecord


class InteractionGraph:
    """Immutable weighted undirected graph.

    node_ids[i] is the user behind index i; edges hold (i, j, w) with
    i < j and integer w >= 1; adjacency[i] lists (neighbor, weight) pairs
    sorted by neighbor index.
    """

    __slots__ = ("node_ids", "edges", "adjacency", "_index")

    def __init__(self, node_ids: Sequence[str],
                 edges: Iterable[tuple[int, int, int]]):
        self.node_ids: tuple[str, ...] = tuple(node_ids)
        n = len(self.node_ids)
        canonical: list[tuple[int, int, int]] = []
        for a, b, w in edges:
            if a == b:
                raise ValidationError(f"self-loop on node {a} is not allowed")
            if not (0 <= a < n and 0 <= b < n):
                raise ValidationError(f"edge ({a},{b}) references unknown node")
            if w < 1:
                raise ValidationError(f"edge ({a},{b}) has non-positive weight {w}")
            canonical.append((a, b, int(w)) if a < b else (b, a, int(w)))
        canonical.sort()
        for prev, cur in zip(canonical, canonical[1:]):
            if prev[:2] == cur[:2]:
                raise ValidationError(f"duplicate edge {cur[:2]}")
        self.edges: tuple[tuple[int, int, int], ...] = tuple(canonical)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for a, b, w in self.edges:
            adj[a].append((b, w))
            adj[b].append((a, w))
        self.adjacency: tuple[tuple[tuple[int, int], ...], ...] = tuple(
            tuple(sorted(neighbors)) for neighbors in adj
        )
        self._index = {uid: i for i, uid in enumerate(self.node_ids)}
        if len(self._index) != n:
            raise ValidationError("node ids must be unique")

    @property
    def n_nodes(self) -> int:
        return len(self.node_ids)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        """Sum of edge weights (the m in modularity)."""
        return sum(w for _, _, w in self.edges)

    def degree(self, i: int) -> int:
        """Weighted degree of node i."""
        return sum(w for _, w in self.adjacency[i])

    def degrees(self) -> list[int]:
        return [self.degree(i) for i in range(self.n_nodes)]

    def index_of(self, user_id: str) -> int:
        return self._index[user_id]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InteractionGraph):
            return NotImplemented
        return self.node_ids == other.node_ids and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.node_ids, self.edges))

    def __repr__(self) -> str:
        return f"InteractionGraph(n_nodes={self.n_nodes}, n_edges={self.n_edges})"


def build_reply_graph(records: Iterable[TweetRecord]) -> InteractionGraph:
    """Aggregate reply tweets into undirected weighted edges.

    weight(a, b) counts replies a->b plus b->a; self-replies are dropped;
    users with no surviving edges do not become nodes.
    """
    weights: dict[tuple[str, str], int] = {}
    for rec in records:
        target = rec.reply_to_user_id
        if target is None or target == rec.user_id:
            continue
        key = (rec.user_id, target) if rec.user_id < target else (target, rec.user_id)
        weights[key] = weights.get(key, 0) + 1
    return graph_from_pair_weights(weights)


def graph_from_pair_weights(weights: Mapping[tuple[str, str], int]) -> InteractionGraph:
    """Build a graph from {(user_a, user_b): weight}; nodes are exactly the
    endpoints, indexed in sorted user_id order."""
    users: set[str] = set()
    for a, b in weights:
        users.add(a)
        users.add(b)
    node_ids = sorted(users)
    index = {uid: i for i, uid in enumerate(node_ids)}
    edges = [(index[a], index[b], w) for (a, b), w in weights.items()]
    return InteractionGraph(node_ids, edges)


def threshold_graph(g: InteractionGraph, min_weight: int = 3) -> InteractionGraph:
    """Keep exactly the edges with weight >= min_weight and drop nodes left
    with degree 0; the input graph is not modified."""
    if min_weight < 1:
        raise ValidationError(f"min_weight must be >= 1, got {min_weight}")
    kept = [(a, b, w) for a, b, w in g.edges if w >= min_weight]
    surviving = sorted({i for a, b, _ in kept for i in (a, b)})
    remap = {old: new for new, old in enumerate(surviving)}
    node_ids = [g.node_ids[i] for i in surviving]
    edges = [(remap[a], remap[b], w) for a, b, w in kept]
    return InteractionGraph(node_ids, edges)


def write_graph_json(g: InteractionGraph, path: str | Path) -> None:
    obj = {"nodes": list(g.node_ids), "edges": [[a, b, w] for a, b, w in g.edges]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, ensure_ascii=False, sort_keys=True)
        fh.write("\n")


def read_graph_json(path: str | Path) -> InteractionGraph:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    try:
        nodes = [str(u) for u in obj["nodes"]]
        edges = [(int(a), int(b), int(w)) for a, b, w in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: malformed graph file: {exc}") from exc
    return InteractionGraph(nodes, edges)
