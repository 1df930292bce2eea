"""Louvain modularity maximization and top-community selection.

Modularity is the standard Newman weighted form
Q = sum_c [ sigma_in_c / (2m) - resolution * (sigma_tot_c / (2m))^2 ]
with m the total edge weight, sigma_in_c twice the intra-community edge
weight and sigma_tot_c the total weighted degree of community c.

The optimizer is deliberately single-threaded: Louvain's local moves are
order-dependent, and the node visit order is shuffled deterministically
from the seed so results are bit-reproducible.
"""

from __future__ import annotations

import json
import logging
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from chamberlens.errors import FormatError, ValidationError
from chamberlens.graph import InteractionGraph

log = logging.getLogger(__name__)

# A gain below this counts as "no improvement" both for single moves and
# for pass convergence.
GAIN_EPSILON = 1e-9


@dataclass(frozen=True)
class Partition:
    """Node-index -> community-id mapping with its modularity score.

    Community ids are dense: every id in 0..n_communities-1 is non-empty.
    """

    assignment: tuple[int, ...]
    modularity: float

    def __post_init__(self):
        if not self.assignment:
            raise ValidationError("partition must cover at least one node")
        ids = set(self.assignment)
        if ids != set(range(len(ids))):
            raise ValidationError("community ids must be dense 0..C-1")

    @property
    def n_communities(self) -> int:
        return max(self.assignment) + 1

    def members(self, community_id: int) -> list[int]:
        return [i for i, c in enumerate(self.assignment) if c == community_id]

    def communities(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_communities)]
        for i, c in enumerate(self.assignment):
            out[c].append(i)
        return out


def modularity(g: InteractionGraph, assignment: Sequence[int],
               resolution: float = 1.0) -> float:
    """Weighted Newman modularity of an assignment; labels need not be dense.

    Deterministic and invariant under any relabeling of community ids.
    """
    if g.n_nodes == 0 or g.total_weight == 0:
        raise ValidationError("modularity is undefined for an empty graph")
    if len(assignment) != g.n_nodes:
        raise ValidationError(
            f"assignment covers {len(assignment)} nodes, graph has {g.n_nodes}")
    m = float(g.total_weight)
    sigma_in: dict[int, float] = {}
    sigma_tot: dict[int, float] = {}
    for i in range(g.n_nodes):
        sigma_tot[assignment[i]] = sigma_tot.get(assignment[i], 0.0) + g.degree(i)
    for a, b, w in g.edges:
        if assignment[a] == assignment[b]:
            c = assignment[a]
            sigma_in[c] = sigma_in.get(c, 0.0) + 2.0 * w
    two_m = 2.0 * m
    # fsum is correctly rounded, so the result is exactly independent of
    # community id labeling (which would otherwise reorder the summation).
    return math.fsum(
        sigma_in.get(c, 0.0) / two_m - resolution * (sigma_tot[c] / two_m) ** 2
        for c in sorted(sigma_tot))


def louvain(g: InteractionGraph, seed: int, resolution: float = 1.0) -> Partition:
    """Two-phase Louvain: greedy local moves by modularity gain, then graph
    aggregation, repeated until no move improves Q."""
    partition, _ = louvain_trace(g, seed, resolution)
    return partition


def louvain_trace(g: InteractionGraph, seed: int,
                  resolution: float = 1.0) -> tuple[Partition, tuple[float, ...]]:
    """Louvain plus the modularity value recorded after every local phase
    (the trace is non-decreasing)."""
    if g.n_nodes == 0 or g.total_weight == 0:
        raise ValidationError("louvain requires a non-empty graph")
    n_orig = g.n_nodes
    m = float(g.total_weight)
    rng = random.Random(seed)

    # Working multigraph at the current aggregation level. Aggregated
    # communities carry self-loops (intra weight), which the public
    # InteractionGraph forbids, hence the separate representation.
    adj: list[dict[int, float]] = [dict(nbrs) for nbrs in g.adjacency]
    self_w: list[float] = [0.0] * n_orig
    membership = list(range(n_orig))  # original node -> current-level node
    trace: list[float] = []

    while True:
        comm = _local_phase(adj, self_w, m, resolution, rng)
        flat = [comm[membership[v]] for v in range(n_orig)]
        trace.append(modularity(g, flat, resolution))
        n_comms = len(set(comm))
        if n_comms == len(adj):
            break  # zero moves: every node kept its singleton community
        adj, self_w, relabel = _aggregate(adj, self_w, comm)
        membership = [relabel[comm[membership[v]]] for v in range(n_orig)]

    assignment = _dense_relabel([comm[membership[v]] for v in range(n_orig)])
    q = modularity(g, assignment, resolution)
    return Partition(tuple(assignment), q), tuple(trace)


def _local_phase(adj: list[dict[int, float]], self_w: list[float], m: float,
                 resolution: float, rng: random.Random) -> list[int]:
    """Greedy node moves until a full pass makes none; returns the community
    of each level node (singletons that never moved keep their own id)."""
    n = len(adj)
    degrees = [sum(adj[i].values()) + 2.0 * self_w[i] for i in range(n)]
    comm = list(range(n))
    sigma_tot = degrees[:]
    two_m_sq = 2.0 * m * m

    order = list(range(n))
    while True:
        rng.shuffle(order)
        moves = 0
        for i in order:
            c_old = comm[i]
            k_i = degrees[i]
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                cj = comm[j]
                links[cj] = links.get(cj, 0.0) + w
            sigma_tot[c_old] -= k_i
            # Gain of placing i (currently detached) into community c:
            #   k_{i,c}/m - resolution * sigma_tot_c * k_i / (2 m^2)
            best_c = c_old
            best_gain = links.get(c_old, 0.0) / m \
                - resolution * sigma_tot[c_old] * k_i / two_m_sq
            for c in sorted(links):
                if c == c_old:
                    continue
                gain = links[c] / m - resolution * sigma_tot[c] * k_i / two_m_sq
                if gain > best_gain + GAIN_EPSILON:
                    best_c, best_gain = c, gain
            sigma_tot[best_c] += k_i
            if best_c != c_old:
                comm[i] = best_c
                moves += 1
        if moves == 0:
            return comm


def _aggregate(adj: list[dict[int, float]], self_w: list[float],
               comm: list[int]) -> tuple[list[dict[int, float]], list[float], dict[int, int]]:
    """Collapse communities into nodes; intra weight becomes a self-loop."""
    relabel = {c: i for i, c in enumerate(sorted(set(comm)))}
    n_new = len(relabel)
    new_adj: list[dict[int, float]] = [{} for _ in range(n_new)]
    new_self = [0.0] * n_new
    for i, nbrs in enumerate(adj):
        ci = relabel[comm[i]]
        new_self[ci] += self_w[i]
        for j, w in nbrs.items():
            if j < i:
                continue  # each undirected edge once
            cj = relabel[comm[j]]
            if ci == cj:
                new_self[ci] += w
            else:
                new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
                new_adj[cj][ci] = new_adj[cj].get(ci, 0.0) + w
    return new_adj, new_self, relabel


def _dense_relabel(raw: list[int]) -> list[int]:
    """Relabel communities 0..C-1 by first appearance in node order."""
    mapping: dict[int, int] = {}
    out = []
    for c in raw:
        if c not in mapping:
            mapping[c] = len(mapping)
        out.append(mapping[c])
    return out


def internal_density(g: InteractionGraph, members: Sequence[int]) -> float:
    """Weighted internal edge density sigma_in / (|c| * (|c|-1)); zero for
    singletons."""
    size = len(members)
    if size < 2:
        return 0.0
    member_set = set(members)
    intra = sum(w for a, b, w in g.edges if a in member_set and b in member_set)
    return 2.0 * intra / (size * (size - 1))


def select_top_communities(p: Partition, g: InteractionGraph, k: int = 6,
                           min_size: int = 10) -> list[int]:
    """Ids of the up-to-k densest communities with at least min_size nodes,
    ranked by (internal density, size, lowest id)."""
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    groups = p.communities()
    qualifying = [cid for cid, members in enumerate(groups)
                  if len(members) >= min_size]
    ranked = sorted(
        qualifying,
        key=lambda cid: (-internal_density(g, groups[cid]), -len(groups[cid]), cid),
    )
    chosen = ranked[:k]
    if len(chosen) < k:
        log.warning("only %d of %d requested communities qualify (min_size=%d)",
                    len(chosen), k, min_size)
    return chosen


def write_partition_json(p: Partition, g: InteractionGraph,
                         selected: Sequence[int], path: str | Path) -> None:
    communities = {
        str(cid): sorted(g.node_ids[i] for i in members)
        for cid, members in enumerate(p.communities())
    }
    obj = {
        "modularity": p.modularity,
        "communities": communities,
        "selected": list(selected),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, ensure_ascii=False, sort_keys=True)
        fh.write("\n")


def read_partition_json(path: str | Path) -> tuple[float, dict[int, list[str]], list[int]]:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    try:
        communities = {int(cid): [str(u) for u in users]
                       for cid, users in obj["communities"].items()}
        modularity_value = float(obj["modularity"])
        selected = [int(c) for c in obj.get("selected", [])]
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise FormatError(f"{path}: malformed partition file: {exc}") from exc
    return modularity_value, communities, selected
