"""Zachary karate-club benchmark graph (public domain, 34 nodes, 78 edges).

EDGES is the standard 0-indexed undirected edge list. REF_COMMUNITIES is a
4-community partition found by greedy modularity maximization on this graph;
REF_MODULARITY is its modularity under the standard weighted Newman formula,
frozen from an independent direct-formula evaluation over this edge list.
"""

from chamberlens.graph import InteractionGraph, graph_from_pair_weights

EDGES = [
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8),
    (0, 10), (0, 11), (0, 12), (0, 13), (0, 17), (0, 19), (0, 21), (0, 31),
    (1, 2), (1, 3), (1, 7), (1, 13), (1, 17), (1, 19), (1, 21), (1, 30),
    (2, 3), (2, 7), (2, 8), (2, 9), (2, 13), (2, 27), (2, 28), (2, 32),
    (3, 7), (3, 12), (3, 13),
    (4, 6), (4, 10),
    (5, 6), (5, 10), (5, 16),
    (6, 16),
    (8, 30), (8, 32), (8, 33),
    (9, 33),
    (13, 33),
    (14, 32), (14, 33),
    (15, 32), (15, 33),
    (18, 32), (18, 33),
    (19, 33),
    (20, 32), (20, 33),
    (22, 32), (22, 33),
    (23, 25), (23, 27), (23, 29), (23, 32), (23, 33),
    (24, 25), (24, 27), (24, 31),
    (25, 31),
    (26, 29), (26, 33),
    (27, 33),
    (28, 31), (28, 33),
    (29, 32), (29, 33),
    (30, 32), (30, 33),
    (31, 32), (31, 33),
    (32, 33),
]

N_NODES = 34

REF_COMMUNITIES = {
    1: [0, 1, 2, 3, 7, 11, 12, 13, 17, 19, 21],
    2: [4, 5, 6, 10, 16],
    3: [8, 9, 14, 15, 18, 20, 22, 26, 29, 30, 32, 33],
    4: [23, 24, 25, 27, 28, 31],
}

REF_MODULARITY = 0.4197896120973044


def karate_graph() -> InteractionGraph:
    """The karate graph with node i named n{i:02d} (so index == i)."""
    return graph_from_pair_weights(
        {(f"n{i:02d}", f"n{j:02d}"): 1 for i, j in EDGES})


def reference_assignment() -> list[int]:
    """REF_COMMUNITIES as a node-index -> community-id list."""
    memb = [0] * N_NODES
    for c, nodes in REF_COMMUNITIES.items():
        for v in nodes:
            memb[v] = c
    return memb
