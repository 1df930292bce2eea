"""Shared fixtures, independent oracles, and hypothesis strategies.

The oracles here deliberately recompute quantities through a different
route than the package (dense pairwise formulas, exhaustive enumeration)
so agreement tests are meaningful.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from chamberlens.graph import InteractionGraph, graph_from_pair_weights
from chamberlens.style import N_FALLACY, StyleVector

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


# ---------------------------------------------------------------- oracles


def oracle_modularity(g: InteractionGraph, assignment, resolution: float = 1.0) -> float:
    """Direct pairwise-formula modularity over a dense adjacency matrix:
    Q = sum_ij (A_ij - r*k_i*k_j/(2m)) * [c_i == c_j] / (2m).

    Independent of the package's per-community-sum implementation.
    """
    n = g.n_nodes
    a = np.zeros((n, n))
    for i, j, w in g.edges:
        a[i, j] += w
        a[j, i] += w
    deg = a.sum(axis=1)
    two_m = a.sum()
    memb = np.asarray(assignment)
    same = memb[:, None] == memb[None, :]
    b = a - resolution * np.outer(deg, deg) / two_m
    return float((b * same).sum() / two_m)


def oracle_match_sum(counts: np.ndarray) -> int:
    """Brute-force permutation search for the maximum assignment sum.

    Enumerates every injective row-to-column assignment; vectorized over
    the permutation axis. Only sane for dims <= 8.
    """
    counts = np.asarray(counts)
    if counts.shape[0] > counts.shape[1]:
        counts = counts.T
    r, c = counts.shape
    perms = np.array(list(itertools.permutations(range(c), r)), dtype=np.intp)
    sums = counts[np.arange(r)[None, :], perms].sum(axis=1)
    return int(sums.max())


def iter_set_partitions(n: int):
    """Yield every partition of range(n) as a dense membership tuple
    (restricted-growth strings), Bell(n) of them in total."""
    memb = [0] * n

    def rec(i: int, n_used: int):
        if i == n:
            yield tuple(memb)
            return
        for c in range(n_used + 1):
            memb[i] = c
            yield from rec(i + 1, max(n_used, c + 1))

    yield from rec(0, 0)


def connected_components(g: InteractionGraph) -> list[set[int]]:
    """Component node-index sets via union-find, independent of any
    package traversal code."""
    parent = list(range(g.n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in g.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, set[int]] = {}
    for v in range(g.n_nodes):
        groups.setdefault(find(v), set()).add(v)
    return list(groups.values())


# ----------------------------------------------------------- generators


def random_graph(rng: np.random.Generator, n_max: int = 30, p: float = 0.3,
                 w_max: int = 5) -> InteractionGraph:
    """Random weighted graph with 2..n_max nodes and at least one edge."""
    while True:
        n = int(rng.integers(2, n_max + 1))
        weights = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    weights[(f"u{i:03d}", f"u{j:03d}")] = int(rng.integers(1, w_max + 1))
        if weights:
            return graph_from_pair_weights(weights)


def make_vector(tweet_id: str, polarity, subjectivity: float, dist) -> StyleVector:
    """StyleVector from raw blocks, normalizing both simplexes exactly."""
    pol = np.asarray(polarity, dtype=float)
    pol = pol / pol.sum()
    d = np.asarray(dist, dtype=float)
    d = d / d.sum()
    label = int(np.argmax(d))
    return StyleVector(
        negativity=float(pol[0]), neutrality=float(pol[1]), positivity=float(pol[2]),
        subjectivity=float(subjectivity), fallacy_dist=tuple(float(x) for x in d),
        fallacy_label=label, fallacy_score=float(d[label]), tweet_id=tweet_id,
    )


def random_vectors(rng: np.random.Generator, n: int) -> list[StyleVector]:
    """n valid random StyleVectors with ids t0000.."""
    out = []
    for i in range(n):
        pol = rng.random(3) + 1e-3
        dist = rng.random(N_FALLACY) + 1e-3
        out.append(make_vector(f"t{i:04d}", pol, float(rng.random()), dist))
    return out


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
