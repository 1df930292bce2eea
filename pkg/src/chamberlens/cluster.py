"""Feature standardization and k-means clustering of tweets by style.

k defaults elsewhere to the number of selected graph communities; this
module only provides the mechanics: z-scoring, seeded k-means++ with Lloyd
iterations, restarts, and the clusters.json interchange.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from chamberlens import parallel
from chamberlens.errors import FormatError, ValidationError
from chamberlens.style import FeatureMatrix

log = logging.getLogger(__name__)

ZERO_STD = 1e-12


def standardize(m: FeatureMatrix) -> tuple[FeatureMatrix, tuple[str, ...]]:
    """Per-column z-score using the population std.

    Returns the scaled matrix and the names of columns whose std fell
    below 1e-12; those columns are set to all-zero instead of divided.
    """
    if m.values.shape[0] < 2:
        raise ValidationError("standardize requires at least 2 rows")
    mean = m.values.mean(axis=0)
    std = m.values.std(axis=0)
    flagged = std < ZERO_STD
    safe = np.where(flagged, 1.0, std)
    values = (m.values - mean) / safe
    values[:, flagged] = 0.0
    names = tuple(d for d, f in zip(m.dims, flagged) if f)
    if names:
        log.info("standardize: %d constant column(s) zeroed: %s",
                 len(names), ", ".join(names))
    return FeatureMatrix(m.tweet_ids, m.dims, values), names


@dataclass(frozen=True)
class TextClustering:
    """k-means result: labels, centroids, and the assignment-cost trace."""

    labels: tuple[int, ...]
    centroids: np.ndarray
    inertia: float
    iterations: int
    inertia_trace: tuple[float, ...]
    seed: int

    @property
    def k(self) -> int:
        return int(self.centroids.shape[0])

    def __post_init__(self):
        if len(self.labels) and not all(0 <= c < self.k for c in self.labels):
            raise ValidationError("cluster label out of range")


def kmeans(m: FeatureMatrix, k: int, seed: int,
           max_iters: int = 300, tol: float = 1e-6) -> TextClustering:
    """Seeded k-means: k-means++ init, Lloyd iterations until the largest
    centroid shift drops below tol.

    Nearest-centroid ties break toward the lowest centroid index. A
    cluster left empty by an assignment pass is reseeded at the point
    farthest from its current centroid (points that are the sole member
    of their cluster stay put so the repair cannot cascade).
    """
    X = np.ascontiguousarray(m.values, dtype=np.float64)
    n = X.shape[0]
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    if n < k:
        raise ValidationError(f"{n} rows cannot form {k} clusters")
    if max_iters < 1:
        raise ValidationError(f"max_iters must be >= 1, got {max_iters}")

    rng = np.random.default_rng(seed)
    centroids = _kmeanspp(X, k, rng)
    trace: list[float] = []
    iterations = 0
    labels = np.zeros(n, dtype=np.int64)
    for it in range(1, max_iters + 1):
        labels, sq = _assign(X, centroids)
        centroids, labels, sq = _repair_empty(X, centroids, labels, sq)
        trace.append(float(sq.sum()))
        new_centroids = _update(X, labels, k)
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        iterations = it
        if shift < tol:
            break

    # Final pass so labels and inertia agree with the returned centroids.
    labels, sq = _assign(X, centroids)
    centroids, labels, sq = _repair_empty(X, centroids, labels, sq)
    inertia = float(((X - centroids[labels]) ** 2).sum())
    trace.append(inertia)
    return TextClustering(
        labels=tuple(int(c) for c in labels),
        centroids=centroids,
        inertia=inertia,
        iterations=iterations,
        inertia_trace=tuple(trace),
        seed=seed,
    )


def kmeans_best(m: FeatureMatrix, k: int, seed: int, restarts: int = 1,
                max_iters: int = 300, tol: float = 1e-6) -> TextClustering:
    """Run kmeans with seeds seed..seed+restarts-1, keep the lowest inertia.

    Ties keep the earliest seed.
    """
    if restarts < 1:
        raise ValidationError(f"restarts must be >= 1, got {restarts}")
    best: TextClustering | None = None
    for s in range(seed, seed + restarts):
        run = kmeans(m, k, s, max_iters=max_iters, tol=tol)
        if best is None or run.inertia < best.inertia:
            best = run
    assert best is not None
    return best


def _kmeanspp(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    centroids = np.empty((k, X.shape[1]), dtype=np.float64)
    first = int(rng.integers(n))
    centroids[0] = X[first]
    sq = ((X - centroids[0]) ** 2).sum(axis=1)
    for i in range(1, k):
        total = float(sq.sum())
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=sq / total))
        centroids[i] = X[idx]
        sq = np.minimum(sq, ((X - centroids[i]) ** 2).sum(axis=1))
    return centroids


def _assign(X: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest centroid per row; returns (labels, squared distances).

    Row blocks are scored independently and stitched back in input order.
    """
    n = X.shape[0]
    blocks = _row_blocks(n)

    def score(span: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = span
        d = ((X[lo:hi, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        lab = d.argmin(axis=1)
        return lab, d[np.arange(hi - lo), lab]

    parts = parallel.map_ordered(score, blocks)
    labels = np.concatenate([p[0] for p in parts])
    sq = np.concatenate([p[1] for p in parts])
    return labels, sq


def _update(X: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """Cluster means via per-block partial sums combined in block order."""
    n, d = X.shape
    blocks = _row_blocks(n)

    def partial(span: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = span
        sums = np.zeros((k, d), dtype=np.float64)
        np.add.at(sums, labels[lo:hi], X[lo:hi])
        counts = np.bincount(labels[lo:hi], minlength=k).astype(np.float64)
        return sums, counts

    sums = np.zeros((k, d), dtype=np.float64)
    counts = np.zeros(k, dtype=np.float64)
    for s, c in parallel.map_ordered(partial, blocks):
        sums += s
        counts += c
    # Callers repair empties before updating, so counts are positive.
    return sums / counts[:, None]


def _repair_empty(X: np.ndarray, centroids: np.ndarray, labels: np.ndarray,
                  sq: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    counts = np.bincount(labels, minlength=centroids.shape[0])
    empty = np.flatnonzero(counts == 0)
    if empty.size == 0:
        return centroids, labels, sq
    centroids = centroids.copy()
    labels = labels.copy()
    sq = sq.copy()
    for c in empty:
        candidates = sq.copy()
        candidates[counts[labels] <= 1] = -np.inf
        donor = int(candidates.argmax())
        counts[labels[donor]] -= 1
        labels[donor] = c
        counts[c] = 1
        centroids[c] = X[donor]
        sq[donor] = 0.0
    return centroids, labels, sq


def _row_blocks(n: int) -> list[tuple[int, int]]:
    workers = max(1, parallel.max_workers())
    size = max(256, -(-n // workers))
    return [(lo, min(lo + size, n)) for lo in range(0, n, size)]


def write_clusters_json(tc: TextClustering, tweet_ids: Sequence[str],
                        path: str | Path) -> None:
    if len(tweet_ids) != len(tc.labels):
        raise ValidationError(
            f"{len(tweet_ids)} tweet ids for {len(tc.labels)} labels")
    obj = {
        "k": tc.k,
        "seed": tc.seed,
        "inertia": tc.inertia,
        "labels": {tid: int(c) for tid, c in zip(tweet_ids, tc.labels)},
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, ensure_ascii=False, sort_keys=True, indent=2)
        fh.write("\n")


def read_clusters_json(path: str | Path) -> tuple[int, int, float, dict[str, int]]:
    """Returns (k, seed, inertia, tweet_id -> cluster id)."""
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    try:
        k = int(obj["k"])
        seed = int(obj["seed"])
        inertia = float(obj["inertia"])
        labels = {str(t): int(c) for t, c in obj["labels"].items()}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise FormatError(f"{path}: malformed clusters file: {exc}") from exc
    if k < 1:
        raise FormatError(f"{path}: k must be >= 1")
    if any(c < 0 or c >= k for c in labels.values()):
        raise FormatError(f"{path}: cluster label out of range 0..{k - 1}")
    return k, seed, inertia, labels
