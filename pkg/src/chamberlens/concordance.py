"""Agreement between text-style clusters and graph communities.

Builds the cluster-versus-community confusion matrix, finds the optimal
one-to-one matching and its accuracy (the identity-diagonal accuracy is
reported alongside), computes NMI and ARI, and summarizes per-community
mean style vectors. All measures are pure functions of label arrays or
count tables.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from chamberlens.errors import FormatError, ValidationError
from chamberlens.style import StyleVector

log = logging.getLogger(__name__)


def _id_key(x: Hashable) -> tuple[int, float | str]:
    """Sort ids numerically when they look numeric, else lexically."""
    try:
        return (0, float(str(x)))
    except ValueError:
        return (1, str(x))


@dataclass(frozen=True)
class ConfusionMatrix:
    """Count table: rows are text-cluster ids, columns are community ids."""

    row_ids: tuple[Hashable, ...]
    col_ids: tuple[Hashable, ...]
    counts: np.ndarray

    def __post_init__(self):
        if self.counts.shape != (len(self.row_ids), len(self.col_ids)):
            raise ValidationError(
                f"counts shape {self.counts.shape} does not match "
                f"{len(self.row_ids)} rows x {len(self.col_ids)} cols")
        if self.counts.size == 0:
            raise ValidationError("confusion matrix must be non-empty")
        if not np.issubdtype(self.counts.dtype, np.integer):
            raise ValidationError("confusion counts must be integers")
        if (self.counts < 0).any():
            raise ValidationError("confusion counts must be non-negative")
        if len(set(self.row_ids)) != len(self.row_ids):
            raise ValidationError("duplicate row ids")
        if len(set(self.col_ids)) != len(self.col_ids):
            raise ValidationError("duplicate column ids")

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def entry(self, row_id: Hashable, col_id: Hashable) -> int:
        i = self.row_ids.index(row_id)
        j = self.col_ids.index(col_id)
        return int(self.counts[i, j])


def confusion(text_labels: Mapping[str, Hashable],
              community_of_author: Mapping[str, Hashable]) -> ConfusionMatrix:
    """Tally tweets by (text cluster, author community).

    Only tweets present in both mappings are counted; an empty
    intersection is an error.
    """
    shared = sorted(set(text_labels) & set(community_of_author))
    if not shared:
        raise ValidationError("no tweets shared between labelings")
    dropped = len(set(text_labels) | set(community_of_author)) - len(shared)
    if dropped:
        log.info("confusion: %d tweets missing from one labeling, skipped", dropped)
    row_ids = tuple(sorted({text_labels[t] for t in shared}, key=_id_key))
    col_ids = tuple(sorted({community_of_author[t] for t in shared}, key=_id_key))
    ri = {r: i for i, r in enumerate(row_ids)}
    ci = {c: j for j, c in enumerate(col_ids)}
    counts = np.zeros((len(row_ids), len(col_ids)), dtype=np.int64)
    for t in shared:
        counts[ri[text_labels[t]], ci[community_of_author[t]]] += 1
    return ConfusionMatrix(row_ids, col_ids, counts)


@dataclass(frozen=True)
class MatchResult:
    """Optimal cluster-to-community assignment and its accuracy."""

    mapping: dict[Hashable, Hashable]
    matched_sum: int
    total: int
    matched_accuracy: float
    identity_accuracy: float


def match_clusters(m: ConfusionMatrix) -> MatchResult:
    """Assignment of text clusters to communities maximizing the covered
    count, via the rectangular linear sum assignment solver.

    matched_accuracy is the covered count over the table total; the
    identity-diagonal accuracy (cells whose row and column ids print the
    same) is reported alongside for comparison with diagonal readings.
    """
    rows, cols = linear_sum_assignment(m.counts, maximize=True)
    mapping = {m.row_ids[i]: m.col_ids[j] for i, j in zip(rows, cols)}
    matched = int(m.counts[rows, cols].sum())
    total = m.total
    identity = 0
    for i, r in enumerate(m.row_ids):
        for j, c in enumerate(m.col_ids):
            if str(r) == str(c):
                identity += int(m.counts[i, j])
    return MatchResult(
        mapping=mapping,
        matched_sum=matched,
        total=total,
        matched_accuracy=matched / total if total else 0.0,
        identity_accuracy=identity / total if total else 0.0,
    )


def drop_cluster(m: ConfusionMatrix, text_cluster_id: Hashable,
                 community_id: Hashable) -> ConfusionMatrix:
    """Remove one row and one column; every other count is unchanged."""
    if text_cluster_id not in m.row_ids:
        raise ValidationError(f"unknown text cluster id: {text_cluster_id!r}")
    if community_id not in m.col_ids:
        raise ValidationError(f"unknown community id: {community_id!r}")
    if len(m.row_ids) < 2 or len(m.col_ids) < 2:
        raise ValidationError("cannot drop from a single-row or single-column matrix")
    i = m.row_ids.index(text_cluster_id)
    j = m.col_ids.index(community_id)
    counts = np.delete(np.delete(m.counts, i, axis=0), j, axis=1)
    return ConfusionMatrix(
        tuple(r for r in m.row_ids if r != text_cluster_id),
        tuple(c for c in m.col_ids if c != community_id),
        counts,
    )


def _contingency(labels_a: Sequence[Hashable],
                 labels_b: Sequence[Hashable]) -> np.ndarray:
    if len(labels_a) != len(labels_b):
        raise ValidationError(
            f"label sequences differ in length: {len(labels_a)} vs {len(labels_b)}")
    if not labels_a:
        raise ValidationError("label sequences must be non-empty")
    a_ids = {v: i for i, v in enumerate(sorted(set(labels_a), key=_id_key))}
    b_ids = {v: i for i, v in enumerate(sorted(set(labels_b), key=_id_key))}
    counts = np.zeros((len(a_ids), len(b_ids)), dtype=np.int64)
    for a, b in zip(labels_a, labels_b):
        counts[a_ids[a], b_ids[b]] += 1
    return counts


def nmi(labels_a: Sequence[Hashable], labels_b: Sequence[Hashable]) -> float:
    """Normalized mutual information, I/sqrt(Ha*Hb) with natural logs.

    Defined as 0 when either labeling is constant.
    """
    return nmi_from_counts(_contingency(labels_a, labels_b))


def nmi_from_counts(counts: np.ndarray) -> float:
    n = counts.sum()
    if n <= 0:
        raise ValidationError("empty contingency table")
    pa = counts.sum(axis=1) / n
    pb = counts.sum(axis=0) / n
    ha = float(-(pa[pa > 0] * np.log(pa[pa > 0])).sum())
    hb = float(-(pb[pb > 0] * np.log(pb[pb > 0])).sum())
    if ha == 0.0 or hb == 0.0:
        return 0.0
    info = 0.0
    nz = np.argwhere(counts > 0)
    for i, j in nz:
        pij = counts[i, j] / n
        info += pij * math.log(pij / (pa[i] * pb[j]))
    return float(min(1.0, max(0.0, info / math.sqrt(ha * hb))))


def ari(labels_a: Sequence[Hashable], labels_b: Sequence[Hashable]) -> float:
    """Adjusted Rand index from exact integer pair counting."""
    return ari_from_counts(_contingency(labels_a, labels_b))


def ari_from_counts(counts: np.ndarray) -> float:
    n = int(counts.sum())
    if n <= 0:
        raise ValidationError("empty contingency table")
    index = sum(math.comb(int(v), 2) for v in counts.ravel())
    sum_a = sum(math.comb(int(v), 2) for v in counts.sum(axis=1))
    sum_b = sum(math.comb(int(v), 2) for v in counts.sum(axis=0))
    pairs = math.comb(n, 2)
    if pairs == 0:
        return 1.0
    expected = sum_a * sum_b / pairs
    maximum = (sum_a + sum_b) / 2
    den = maximum - expected
    if den == 0:
        return 1.0
    return float((index - expected) / den)


MEAN_FEATURES = ("neg", "neu", "pos", "subjectivity")


def community_style_means(
    vectors: Sequence[StyleVector],
    community_of_author: Mapping[str, Hashable],
    communities: Iterable[Hashable] | None = None,
) -> tuple[dict[Hashable, dict[str, float]], tuple[tuple[Hashable, float, float], ...]]:
    """Arithmetic mean of every style feature per community.

    Returns (means, projection) where projection is the 2-D
    (community, mean negativity, mean subjectivity) table used for
    plotting. Communities with zero tweets are excluded with a warning.
    """
    groups: dict[Hashable, list[StyleVector]] = {}
    for v in vectors:
        c = community_of_author.get(v.tweet_id)
        if c is None:
            continue
        groups.setdefault(c, []).append(v)
    if not groups:
        raise ValidationError("no tweets fall in any community")
    if communities is not None:
        for c in communities:
            if c not in groups:
                log.warning("community %r has zero tweets, excluded from means", c)
    means: dict[Hashable, dict[str, float]] = {}
    for c in sorted(groups, key=_id_key):
        vs = groups[c]
        n = len(vs)
        row = {
            "neg": sum(v.negativity for v in vs) / n,
            "neu": sum(v.neutrality for v in vs) / n,
            "pos": sum(v.positivity for v in vs) / n,
            "subjectivity": sum(v.subjectivity for v in vs) / n,
        }
        n_fallacy = len(vs[0].fallacy_dist)
        for i in range(n_fallacy):
            row[f"fallacy_{i}"] = sum(v.fallacy_dist[i] for v in vs) / n
        means[c] = row
    projection = tuple(
        (c, means[c]["neg"], means[c]["subjectivity"]) for c in means)
    return means, projection


@dataclass(frozen=True)
class ConcordanceReport:
    matrix: ConfusionMatrix
    match: MatchResult
    nmi: float
    ari: float
    per_community_means: dict[Hashable, dict[str, float]] | None = None


def build_report(m: ConfusionMatrix,
                 means: dict[Hashable, dict[str, float]] | None = None,
                 ) -> ConcordanceReport:
    """Assemble the full report from a confusion matrix (NMI and ARI are
    functions of the count table alone)."""
    return ConcordanceReport(
        matrix=m,
        match=match_clusters(m),
        nmi=nmi_from_counts(m.counts),
        ari=ari_from_counts(m.counts),
        per_community_means=means,
    )


def write_report_json(report: ConcordanceReport, path: str | Path) -> None:
    obj = {
        "confusion": {
            "row_ids": [str(r) for r in report.matrix.row_ids],
            "col_ids": [str(c) for c in report.matrix.col_ids],
            "counts": report.matrix.counts.tolist(),
        },
        "matching": {str(r): str(c) for r, c in report.match.mapping.items()},
        "matched_sum": report.match.matched_sum,
        "total": report.match.total,
        "matched_accuracy": report.match.matched_accuracy,
        "identity_accuracy": report.match.identity_accuracy,
        "nmi": report.nmi,
        "ari": report.ari,
    }
    if report.per_community_means is not None:
        obj["per_community_means"] = {
            str(c): feats for c, feats in report.per_community_means.items()}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, ensure_ascii=False, sort_keys=True, indent=2)
        fh.write("\n")


def write_confusion_csv(m: ConfusionMatrix, path: str | Path) -> None:
    """Counts with a header row of community ids and a leading column of
    text-cluster ids."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([""] + [str(c) for c in m.col_ids])
        for i, r in enumerate(m.row_ids):
            writer.writerow([str(r)] + [int(v) for v in m.counts[i]])


def parse_confusion_csv(path: str | Path) -> ConfusionMatrix:
    """Read a confusion table written by write_confusion_csv (or by hand).

    Ids stay strings and keep file order.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if len(rows) < 2:
        raise FormatError(f"{path}: confusion table needs a header and a row")
    col_ids = tuple(c.strip() for c in rows[0][1:])
    if not col_ids or any(not c for c in col_ids):
        raise FormatError(f"{path}: missing column ids in header")
    row_ids = []
    counts = []
    for row in rows[1:]:
        if len(row) != len(col_ids) + 1:
            raise FormatError(
                f"{path}: row {row[0]!r} has {len(row) - 1} cells, "
                f"expected {len(col_ids)}")
        row_ids.append(row[0].strip())
        try:
            counts.append([int(v) for v in row[1:]])
        except ValueError as exc:
            raise FormatError(f"{path}: non-integer count in row {row[0]!r}") from exc
    try:
        return ConfusionMatrix(tuple(row_ids), col_ids,
                               np.asarray(counts, dtype=np.int64))
    except ValidationError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def write_means_csv(means: dict[Hashable, dict[str, float]],
                    path: str | Path) -> None:
    """Rows of (community, feature, mean), features in canonical order."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["community", "feature", "mean"])
        for c in sorted(means, key=_id_key):
            feats = means[c]
            ordered = [f for f in MEAN_FEATURES if f in feats]
            ordered += sorted(
                (f for f in feats if f.startswith("fallacy_")),
                key=lambda f: int(f.split("_", 1)[1]))
            for f in ordered:
                writer.writerow([str(c), f, repr(float(feats[f]))])
