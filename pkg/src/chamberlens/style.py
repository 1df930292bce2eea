"""Per-tweet style features: schema, deterministic lexicon baseline, and
the features.jsonl interchange used to swap in external scorers.

The polarity triple and the fallacy distribution are simplexes (sum to 1
within 1e-6); subjectivity lives in [0, 1]. Thirteen fallacy slots: twelve
named fallacies plus a trailing other/none class.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from chamberlens.errors import ValidationError

log = logging.getLogger(__name__)

N_FALLACY = 13

FALLACY_CLASSES = (
    "ad_hominem",
    "ad_populum",
    "false_causality",
    "circular_claim",
    "appeal_to_emotion",
    "fallacy_of_relevance",
    "deductive_fallacy",
    "intentional_fallacy",
    "fallacy_of_extension",
    "false_dilemma",
    "fallacy_of_credibility",
    "equivocation",
    "other",
)

AD_HOMINEM = 0
AD_POPULUM = 1

SIMPLEX_TOL = 1e-6
RENORM_TOL = 1e-3

_TOKEN_RE = re.compile(r"[a-z']+")

_FIRST_SECOND_PERSON = frozenset({
    "i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves",
    "i'm", "i've", "i'll", "i'd", "we're", "we've", "we'll", "we'd",
    "you", "your", "yours", "yourself", "yourselves", "u", "ur",
    "you're", "you've", "you'll", "you'd", "youre",
})

_SECOND_PERSON = frozenset({
    "you", "your", "yours", "yourself", "yourselves", "u", "ur",
    "you're", "you've", "you'll", "you'd", "youre",
})

_QUANTIFIERS = frozenset({
    "everyone", "everybody", "nobody", "noone", "anyone", "anybody",
    "all", "none", "always", "never",
})


@dataclass(frozen=True)
class StyleScores:
    """Style features for one text, without tweet identity."""

    negativity: float
    neutrality: float
    positivity: float
    subjectivity: float
    fallacy_dist: tuple[float, ...]
    fallacy_label: int
    fallacy_score: float


@dataclass(frozen=True)
class StyleVector(StyleScores):
    """StyleScores bound to a tweet id."""

    tweet_id: str = ""


def validate_scores(s: StyleScores, n_fallacy: int = N_FALLACY) -> None:
    """Raise ValidationError unless every StyleVector invariant holds."""
    polarity = (s.negativity, s.neutrality, s.positivity)
    if any(v < -1e-9 or v > 1.0 + 1e-9 for v in polarity):
        raise ValidationError(f"polarity component out of [0,1]: {polarity}")
    if abs(sum(polarity) - 1.0) > SIMPLEX_TOL:
        raise ValidationError(f"polarity triple sums to {sum(polarity)}")
    if not 0.0 <= s.subjectivity <= 1.0:
        raise ValidationError(f"subjectivity {s.subjectivity} out of [0,1]")
    if len(s.fallacy_dist) != n_fallacy:
        raise ValidationError(
            f"fallacy_dist has {len(s.fallacy_dist)} entries, expected {n_fallacy}")
    if any(v < -1e-9 or v > 1.0 + 1e-9 for v in s.fallacy_dist):
        raise ValidationError("fallacy_dist component out of [0,1]")
    if abs(sum(s.fallacy_dist) - 1.0) > SIMPLEX_TOL:
        raise ValidationError(f"fallacy_dist sums to {sum(s.fallacy_dist)}")
    if not 0 <= s.fallacy_label < n_fallacy:
        raise ValidationError(f"fallacy_label {s.fallacy_label} out of range")
    if abs(s.fallacy_score - s.fallacy_dist[s.fallacy_label]) > SIMPLEX_TOL:
        raise ValidationError("fallacy_score disagrees with fallacy_dist[label]")
    if s.fallacy_score < max(s.fallacy_dist) - SIMPLEX_TOL:
        raise ValidationError("fallacy_label is not an argmax of fallacy_dist")


@lru_cache(maxsize=None)
def lexicon(name: str) -> frozenset[str]:
    """Bundled word list (one lowercase token per line)."""
    text = resources.files("chamberlens.data").joinpath(f"{name}.txt").read_text("utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def score_baseline(text: str) -> StyleScores:
    """Deterministic lexicon scorer, the offline stand-in for pretrained
    models.

    Polarity: with p positive hits, n negative hits and t tokens,
    strength s = min(1, 4*(p+n)/max(t,1)); negativity = s*n/(p+n+1);
    positivity = s*p/(p+n+1); neutrality takes the rest. Subjectivity is
    the rate of subjective-lexicon hits plus first/second-person pronouns.
    The fallacy distribution starts uniform; a second-person pronoun next
    to a negative word shifts 0.3 mass to ad_hominem, crowd quantifiers
    ("everyone", "nobody", ...) shift 0.3 to ad_populum; renormalized.
    """
    tokens = tokenize(text)
    t = len(tokens)
    pos_words = lexicon("positive")
    neg_words = lexicon("negative")
    subj_words = lexicon("subjective")

    p = sum(1 for w in tokens if w in pos_words)
    n = sum(1 for w in tokens if w in neg_words)
    strength = min(1.0, 4.0 * (p + n) / max(t, 1))
    negativity = strength * n / (p + n + 1)
    positivity = strength * p / (p + n + 1)
    neutrality = 1.0 - negativity - positivity

    subj_hits = sum(1 for w in tokens if w in subj_words or w in _FIRST_SECOND_PERSON)
    subjectivity = min(1.0, subj_hits / max(t, 1))

    dist = [1.0 / N_FALLACY] * N_FALLACY
    boosted = False
    if n > 0 and any(w in _SECOND_PERSON for w in tokens):
        dist[AD_HOMINEM] += 0.3
        boosted = True
    if any(w in _QUANTIFIERS for w in tokens):
        dist[AD_POPULUM] += 0.3
        boosted = True
    if boosted:
        total = sum(dist)
        dist = [v / total for v in dist]
    label = int(np.argmax(dist))

    return StyleScores(
        negativity=negativity,
        neutrality=neutrality,
        positivity=positivity,
        subjectivity=subjectivity,
        fallacy_dist=tuple(dist),
        fallacy_label=label,
        fallacy_score=dist[label],
    )


def with_id(scores: StyleScores, tweet_id: str) -> StyleVector:
    return StyleVector(
        negativity=scores.negativity,
        neutrality=scores.neutrality,
        positivity=scores.positivity,
        subjectivity=scores.subjectivity,
        fallacy_dist=scores.fallacy_dist,
        fallacy_label=scores.fallacy_label,
        fallacy_score=scores.fallacy_score,
        tweet_id=tweet_id,
    )


def write_features_jsonl(vectors: Iterable[StyleVector], path: str | Path) -> None:
    """Emit the features.jsonl interchange, one object per tweet."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for v in vectors:
            obj = {
                "tweet_id": v.tweet_id,
                "neg": v.negativity,
                "neu": v.neutrality,
                "pos": v.positivity,
                "subjectivity": v.subjectivity,
                "fallacy": list(v.fallacy_dist),
                "fallacy_label": v.fallacy_label,
                "fallacy_score": v.fallacy_score,
            }
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")


@dataclass(frozen=True)
class ImportResult:
    vectors: tuple[StyleVector, ...]
    rejected: int
    renormalized: int

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)


def import_features(path: str | Path, n_fallacy: int = N_FALLACY) -> ImportResult:
    """Read and validate a features.jsonl file.

    Simplex sums within 1e-3 of 1 are renormalized; worse violations (or
    any other invariant breach) reject the record. More than 10% rejected
    lines is a hard error.
    """
    vectors: list[StyleVector] = []
    rejected = 0
    renormalized = 0
    total = 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            total += 1
            try:
                vec, renorm = _parse_feature_line(line, n_fallacy)
            except (ValidationError, KeyError, TypeError, ValueError,
                    json.JSONDecodeError) as exc:
                rejected += 1
                log.debug("rejected feature record: %s", exc)
                continue
            renormalized += renorm
            vectors.append(vec)
    if total and rejected * 10 > total:
        raise ValidationError(
            f"{rejected} of {total} feature records rejected (>10%)")
    if rejected or renormalized:
        log.info("imported %d feature vectors (%d rejected, %d renormalized)",
                 len(vectors), rejected, renormalized)
    return ImportResult(tuple(vectors), rejected, renormalized)


def _parse_feature_line(line: str, n_fallacy: int) -> tuple[StyleVector, int]:
    obj = json.loads(line)
    if not isinstance(obj, dict):
        raise ValidationError("feature record is not an object")
    tweet_id = str(obj["tweet_id"])
    if not tweet_id:
        raise ValidationError("empty tweet_id")
    polarity = [float(obj["neg"]), float(obj["neu"]), float(obj["pos"])]
    subjectivity = float(obj["subjectivity"])
    dist = [float(v) for v in obj["fallacy"]]
    label = int(obj["fallacy_label"])
    score = float(obj["fallacy_score"])

    if len(dist) != n_fallacy:
        raise ValidationError(f"fallacy_dist length {len(dist)} != {n_fallacy}")
    if not 0.0 <= subjectivity <= 1.0:
        raise ValidationError(f"subjectivity {subjectivity} out of [0,1]")
    if not 0 <= label < n_fallacy:
        raise ValidationError(f"fallacy_label {label} out of range")

    renorm = 0
    polarity, r1 = _renormalize_simplex(polarity, "polarity")
    dist, r2 = _renormalize_simplex(dist, "fallacy_dist")
    renorm = 1 if (r1 or r2) else 0

    if abs(score - dist[label]) > RENORM_TOL:
        raise ValidationError("fallacy_score disagrees with fallacy_dist[label]")
    if dist[label] < max(dist) - SIMPLEX_TOL:
        raise ValidationError("fallacy_label is not an argmax of fallacy_dist")

    vec = StyleVector(
        negativity=polarity[0],
        neutrality=polarity[1],
        positivity=polarity[2],
        subjectivity=subjectivity,
        fallacy_dist=tuple(dist),
        fallacy_label=label,
        fallacy_score=dist[label],
        tweet_id=tweet_id,
    )
    validate_scores(vec, n_fallacy)
    return vec, renorm


def _renormalize_simplex(values: list[float], what: str) -> tuple[list[float], bool]:
    if any(v < -1e-9 for v in values):
        raise ValidationError(f"{what} has a negative component")
    values = [max(v, 0.0) for v in values]
    total = sum(values)
    if abs(total - 1.0) <= SIMPLEX_TOL:
        return values, False
    if abs(total - 1.0) <= RENORM_TOL:
        return [v / total for v in values], True
    raise ValidationError(f"{what} sums to {total}")


@dataclass(frozen=True)
class FeatureMatrix:
    """Row-major feature matrix with stable tweet and column ordering."""

    tweet_ids: tuple[str, ...]
    dims: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (len(self.tweet_ids), len(self.dims)):
            raise ValidationError(
                f"matrix shape {self.values.shape} does not match "
                f"{len(self.tweet_ids)} rows x {len(self.dims)} dims")


def assemble_matrix(vectors: Sequence[StyleVector],
                    mode: str = "distribution") -> FeatureMatrix:
    """Stack StyleVectors into a FeatureMatrix.

    distribution mode keeps the full fallacy distribution as coordinates;
    top1 mode mirrors the label+score pairing with the categorical label
    one-hot encoded (never as a scalar coordinate).
    """
    if not vectors:
        raise ValidationError("assemble_matrix requires at least one vector")
    n_fallacy = len(vectors[0].fallacy_dist)
    base = ("neg", "neu", "pos", "subjectivity")
    if mode == "distribution":
        dims = base + tuple(f"fallacy_{i}" for i in range(n_fallacy))
        rows = [
            (v.negativity, v.neutrality, v.positivity, v.subjectivity)
            + v.fallacy_dist
            for v in vectors
        ]
    elif mode == "top1":
        dims = base + ("fallacy_score",) + tuple(f"onehot_{i}" for i in range(n_fallacy))
        rows = []
        for v in vectors:
            onehot = [0.0] * n_fallacy
            onehot[v.fallacy_label] = 1.0
            rows.append((v.negativity, v.neutrality, v.positivity,
                         v.subjectivity, v.fallacy_score) + tuple(onehot))
    else:
        raise ValidationError(f"unknown feature mode: {mode!r}")
    values = np.asarray(rows, dtype=np.float64)
    return FeatureMatrix(tuple(v.tweet_id for v in vectors), dims, values)
