"""Synthetic datasets with planted communities and planted style means.

Planted-partition reply graph: every intra-community user pair replies
with probability p_in, every inter-community pair with p_out; a connected
pair exchanges Poisson(weight_mean-1)+1 replies. Every user additionally
posts tweets_per_user plain tweets. Styles are sampled around the
author-community's planted mean. One seed fixes every byte of output.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from chamberlens import style as style_mod
from chamberlens.errors import FormatError, ValidationError
from chamberlens.ingest import TweetRecord
from chamberlens.style import N_FALLACY, StyleVector

log = logging.getLogger(__name__)

# Style-mean layout: [neg, neu, pos, subjectivity, fallacy_0..fallacy_12].
STYLE_DIMS = 4 + N_FALLACY

_EPOCH = datetime(2020, 1, 1, tzinfo=timezone.utc)


def _mean_row(neg: float, neu: float, pos: float, subj: float,
              peak: int, peak_mass: float = 0.6) -> tuple[float, ...]:
    rest = (1.0 - peak_mass) / (N_FALLACY - 1)
    fallacy = [rest] * N_FALLACY
    fallacy[peak] = peak_mass
    return (neg, neu, pos, subj, *fallacy)


# Six well-separated styles: distinct polarity profiles, subjectivity
# levels, and dominant fallacy slots.
DEFAULT_STYLE_MEANS = (
    _mean_row(0.70, 0.20, 0.10, 0.80, 0),
    _mean_row(0.10, 0.80, 0.10, 0.20, 12),
    _mean_row(0.05, 0.25, 0.70, 0.70, 4),
    _mean_row(0.30, 0.40, 0.30, 0.50, 1),
    _mean_row(0.20, 0.50, 0.30, 0.90, 6),
    _mean_row(0.50, 0.40, 0.10, 0.35, 2),
)


@dataclass(frozen=True)
class SynthSpec:
    """Generator parameters; the defaults are the standard desk-scale
    planted-recovery fixture."""

    k: int = 6
    sizes: tuple[int, ...] = (50, 50, 50, 50, 50, 50)
    p_in: float = 0.2
    p_out: float = 0.002
    weight_mean: float = 4.0
    tweets_per_user: int = 20
    style_means: tuple[tuple[float, ...], ...] = DEFAULT_STYLE_MEANS
    style_noise: float = 0.05
    seed: int = 42
    lexicon_mode: bool = False

    def validate(self) -> None:
        if self.k < 1:
            raise ValidationError(f"k must be >= 1, got {self.k}")
        if len(self.sizes) != self.k:
            raise ValidationError(
                f"{len(self.sizes)} community sizes for k={self.k}")
        if any(s < 1 for s in self.sizes):
            raise ValidationError("community sizes must be >= 1")
        for name, p in (("p_in", self.p_in), ("p_out", self.p_out)):
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"{name}={p} not in [0,1]")
        if self.p_in <= self.p_out:
            log.warning("p_in=%g <= p_out=%g: no planted community signal",
                        self.p_in, self.p_out)
        if self.weight_mean < 1.0:
            raise ValidationError(
                f"weight_mean must be >= 1, got {self.weight_mean}")
        if self.tweets_per_user < 1:
            raise ValidationError("tweets_per_user must be >= 1")
        if self.style_noise < 0.0:
            raise ValidationError("style_noise must be >= 0")
        if len(self.style_means) != self.k:
            raise ValidationError(
                f"{len(self.style_means)} style mean rows for k={self.k}")
        for c, row in enumerate(self.style_means):
            if len(row) != STYLE_DIMS:
                raise ValidationError(
                    f"style mean row {c} has {len(row)} dims, expected {STYLE_DIMS}")
            if any(v < 0.0 or v > 1.0 for v in row):
                raise ValidationError(f"style mean row {c} leaves [0,1]")
            if abs(row[0] + row[1] + row[2] - 1.0) > 1e-6:
                raise ValidationError(f"style mean row {c}: polarity not a simplex")
            if abs(sum(row[4:]) - 1.0) > 1e-6:
                raise ValidationError(f"style mean row {c}: fallacy not a simplex")


def spec_from_json(path: str | Path) -> SynthSpec:
    """Load a SynthSpec from a JSON object; unknown keys rejected."""
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: spec must be a JSON object")
    known = set(SynthSpec.__dataclass_fields__)
    unknown = set(obj) - known
    if unknown:
        raise FormatError(f"{path}: unknown spec keys: {sorted(unknown)}")
    kwargs = dict(obj)
    if "sizes" in kwargs:
        kwargs["sizes"] = tuple(int(s) for s in kwargs["sizes"])
    if "style_means" in kwargs:
        kwargs["style_means"] = tuple(
            tuple(float(v) for v in row) for row in kwargs["style_means"])
    try:
        spec = SynthSpec(**kwargs)
    except TypeError as exc:
        raise FormatError(f"{path}: bad spec value: {exc}") from exc
    spec.validate()
    return spec


@dataclass(frozen=True)
class SynthResult:
    records: tuple[TweetRecord, ...]
    vectors: tuple[StyleVector, ...]
    community_of_user: dict[str, int]
    spec: SynthSpec = field(repr=False)


def generate(spec: SynthSpec) -> SynthResult:
    """Draw the full synthetic dataset for one seed."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)

    n = sum(spec.sizes)
    users = [f"u{idx:04d}" for idx in range(n)]
    community_of_user: dict[str, int] = {}
    idx = 0
    for c, size in enumerate(spec.sizes):
        for _ in range(size):
            community_of_user[users[idx]] = c
            idx += 1

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    probs = np.where(
        np.array([community_of_user[users[i]] == community_of_user[users[j]]
                  for i, j in pairs]),
        spec.p_in, spec.p_out)
    connected = [p for p, u in zip(pairs, rng.random(len(pairs)) < probs) if u]
    weights = rng.poisson(spec.weight_mean - 1.0, len(connected)) + 1

    records: list[TweetRecord] = []
    means = np.asarray(spec.style_means, dtype=np.float64)

    lex = _LexiconTexts(rng) if spec.lexicon_mode else None
    tid = 0
    for i, u in enumerate(users):
        c = community_of_user[u]
        for _ in range(spec.tweets_per_user):
            text = (lex.tweet_text(tid, u, means[c]) if lex
                    else f"synthetic tweet {tid} from user {u}")
            records.append(TweetRecord(
                tweet_id=f"t{tid:06d}", user_id=u, text=text,
                created_at=_stamp(tid)))
            tid += 1

    for (i, j), w in zip(connected, weights):
        flips = rng.integers(0, 2, int(w))
        for flip in flips:
            a, b = (users[i], users[j]) if flip == 0 else (users[j], users[i])
            c = community_of_user[a]
            text = (lex.reply_text(tid, a, b, means[c]) if lex
                    else f"synthetic reply {tid} from user {a} to user {b}")
            records.append(TweetRecord(
                tweet_id=f"t{tid:06d}", user_id=a, text=text,
                created_at=_stamp(tid), reply_to_user_id=b))
            tid += 1

    vectors = tuple(
        _sample_style(rng, means[community_of_user[r.user_id]],
                      spec.style_noise, r.tweet_id)
        for r in records)
    return SynthResult(tuple(records), vectors, community_of_user, spec)


def _stamp(i: int) -> str:
    t = _EPOCH + timedelta(minutes=i)
    return t.strftime("%Y-%m-%dT%H:%M:%SZ")


def _sample_style(rng: np.random.Generator, mean: np.ndarray,
                  noise: float, tweet_id: str) -> StyleVector:
    if noise > 0.0:
        v = np.clip(mean + rng.normal(0.0, noise, STYLE_DIMS), 0.0, 1.0)
        v[:3] = _renorm_block(v[:3], mean[:3])
        v[4:] = _renorm_block(v[4:], mean[4:])
    else:
        v = mean.copy()
    dist = tuple(float(x) for x in v[4:])
    label = int(np.argmax(v[4:]))
    return StyleVector(
        negativity=float(v[0]),
        neutrality=float(v[1]),
        positivity=float(v[2]),
        subjectivity=float(v[3]),
        fallacy_dist=dist,
        fallacy_label=label,
        fallacy_score=dist[label],
        tweet_id=tweet_id,
    )


def _renorm_block(block: np.ndarray, fallback: np.ndarray) -> np.ndarray:
    total = block.sum()
    if total <= 0.0:
        return fallback.copy()
    return block / total


def write_truth_json(result: SynthResult, path: str | Path) -> None:
    obj = {
        "community_of_user": dict(sorted(result.community_of_user.items())),
        "style_means": [list(row) for row in result.spec.style_means],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, ensure_ascii=False, sort_keys=True, indent=2)
        fh.write("\n")


def read_truth_json(path: str | Path) -> tuple[dict[str, int], list[list[float]]]:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    try:
        community = {str(u): int(c) for u, c in obj["community_of_user"].items()}
        means = [[float(v) for v in row] for row in obj["style_means"]]
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise FormatError(f"{path}: malformed truth file: {exc}") from exc
    return community, means


class _LexiconTexts:
    """Template texts salted with lexicon words at rates tracking the
    planted means, so the offline baseline scorer sees the same signal."""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.pos = sorted(style_mod.lexicon("positive"))
        self.neg = sorted(style_mod.lexicon("negative"))
        self.subj = sorted(style_mod.lexicon("subjective"))

    def _salt(self, mean: np.ndarray) -> str:
        words: list[str] = []
        words += self._draw(self.neg, mean[0] * 4.0)
        words += self._draw(self.pos, mean[2] * 4.0)
        words += self._draw(self.subj, mean[3] * 3.0)
        fallacy = mean[4:]
        peak = int(np.argmax(fallacy))
        uniform = 1.0 / fallacy.shape[0]
        if fallacy[peak] > 2.0 * uniform:
            if peak == style_mod.AD_HOMINEM:
                words.append("you")
                if not any(w in style_mod.lexicon("negative") for w in words):
                    words += self._draw(self.neg, 1.0) or [self.neg[0]]
            elif peak == style_mod.AD_POPULUM:
                words.append("everyone")
        return " ".join(words)

    def _draw(self, pool: list[str], expected: float) -> list[str]:
        count = int(round(expected))
        return [pool[int(self.rng.integers(len(pool)))] for _ in range(count)]

    def tweet_text(self, tid: int, user: str, mean: np.ndarray) -> str:
        return f"synthetic tweet {tid} from user {user} {self._salt(mean)}".strip()

    def reply_text(self, tid: int, user: str, other: str,
                   mean: np.ndarray) -> str:
        return (f"synthetic reply {tid} from user {user} "
                f"to user {other} {self._salt(mean)}").strip()
