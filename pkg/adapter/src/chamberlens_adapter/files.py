"""Reading tweets.jsonl and writing features.jsonl.

These two formats are the whole interface to the rest of the pipeline:
tweets in, one feature object per tweet out, same order. A malformed
input line is an error rather than a skip, because silently dropping a
line would break the line-for-line correspondence the output promises.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from chamberlens_adapter.errors import FormatError

N_FALLACY = 13


@dataclass(frozen=True)
class Tweet:
    tweet_id: str
    text: str


@dataclass(frozen=True)
class Features:
    """One scored tweet, already satisfying every output invariant:
    polarity and fallacy blocks sum to 1, subjectivity in [0,1], the
    label is the fallacy argmax and the score is its probability."""

    tweet_id: str
    neg: float
    neu: float
    pos: float
    subjectivity: float
    fallacy: tuple[float, ...]

    @property
    def fallacy_label(self) -> int:
        return max(range(len(self.fallacy)), key=self.fallacy.__getitem__)

    @property
    def fallacy_score(self) -> float:
        return self.fallacy[self.fallacy_label]


def read_tweets_jsonl(path: str | Path) -> list[Tweet]:
    """Parse tweets.jsonl, keeping only what scoring needs."""
    tweets: list[Tweet] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise FormatError(f"{path}:{lineno}: expected a JSON object")
            try:
                tweet_id = str(obj["tweet_id"])
                text = str(obj["text"])
            except KeyError as exc:
                raise FormatError(
                    f"{path}:{lineno}: missing key {exc.args[0]!r}") from exc
            if not tweet_id:
                raise FormatError(f"{path}:{lineno}: empty tweet_id")
            tweets.append(Tweet(tweet_id, text))
    return tweets


def write_features_jsonl(features: Iterable[Features], path: str | Path) -> None:
    """Emit the interchange schema, one object per tweet."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for f in features:
            obj = {
                "tweet_id": f.tweet_id,
                "neg": f.neg,
                "neu": f.neu,
                "pos": f.pos,
                "subjectivity": f.subjectivity,
                "fallacy": list(f.fallacy),
                "fallacy_label": f.fallacy_label,
                "fallacy_score": f.fallacy_score,
            }
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")


def check_features(f: Features, tol: float = 1e-6) -> None:
    """Assert the output invariants; raised problems are adapter bugs."""
    for name, v in (("neg", f.neg), ("neu", f.neu), ("pos", f.pos),
                    ("subjectivity", f.subjectivity)):
        if not 0.0 <= v <= 1.0:
            raise AssertionError(f"{f.tweet_id}: {name}={v} outside [0,1]")
    if abs(f.neg + f.neu + f.pos - 1.0) > tol:
        raise AssertionError(f"{f.tweet_id}: polarity sums to "
                             f"{f.neg + f.neu + f.pos}")
    if len(f.fallacy) != N_FALLACY:
        raise AssertionError(
            f"{f.tweet_id}: {len(f.fallacy)} fallacy values, "
            f"expected {N_FALLACY}")
    if any(v < 0.0 for v in f.fallacy):
        raise AssertionError(f"{f.tweet_id}: negative fallacy probability")
    if abs(sum(f.fallacy) - 1.0) > tol:
        raise AssertionError(f"{f.tweet_id}: fallacy sums to {sum(f.fallacy)}")


def validate_all(features: Sequence[Features]) -> None:
    for f in features:
        check_features(f)
