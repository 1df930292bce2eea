"""Batched transformer inference producing one Features row per tweet.

Three model slots: a 3-class polarity classifier, an optional
subjectivity scorer (a 1- or 2-output classification head; the lexicon
mode needs no model), and a fallacy classifier whose label count is
padded or truncated to the 13-slot interchange layout. Per-tweet
failures fall back to the neutral vector and are counted; only a model
that cannot be loaded at all aborts the run.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer
from transformers.utils import logging as hf_logging

from chamberlens_adapter import subjective_words
from chamberlens_adapter.config import N_FALLACY, AdapterConfig
from chamberlens_adapter.errors import ModelError
from chamberlens_adapter.files import (
    Features,
    read_tweets_jsonl,
    validate_all,
    write_features_jsonl,
)

log = logging.getLogger(__name__)

hf_logging.set_verbosity_error()
hf_logging.disable_progress_bar()

NEUTRAL_POLARITY = (0.0, 1.0, 0.0)
UNIFORM_FALLACY = tuple([1.0 / N_FALLACY] * N_FALLACY)

POLARITY_ORDER = ("negative", "neutral", "positive")


@dataclass(frozen=True)
class Summary:
    """What one run did."""

    total: int
    failed: int
    fallacy_model_labels: int


class _Head:
    """One loaded checkpoint plus its tokenizer, evaluated on CPU/GPU."""

    def __init__(self, identifier: str, slot: str, device: str):
        try:
            self.tokenizer = AutoTokenizer.from_pretrained(identifier)
            self.model = AutoModelForSequenceClassification.from_pretrained(
                identifier)
        except Exception as exc:
            raise ModelError(f"{slot} model {identifier!r}: {exc}") from exc
        self.model.eval()
        self.device = torch.device(device)
        self.model.to(self.device)
        self.slot = slot

    @property
    def n_labels(self) -> int:
        return int(self.model.config.num_labels)

    def logits(self, texts: Sequence[str]) -> np.ndarray:
        enc = self.tokenizer(list(texts), padding=True, truncation=True,
                             return_tensors="pt").to(self.device)
        with torch.no_grad():
            out = self.model(**enc).logits
        return out.double().cpu().numpy()

    def probabilities(self, texts: Sequence[str]) -> np.ndarray:
        z = self.logits(texts)
        z -= z.max(axis=1, keepdims=True)
        e = np.exp(z)
        return e / e.sum(axis=1, keepdims=True)


def _polarity_permutation(head: _Head) -> tuple[int, int, int]:
    """Column order mapping model outputs to (neg, neu, pos).

    Matched by label name when the checkpoint provides recognizable
    names; otherwise the declaration order is trusted.
    """
    if head.n_labels != 3:
        raise ModelError(
            f"polarity model has {head.n_labels} labels, expected 3")
    names = {str(v).strip().lower(): int(k)
             for k, v in head.model.config.id2label.items()}
    if all(n in names for n in POLARITY_ORDER):
        return tuple(names[n] for n in POLARITY_ORDER)
    log.warning("polarity model labels %s are not negative/neutral/positive; "
                "using declaration order", sorted(names))
    return (0, 1, 2)


def _subjectivity_column(head: _Head) -> int | None:
    """Which output column means 'subjective'; None for 1-logit heads."""
    if head.n_labels == 1:
        return None
    if head.n_labels != 2:
        raise ModelError(
            f"subjectivity model has {head.n_labels} labels, expected 1 or 2")
    names = {str(v).strip().lower(): int(k)
             for k, v in head.model.config.id2label.items()}
    return names.get("subjective", 1)


def _fit_fallacy(probs: np.ndarray, n_model: int) -> np.ndarray:
    """Pad with zeros or truncate to the 13-slot layout, renormalized."""
    n, k = probs.shape
    if k < N_FALLACY:
        probs = np.hstack([probs, np.zeros((n, N_FALLACY - k))])
    elif k > N_FALLACY:
        probs = probs[:, :N_FALLACY]
    totals = probs.sum(axis=1, keepdims=True)
    totals[totals <= 0.0] = 1.0
    out = probs / totals
    out[out.sum(axis=1) <= 0.0] = np.asarray(UNIFORM_FALLACY)
    return out


def neutral_features(tweet_id: str) -> Features:
    """The fallback row for a tweet that could not be scored."""
    return Features(tweet_id, *NEUTRAL_POLARITY, 0.0, UNIFORM_FALLACY)


class Scorer:
    """Loaded models bound to one configuration."""

    def __init__(self, cfg: AdapterConfig):
        cfg.validate()
        self.cfg = cfg
        self.polarity = _Head(cfg.polarity_model, "polarity", cfg.device)
        self.polarity_cols = _polarity_permutation(self.polarity)
        self.fallacy = _Head(cfg.fallacy_model, "fallacy", cfg.device)
        if self.fallacy.n_labels != N_FALLACY:
            log.warning(
                "fallacy model emits %d classes; output is %s to the "
                "%d-slot layout and renormalized",
                self.fallacy.n_labels,
                "padded" if self.fallacy.n_labels < N_FALLACY else "truncated",
                N_FALLACY)
        self.subjectivity_head: _Head | None = None
        self.subjective_col: int | None = None
        if cfg.subjectivity_mode == "model":
            self.subjectivity_head = _Head(
                cfg.subjectivity_model, "subjectivity", cfg.device)
            self.subjective_col = _subjectivity_column(self.subjectivity_head)

    def _subjectivity(self, texts: Sequence[str]) -> np.ndarray:
        if self.subjectivity_head is None:
            return np.array([subjective_words.subjectivity(t) for t in texts])
        if self.subjective_col is None:
            z = self.subjectivity_head.logits(texts)[:, 0]
            return 1.0 / (1.0 + np.exp(-z))
        return self.subjectivity_head.probabilities(texts)[:, self.subjective_col]

    def score_batch(self, tweets: Sequence) -> list[Features]:
        texts = [t.text for t in tweets]
        pol = self.polarity.probabilities(texts)[:, self.polarity_cols]
        pol /= pol.sum(axis=1, keepdims=True)
        subj = np.clip(self._subjectivity(texts), 0.0, 1.0)
        fal = _fit_fallacy(self.fallacy.probabilities(texts),
                           self.fallacy.n_labels)
        return [
            Features(t.tweet_id, float(p[0]), float(p[1]), float(p[2]),
                     float(s), tuple(float(x) for x in f))
            for t, p, s, f in zip(tweets, pol, subj, fal)
        ]


def score_file(cfg: AdapterConfig,
               scorer_factory: Callable[[AdapterConfig], Scorer] = Scorer,
               ) -> Summary:
    """Score every tweet in cfg.input into cfg.output, in order."""
    cfg.validate()
    tweets = read_tweets_jsonl(cfg.input)
    scorer = scorer_factory(cfg)
    rows: list[Features] = []
    failed = 0
    for start in range(0, len(tweets), cfg.batch_size):
        batch = tweets[start:start + cfg.batch_size]
        try:
            rows.extend(scorer.score_batch(batch))
            continue
        except Exception:
            log.exception("batch at line %d failed; retrying per tweet",
                          start + 1)
        for t in batch:
            try:
                rows.extend(scorer.score_batch([t]))
            except Exception:
                log.warning("tweet %s failed; neutral fallback", t.tweet_id)
                rows.append(neutral_features(t.tweet_id))
                failed += 1
    validate_all(rows)
    write_features_jsonl(rows, cfg.output)
    log.info("scored %d tweets (%d fallbacks) -> %s",
             len(rows), failed, cfg.output)
    return Summary(total=len(rows), failed=failed,
                   fallacy_model_labels=scorer.fallacy.n_labels)
