"""Shared fixtures: tiny local checkpoints and a tweet corpus."""

import json

import pytest

from chamberlens_adapter.config import AdapterConfig
from chamberlens_adapter.testing import make_checkpoint, make_standard_checkpoints

TEXTS = [
    "you are a terrible liar and everyone knows it",
    "the sky is blue today",
    "",
    "i really love this wonderful idea",
    "synthetic tweet from user u0001",
]


@pytest.fixture(scope="session")
def checkpoints(tmp_path_factory):
    return make_standard_checkpoints(tmp_path_factory.mktemp("ckpt"))


@pytest.fixture(scope="session")
def odd_checkpoints(tmp_path_factory):
    base = tmp_path_factory.mktemp("odd")
    return {
        "nine": make_checkpoint(base / "nine", 9, seed=4),
        "fifteen": make_checkpoint(base / "fifteen", 15, seed=5),
    }


def write_tweets(path, texts):
    with open(path, "w", encoding="utf-8") as fh:
        for i, text in enumerate(texts):
            fh.write(json.dumps({
                "tweet_id": f"t{i:04d}", "user_id": f"u{i % 3}",
                "text": text, "created_at": None, "reply_to_user_id": None,
            }) + "\n")
    return path


@pytest.fixture()
def tweets_file(tmp_path):
    return write_tweets(tmp_path / "tweets.jsonl", TEXTS)


def config_for(checkpoints, tweets_path, out_path, **overrides):
    kwargs = dict(
        input=tweets_path,
        output=out_path,
        polarity_model=str(checkpoints["polarity"]),
        subjectivity_mode="model",
        subjectivity_model=str(checkpoints["subjectivity"]),
        fallacy_model=str(checkpoints["fallacy"]),
        batch_size=4,
    )
    kwargs.update(overrides)
    return AdapterConfig(**kwargs)
