"""Tiny offline checkpoints for exercising the real inference path.

These are randomly initialized miniature BERT classification heads
saved to local directories, so tests (and air-gapped smoke runs) can
drive the exact tokenizer/forward/softmax code without downloading
anything. They are fixtures, not models: their predictions carry no
meaning beyond being deterministic for a fixed seed.
"""

from __future__ import annotations

from pathlib import Path

import torch
from transformers import BertConfig, BertForSequenceClassification, BertTokenizerFast

VOCAB = (
    ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
    + list("abcdefghijklmnopqrstuvwxyz")
    + [f"##{c}" for c in "abcdefghijklmnopqrstuvwxyz"]
    + ["the", "you", "a", "to", "from", "user", "tweet", "reply",
       "synthetic", "everyone", "##0", "##1", "##2", "##3", "##4",
       "##5", "##6", "##7", "##8", "##9"]
)


def make_checkpoint(directory: str | Path, n_labels: int,
                    id2label: dict[int, str] | None = None,
                    seed: int = 0) -> Path:
    """Write one miniature classifier checkpoint; returns its path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    vocab_file = directory / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB) + "\n", encoding="utf-8")
    tokenizer = BertTokenizerFast(vocab_file=str(vocab_file),
                                  do_lower_case=True)
    tokenizer.model_max_length = 64
    tokenizer.save_pretrained(directory)

    if id2label is None:
        id2label = {i: f"LABEL_{i}" for i in range(n_labels)}
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=32,
        num_hidden_layers=1,
        num_attention_heads=2,
        intermediate_size=37,
        max_position_embeddings=64,
        num_labels=n_labels,
        id2label=id2label,
        label2id={v: k for k, v in id2label.items()},
    )
    torch.manual_seed(seed)
    BertForSequenceClassification(config).save_pretrained(directory)
    return directory


def make_standard_checkpoints(base: str | Path) -> dict[str, Path]:
    """The three slots with conventional label sets, under one root."""
    base = Path(base)
    return {
        "polarity": make_checkpoint(
            base / "polarity", 3,
            {0: "negative", 1: "neutral", 2: "positive"}, seed=1),
        "subjectivity": make_checkpoint(
            base / "subjectivity", 2,
            {0: "objective", 1: "subjective"}, seed=2),
        "fallacy": make_checkpoint(base / "fallacy", 13, seed=3),
    }
