"""Run configuration for the batch scorer."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from chamberlens_adapter.errors import ValidationError

N_FALLACY = 13

# Model identifiers are configuration, never code: any checkpoint that
# AutoModelForSequenceClassification can load fits a slot. The defaults
# name the tweet-trained polarity family and leave the other two slots
# to be pinned per deployment.
DEFAULT_POLARITY_MODEL = "cardiffnlp/twitter-roberta-base-sentiment-latest"
DEFAULT_SUBJECTIVITY_MODEL = "cffl/bert-base-styleclassification-subjective-neutral"
DEFAULT_FALLACY_MODEL = ""

SUBJECTIVITY_MODES = ("model", "lexicon")


@dataclass(frozen=True)
class AdapterConfig:
    """Everything one scoring run needs."""

    input: Path
    output: Path
    polarity_model: str = DEFAULT_POLARITY_MODEL
    subjectivity_mode: str = "lexicon"
    subjectivity_model: str = DEFAULT_SUBJECTIVITY_MODEL
    fallacy_model: str = DEFAULT_FALLACY_MODEL
    batch_size: int = 32
    device: str = "cpu"

    def validate(self) -> None:
        if self.batch_size < 1:
            raise ValidationError(
                f"batch size must be >= 1, got {self.batch_size}")
        if self.subjectivity_mode not in SUBJECTIVITY_MODES:
            raise ValidationError(
                f"subjectivity mode must be one of {SUBJECTIVITY_MODES}, "
                f"got {self.subjectivity_mode!r}")
        if not self.polarity_model:
            raise ValidationError("polarity model identifier is empty")
        if self.subjectivity_mode == "model" and not self.subjectivity_model:
            raise ValidationError(
                "subjectivity mode 'model' needs a model identifier")
        if not self.fallacy_model:
            raise ValidationError("fallacy model identifier is empty")
