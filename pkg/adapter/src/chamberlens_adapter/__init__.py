"""Transformer-based tweet style scorer.

Reads tweets.jsonl, runs pretrained polarity / subjectivity / fallacy
models, and writes the features.jsonl interchange file the pipeline's
import scorer consumes.
"""

__version__ = "0.1.0"

from chamberlens_adapter.config import AdapterConfig  # noqa: E402
from chamberlens_adapter import cli  # noqa: E402

__all__ = ["AdapterConfig", "cli", "__version__"]
