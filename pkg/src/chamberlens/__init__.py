"""Chamberlens: reply-graph communities vs. communication-style clusters.

Pipeline stages: ingest tweet datasets, build the weighted reply graph,
detect communities by modularity maximization, score per-tweet style
features, cluster tweets on style alone, and measure how well style
predicts community membership.
"""

from chamberlens.errors import ChamberlensError, FormatError, ValidationError

__version__ = "0.1.0"

__all__ = ["ChamberlensError", "FormatError", "ValidationError", "__version__"]
