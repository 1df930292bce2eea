"""Compact opinion-marker lexicon for the model-free subjectivity mode.

A text reads as subjective when it leans on evaluative adjectives,
hedges, intensifiers, or first/second-person framing; the score is the
density of such markers, capped at 1.
"""

from __future__ import annotations

import re

MARKERS = frozenset("""
absolutely actually amazing appalling awesome awful bad beautiful believe
best better boring brilliant certainly clearly definitely disappointing
disgusting doubt dreadful excellent exciting fantastic favorite feel felt
frankly frustrating glad good great happy hate hideous honestly hope
horrible huge imagine impressive incredible insane interesting lame love
lovely ludicrous mediocre miserable must naturally nice obviously opinion
outrageous overrated pathetic perfect personally pleasant poor prefer
pretty probably really ridiculous sad seems shocking should stunning
stupid superb suppose surely terrible think thought tremendous truly
ugly unbelievable underrated unfair wish wonderful worst wow
""".split())

PERSONAL = frozenset(
    ["i", "me", "my", "mine", "myself", "we", "us", "our", "ours",
     "you", "your", "yours", "yourself"])

_WORD = re.compile(r"[a-z']+")


def subjectivity(text: str) -> float:
    """Marker density in [0,1]; empty or markerless text scores 0."""
    tokens = _WORD.findall(text.lower())
    if not tokens:
        return 0.0
    hits = sum(1 for t in tokens if t in MARKERS or t in PERSONAL)
    return min(1.0, 3.0 * hits / len(tokens))
