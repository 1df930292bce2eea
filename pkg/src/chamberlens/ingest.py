"""Parse tweet datasets into validated records and emit the canonical
tweets.jsonl interchange file.

Rows missing a tweet id or user id are skipped (counted, never fatal on
their own); duplicate tweet ids keep the last occurrence at the position
of the first. Text and timestamps are stored verbatim -- normalization is
each downstream scorer's job.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from chamberlens.errors import FormatError

log = logging.getLogger(__name__)

# Kaggle vaccination-dataset column names; override via config when the
# source uses a different header.
DEFAULT_CSV_COLUMNS: Mapping[str, str] = {
    "tweet_id": "id",
    "user_id": "user_id",
    "text": "text",
    "created_at": "date",
    "reply_to_user_id": "reply_to",
}

JSONL_KEYS = ("tweet_id", "user_id", "text", "created_at", "reply_to_user_id")


@dataclass(frozen=True, slots=True)
class TweetRecord:
    """One message. reply_to_user_id is None when the tweet is not a reply;
    it may equal user_id (self-reply, dropped later by the graph builder)."""

    tweet_id: str
    user_id: str
    text: str
    created_at: str | None = None
    reply_to_user_id: str | None = None


@dataclass(frozen=True)
class ParseResult:
    """Parsed records plus the bookkeeping needed for the row-count identity
    skipped + len(records) + duplicates == input rows."""

    records: tuple[TweetRecord, ...]
    skipped: int
    duplicates: int

    @property
    def rows(self) -> int:
        return self.skipped + len(self.records) + self.duplicates

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)


def _clean_optional(value: object) -> str | None:
    if value is None:
        return None
    s = str(value)
    return s if s.strip() else None


def _record_from_fields(tweet_id: object, user_id: object, text: object,
                        created_at: object, reply_to: object) -> TweetRecord | None:
    tid = str(tweet_id).strip() if tweet_id is not None else ""
    uid = str(user_id).strip() if user_id is not None else ""
    if not tid or not uid:
        return None
    return TweetRecord(
        tweet_id=tid,
        user_id=uid,
        text="" if text is None else str(text),
        created_at=_clean_optional(created_at),
        reply_to_user_id=_clean_optional(reply_to),
    )


def parse_dataset(path: str | Path, fmt: str,
                  csv_columns: Mapping[str, str] | None = None) -> ParseResult:
    """Parse a CSV (with header) or JSONL dataset into TweetRecords.

    Records come back in file order; a duplicated tweet_id keeps the last
    occurrence's content at the first occurrence's position. More than 50%
    skipped rows raises FormatError (signals a wrong column mapping).
    """
    path = Path(path)
    if fmt == "csv":
        raw = _iter_csv(path, csv_columns or DEFAULT_CSV_COLUMNS)
    elif fmt == "jsonl":
        raw = _iter_jsonl(path)
    else:
        raise FormatError(f"unknown dataset format: {fmt!r}")

    records: list[TweetRecord] = []
    position: dict[str, int] = {}
    skipped = 0
    duplicates = 0
    for rec in raw:
        if rec is None:
            skipped += 1
            continue
        slot = position.get(rec.tweet_id)
        if slot is None:
            position[rec.tweet_id] = len(records)
            records.append(rec)
        else:
            records[slot] = rec
            duplicates += 1

    total = skipped + len(records) + duplicates
    if total and skipped * 2 > total:
        raise FormatError(
            f"{skipped} of {total} rows skipped (>50%); check the column mapping"
        )
    if skipped or duplicates:
        log.info("parsed %s: %d records, %d skipped, %d duplicates",
                 path, len(records), skipped, duplicates)
    return ParseResult(tuple(records), skipped, duplicates)


def _iter_csv(path: Path, columns: Mapping[str, str]):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            return  # empty file, zero rows
        required = [columns["tweet_id"], columns["user_id"], columns["text"]]
        missing = [c for c in required if c not in header]
        if missing:
            raise FormatError(f"CSV header missing required columns: {missing}")
        col_created = columns.get("created_at")
        col_reply = columns.get("reply_to_user_id")
        for row in reader:
            yield _record_from_fields(
                row.get(columns["tweet_id"]),
                row.get(columns["user_id"]),
                row.get(columns["text"]),
                row.get(col_created) if col_created else None,
                row.get(col_reply) if col_reply else None,
            )


def _iter_jsonl(path: Path):
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                yield None
                continue
            if not isinstance(obj, dict):
                yield None
                continue
            yield _record_from_fields(
                obj.get("tweet_id"),
                obj.get("user_id"),
                obj.get("text"),
                obj.get("created_at"),
                obj.get("reply_to_user_id"),
            )


def write_tweets_jsonl(records: Iterable[TweetRecord], path: str | Path) -> None:
    """Write records as one JSON object per line; round-trips losslessly
    through parse_dataset(format=jsonl)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            obj = {
                "tweet_id": rec.tweet_id,
                "user_id": rec.user_id,
                "text": rec.text,
                "created_at": rec.created_at,
                "reply_to_user_id": rec.reply_to_user_id,
            }
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
