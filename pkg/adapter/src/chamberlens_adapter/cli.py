"""Command line wrapper: tweets.jsonl in, features.jsonl out.

Exit codes: 0 success, 1 validation or model problem, 2 I/O problem.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from chamberlens_adapter import __version__
from chamberlens_adapter.config import (
    DEFAULT_FALLACY_MODEL,
    DEFAULT_POLARITY_MODEL,
    DEFAULT_SUBJECTIVITY_MODEL,
    SUBJECTIVITY_MODES,
    AdapterConfig,
)
from chamberlens_adapter.errors import AdapterError

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="chamberlens-adapter",
        description="Score tweet style with pretrained classifiers and "
                    "emit the features.jsonl interchange file")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--in", dest="in_path", type=Path, required=True,
                        help="tweets.jsonl")
    parser.add_argument("--out", type=Path, required=True,
                        help="features.jsonl")
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--polarity-model", default=DEFAULT_POLARITY_MODEL,
                        help="3-class sentiment checkpoint (path or hub id)")
    parser.add_argument("--subjectivity-mode", choices=SUBJECTIVITY_MODES,
                        default="lexicon",
                        help="'model' runs a classifier head, 'lexicon' "
                             "uses the built-in opinion-marker density")
    parser.add_argument("--subjectivity-model",
                        default=DEFAULT_SUBJECTIVITY_MODEL,
                        help="checkpoint used when --subjectivity-mode=model")
    parser.add_argument("--fallacy-model", default=DEFAULT_FALLACY_MODEL,
                        help="fallacy classifier checkpoint; up to 13 classes "
                             "map directly, other counts are fitted with a "
                             "warning")
    parser.add_argument("--device", default="cpu",
                        help="torch device string (default cpu)")
    parser.add_argument("--quiet", action="store_true",
                        help="only warnings and errors on stderr")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"chamberlens-adapter: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SystemExit as exc:  # --help/--version exit through argparse
        return int(exc.code or 0)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    cfg = AdapterConfig(
        input=args.in_path,
        output=args.out,
        polarity_model=args.polarity_model,
        subjectivity_mode=args.subjectivity_mode,
        subjectivity_model=args.subjectivity_model,
        fallacy_model=args.fallacy_model,
        batch_size=args.batch_size,
        device=args.device,
    )
    from chamberlens_adapter import scoring

    try:
        summary = scoring.score_file(cfg)
    except AdapterError as exc:
        log.error("%s", exc)
        return EXIT_VALIDATION
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    log.info("done: %d tweets, %d fallbacks", summary.total, summary.failed)
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
