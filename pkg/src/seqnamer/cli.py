"""Command-line surface: name, batch, build-library, eval, collisions."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import __version__
from .alignment import SCORINGS
from .digest import ENCODERS, DEFAULT_ENCODER
from .errors import SeqNamerError
from .fasta import read_fasta
from .library import (
    HexamerLibrary,
    build_library_from_scratch,
    default_library,
    load_library,
    save_library,
)
from .naming import name_sequence
from .reports import (
    batch_name,
    batch_tsv,
    collision_report,
    evaluate_families,
    parse_family_file,
)

LIBRARY_ENV_VAR = "SEQNAMER_LIBRARY"


def _resolve_library(path: str | None) -> HexamerLibrary:
    if path is None:
        path = os.environ.get(LIBRARY_ENV_VAR)
    if path is None:
        return default_library()
    return load_library(path)


def _add_library_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--library",
        metavar="PATH",
        default=None,
        help=f"hexamer library file (default: bundled library, or ${LIBRARY_ENV_VAR})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqnamer",
        description="Deterministic mnemonic names for short nucleotide sequences.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("name", help="name a single sequence")
    p.add_argument("sequence")
    _add_library_flag(p)

    p = sub.add_parser("batch", help="name every record of a FASTA file")
    p.add_argument("fasta")
    p.add_argument("--out", metavar="TSV", default=None, help="output path (default: stdout)")
    _add_library_flag(p)

    p = sub.add_parser("build-library", help="rebuild the hexamer library from scratch")
    p.add_argument(
        "--scoring",
        default=None,
        metavar="ID",
        help=f"alignment scoring id (known: {', '.join(sorted(SCORINGS))})",
    )
    p.add_argument("--out", metavar="PATH", default="hexamer_library.txt")
    _add_library_flag(p)

    p = sub.add_parser("eval", help="family-coherence report for a family TSV file")
    p.add_argument("family_file")
    p.add_argument("--out", metavar="TSV", default=None, help="output path (default: stdout)")
    _add_library_flag(p)

    p = sub.add_parser("collisions", help="seeded collision/avalanche census")
    p.add_argument("--n", type=int, required=True, help="number of random sequences")
    p.add_argument("--len", dest="length", type=int, required=True, help="sequence length (nt)")
    p.add_argument("--seed", type=int, required=True)
    _add_library_flag(p)

    return parser


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "name":
            lib = _resolve_library(args.library)
            print(name_sequence(lib, args.sequence).render())

        elif args.command == "batch":
            lib = _resolve_library(args.library)
            rows = batch_name(read_fasta(args.fasta), lib)
            _emit(batch_tsv(rows, lib), args.out)

        elif args.command == "build-library":
            scoring_id = args.scoring or next(iter(SCORINGS))
            if scoring_id not in SCORINGS:
                raise SeqNamerError(
                    f"unknown scoring id {scoring_id!r}; known: {sorted(SCORINGS)}"
                )
            lib = build_library_from_scratch(
                scoring=SCORINGS[scoring_id], encoder=DEFAULT_ENCODER, verbose=True
            )
            save_library(lib, args.out)
            print(f"library written to {args.out}", file=sys.stderr)

        elif args.command == "eval":
            lib = _resolve_library(args.library)
            with open(args.family_file, "r", encoding="utf-8") as fh:
                members = parse_family_file(fh)
            _emit(evaluate_families(members, lib).to_tsv(), args.out)

        elif args.command == "collisions":
            lib = _resolve_library(args.library)
            encoder = ENCODERS.get(lib.encoder_id, DEFAULT_ENCODER)
            report = collision_report(args.n, args.length, args.seed, encoder)
            sys.stdout.write(report.to_text())

    except (SeqNamerError, OSError, ValueError) as exc:
        print(f"error\t{type(exc).__name__}\t{exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
