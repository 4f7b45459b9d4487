"""Minimal FASTA ingestion for the batch tools."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO, Union

from .errors import FastaParseError


@dataclass(frozen=True)
class FastaRecord:
    id: str
    description: str
    sequence: str


def parse_fasta(source: Union[TextIO, Iterable[str], str]) -> Iterator[FastaRecord]:
    """Yield records in file order; multi-line sequences are concatenated.

    Raises on sequence data before the first header, on headers with no id,
    and on records with no sequence content.
    """
    if isinstance(source, str):
        source = source.splitlines()

    header: tuple[str, str] | None = None
    chunks: list[str] = []
    line_no = 0

    def flush() -> FastaRecord:
        assert header is not None
        seq = "".join(chunks)
        if not seq:
            raise FastaParseError(f"record {header[0]!r} has no sequence data")
        return FastaRecord(id=header[0], description=header[1], sequence=seq)

    for line in source:
        line_no += 1
        line = line.rstrip("\n").rstrip("\r")
        if not line.strip():
            continue
        if line.startswith(">"):
            if header is not None:
                yield flush()
            parts = line[1:].strip().split(None, 1)
            if not parts:
                raise FastaParseError(f"line {line_no}: header with no identifier")
            header = (parts[0], parts[1] if len(parts) > 1 else "")
            chunks = []
        else:
            if header is None:
                raise FastaParseError(
                    f"line {line_no}: sequence data before the first '>' header"
                )
            chunks.append("".join(line.split()))
    if header is not None:
        yield flush()


def read_fasta(path) -> list[FastaRecord]:
    with open(path, "r", encoding="utf-8") as fh:
        return list(parse_fasta(fh))
