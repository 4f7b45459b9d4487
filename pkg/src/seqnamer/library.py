"""Letter-coded hexamer libraries and familial signatures.

The optimally ordered list of all 4,096 hexamers is split into 26 contiguous
bins labeled A-Z; a sequence's familial signature is the run-length
compressed string of the letters of its three hexamers at positions 2-9.

Library files are versioned plain text with a trailing checksum so a library
is diffable, auditable, and bit-exact across machines.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .alignment import DEFAULT_SCORING
from .digest import DEFAULT_ENCODER
from .errors import (
    LibraryChecksumError,
    LibraryInvariantError,
    LibraryTruncatedError,
    LibraryVersionError,
    SequenceAlphabetError,
    SequenceTooShortError,
)
from .nucleotides import (
    HEXAMER_LENGTH,
    NUM_HEXAMERS,
    all_hexamers,
    normalize_sequence,
)

FORMAT_VERSION = "hexlib-v1"
LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
NUM_BINS = 26

# 4096 = 14 * 158 + 12 * 157; the first 14 bins take the extra entry.
BIN_SIZES = tuple(
    158 if i < NUM_HEXAMERS % NUM_BINS else 157 for i in range(NUM_BINS)
)

SIGNATURE_START = 1  # 0-based start of the 2-9 window
SIGNATURE_MIN_LENGTH = 9
SIGNATURE_HEXAMERS = 3


@dataclass(frozen=True)
class HexamerLibrary:
    """All 4,096 hexamers mapped to letters via contiguous bins of a leaf order."""

    format_version: str
    encoder_id: str
    scoring_id: str
    order: tuple[str, ...]

    def __post_init__(self):
        if len(self.order) != NUM_HEXAMERS or set(self.order) != set(all_hexamers()):
            raise LibraryInvariantError(
                "library order must be a permutation of all 4096 hexamers"
            )
        object.__setattr__(self, "_letter_of", self._build_lookup())

    def _build_lookup(self) -> dict[str, str]:
        lookup: dict[str, str] = {}
        pos = 0
        for letter, size in zip(LETTERS, BIN_SIZES):
            for h in self.order[pos : pos + size]:
                lookup[h] = letter
            pos += size
        return lookup

    @property
    def config_id(self) -> str:
        return f"{self.format_version}/{self.encoder_id}/{self.scoring_id}"

    def letter_for(self, hexamer: str) -> str:
        h = normalize_sequence(hexamer)
        if len(h) != HEXAMER_LENGTH:
            raise SequenceAlphabetError(f"expected a hexamer, got {len(h)} characters")
        return self._letter_of[h]

    def entries(self) -> Iterable[tuple[str, str]]:
        """(hexamer, letter) pairs in leaf order."""
        pos = 0
        for letter, size in zip(LETTERS, BIN_SIZES):
            for h in self.order[pos : pos + size]:
                yield h, letter
            pos += size

    def bins(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, tuple[str, ...]] = {}
        pos = 0
        for letter, size in zip(LETTERS, BIN_SIZES):
            out[letter] = self.order[pos : pos + size]
            pos += size
        return out


def build_library(
    order: Sequence[int] | Sequence[str],
    encoder_id: str = DEFAULT_ENCODER.id,
    scoring_id: str = DEFAULT_SCORING.id,
) -> HexamerLibrary:
    """Assemble a library from a leaf order (hexamer indices or strings)."""
    hx = all_hexamers()
    ordered: list[str] = []
    for item in order:
        if isinstance(item, str):
            ordered.append(item)
        else:
            ordered.append(hx[int(item)])
    return HexamerLibrary(
        format_version=FORMAT_VERSION,
        encoder_id=encoder_id,
        scoring_id=scoring_id,
        order=tuple(ordered),
    )


def compress_letters(raw: str) -> str:
    """Run-length render: tandem repeats become letter + count (HVV -> HV2)."""
    out: list[str] = []
    i = 0
    while i < len(raw):
        j = i
        while j < len(raw) and raw[j] == raw[i]:
            j += 1
        run = j - i
        out.append(raw[i] if run == 1 else f"{raw[i]}{run}")
        i = j
    return "".join(out)


def expand_signature(compressed: str) -> str:
    """Inverse of :func:`compress_letters` for three-letter signatures."""
    out: list[str] = []
    i = 0
    while i < len(compressed):
        c = compressed[i]
        if not c.isupper() or not c.isalpha():
            raise ValueError(f"malformed signature: {compressed!r}")
        i += 1
        count = 1
        if i < len(compressed) and compressed[i].isdigit():
            count = int(compressed[i])
            i += 1
        if count < 1:
            raise ValueError(f"malformed signature: {compressed!r}")
        out.append(c * count)
    return "".join(out)


@dataclass(frozen=True)
class FamilialSignature:
    """Three bin letters (one per hexamer at positions 2-9), shown compressed."""

    raw: str

    def __post_init__(self):
        if len(self.raw) != SIGNATURE_HEXAMERS or any(
            c not in LETTERS for c in self.raw
        ):
            raise ValueError(f"signature must be three letters A-Z, got {self.raw!r}")

    @property
    def compressed(self) -> str:
        return compress_letters(self.raw)

    @classmethod
    def from_compressed(cls, text: str) -> "FamilialSignature":
        return cls(expand_signature(text))

    def __str__(self) -> str:
        return self.compressed


def signature(lib: HexamerLibrary, seq: str) -> FamilialSignature:
    """Signature from the three overlapping hexamers at positions 2-9 (1-based)."""
    s = normalize_sequence(seq)
    if len(s) < SIGNATURE_MIN_LENGTH:
        raise SequenceTooShortError(
            f"sequence of {len(s)} nt is too short; signatures need at least "
            f"{SIGNATURE_MIN_LENGTH} nt"
        )
    letters = "".join(
        lib.letter_for(s[start : start + HEXAMER_LENGTH])
        for start in range(SIGNATURE_START, SIGNATURE_START + SIGNATURE_HEXAMERS)
    )
    return FamilialSignature(letters)


# --- persistence ---------------------------------------------------------

def _checksum(encoder_id: str, scoring_id: str, data_lines: list[str]) -> str:
    payload = "\n".join(
        [f"format\t{FORMAT_VERSION}", f"encoder\t{encoder_id}", f"scoring\t{scoring_id}"]
        + data_lines
    )
    return hashlib.sha256(payload.encode("ascii")).hexdigest()


def library_text(lib: HexamerLibrary, timestamp: str = "") -> str:
    """Render a library to its file format (timestamp excluded from the checksum)."""
    data_lines = [f"{h}\t{letter}" for h, letter in lib.entries()]
    header = [
        f"#format\t{lib.format_version}",
        f"#encoder\t{lib.encoder_id}",
        f"#scoring\t{lib.scoring_id}",
        f"#built\t{timestamp}",
    ]
    checksum = _checksum(lib.encoder_id, lib.scoring_id, data_lines)
    return "\n".join(header + data_lines + [f"#checksum\t{checksum}"]) + "\n"


def save_library(lib: HexamerLibrary, path, timestamp: str = "") -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(library_text(lib, timestamp))


def parse_library(text: str) -> HexamerLibrary:
    lines = text.splitlines()
    header: dict[str, str] = {}
    data_lines: list[str] = []
    checksum: str | None = None
    for line in lines:
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition("\t")
            if key == "checksum":
                checksum = value
            else:
                header[key] = value
        else:
            data_lines.append(line)

    if "format" not in header:
        raise LibraryTruncatedError("missing format header line")
    if header["format"] != FORMAT_VERSION:
        raise LibraryVersionError(
            f"unsupported library format {header['format']!r}; expected {FORMAT_VERSION!r}"
        )
    for key in ("encoder", "scoring"):
        if key not in header:
            raise LibraryTruncatedError(f"missing {key} header line")
    if checksum is None:
        raise LibraryTruncatedError("missing checksum line")

    entries = []
    for line in data_lines:
        h, sep, letter = line.partition("\t")
        if not sep or len(letter) != 1:
            raise LibraryTruncatedError(f"malformed data line: {line!r}")
        entries.append((h, letter))

    if len(entries) != NUM_HEXAMERS:
        raise LibraryInvariantError(
            f"expected {NUM_HEXAMERS} entries, found {len(entries)}"
        )
    order = tuple(h for h, _ in entries)
    if set(order) != set(all_hexamers()):
        raise LibraryInvariantError("entries are not a permutation of all hexamers")
    # Letters must be the canonical contiguous-bin assignment for this order.
    expected = []
    for letter, size in zip(LETTERS, BIN_SIZES):
        expected.extend(letter * size)
    if [letter for _, letter in entries] != expected:
        raise LibraryInvariantError("letter column does not match the canonical bins")

    if _checksum(header["encoder"], header["scoring"], data_lines) != checksum:
        raise LibraryChecksumError("library checksum mismatch")

    return HexamerLibrary(
        format_version=header["format"],
        encoder_id=header["encoder"],
        scoring_id=header["scoring"],
        order=order,
    )


def load_library(path) -> HexamerLibrary:
    with open(path, "r", encoding="ascii") as fh:
        return parse_library(fh.read())


DEFAULT_LIBRARY_RESOURCE = "hexamer_library_default.txt"


@lru_cache(maxsize=1)
def default_library() -> HexamerLibrary:
    """The library shipped with the package (prebuilt offline)."""
    text = (
        resources.files("seqnamer.data").joinpath(DEFAULT_LIBRARY_RESOURCE).read_text("ascii")
    )
    return parse_library(text)


def build_library_from_scratch(
    scoring=DEFAULT_SCORING,
    encoder=DEFAULT_ENCODER,
    verbose: bool = False,
) -> HexamerLibrary:
    """Full offline pipeline: similarity matrix, clustering, leaf ordering, bins.

    Takes minutes; the shipped default library exists so normal use never
    runs this.
    """
    from .alignment import build_similarity_matrix, distance_matrix
    from .clustering import average_linkage_cluster, optimal_leaf_order

    if verbose:
        print("building pairwise similarity matrix...", flush=True)
    sim = build_similarity_matrix(scoring=scoring, verbose=verbose)
    dist = distance_matrix(sim)
    if verbose:
        print("clustering 4096 hexamers...", flush=True)
    tree = average_linkage_cluster(dist, verbose=verbose)
    if verbose:
        print("ordering dendrogram leaves...", flush=True)
    order = optimal_leaf_order(tree, dist, verbose=verbose)
    return build_library(order, encoder_id=encoder.id, scoring_id=scoring.id)
