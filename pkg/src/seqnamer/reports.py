"""Batch naming, family-coherence evaluation, and hash-quality reports.

Every report embeds the configuration it was generated under (library
config id or encoder id, plus the random generator name and seed where
randomness exists), and renders deterministically: rerunning with the same
arguments reproduces the output byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO, Union

import numpy as np

from .digest import DEFAULT_ENCODER, NAMESPACE_SIZE, SequenceEncoder, digest_numbers
from .errors import FamilyFileError, SeqNamerError
from .fasta import FastaRecord
from .library import HexamerLibrary, signature
from .naming import name_sequence
from .nucleotides import ALPHABET, normalize_sequence

RNG_NAME = "numpy-pcg64"

BATCH_COLUMNS = ("id", "sequence", "code", "signature", "name", "error")
FAMILY_COLUMNS = ("family", "size", "modal_signature", "coherence")


@dataclass(frozen=True)
class BatchRow:
    record_id: str
    sequence: str
    code: str
    signature: str
    name: str
    error: str


def batch_name(records: Iterable[FastaRecord], lib: HexamerLibrary) -> list[BatchRow]:
    """One row per record, in input order; per-record failures never abort."""
    rows: list[BatchRow] = []
    for rec in records:
        try:
            shown = normalize_sequence(rec.sequence)
        except SeqNamerError:
            shown = rec.sequence
        try:
            full = name_sequence(lib, rec.sequence)
            rows.append(
                BatchRow(
                    rec.id,
                    shown,
                    full.code.render(),
                    full.signature.compressed,
                    full.render(),
                    "",
                )
            )
        except SeqNamerError as exc:
            rows.append(
                BatchRow(rec.id, shown, "", "", "", f"{type(exc).__name__}: {exc}")
            )
    return rows


def batch_tsv(rows: Sequence[BatchRow], lib: HexamerLibrary) -> str:
    lines = [f"# library\t{lib.config_id}", "\t".join(BATCH_COLUMNS)]
    for r in rows:
        lines.append(
            "\t".join((r.record_id, r.sequence, r.code, r.signature, r.name, r.error))
        )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FamilyRow:
    family_id: str
    size: int
    modal_signature: str
    coherence: float | None


@dataclass(frozen=True)
class FamilyEvalReport:
    rows: tuple[FamilyRow, ...]
    mean_coherence: float | None
    config_id: str

    def to_tsv(self) -> str:
        lines = [f"# library\t{self.config_id}", "\t".join(FAMILY_COLUMNS)]
        for r in self.rows:
            coh = "NA" if r.coherence is None else format(r.coherence, ".6f")
            lines.append(f"{r.family_id}\t{r.size}\t{r.modal_signature}\t{coh}")
        scored = sum(1 for r in self.rows if r.size > 0)
        mean = "NA" if self.mean_coherence is None else format(self.mean_coherence, ".6f")
        lines.append(f"# families_scored\t{scored}")
        lines.append(f"# mean_coherence\t{mean}")
        return "\n".join(lines) + "\n"


def parse_family_file(
    source: Union[TextIO, Iterable[str], str],
) -> list[tuple[str, str, str]]:
    """Parse TSV lines ``family-id TAB member-id TAB sequence``."""
    if isinstance(source, str):
        source = source.splitlines()
    out: list[tuple[str, str, str]] = []
    for line_no, line in enumerate(source, start=1):
        line = line.rstrip("\n").rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3 or not parts[0] or not parts[1]:
            raise FamilyFileError(
                f"line {line_no}: expected 'family<TAB>member<TAB>sequence'"
            )
        out.append((parts[0], parts[1], parts[2]))
    return out


def evaluate_families(
    members: Iterable[tuple[str, str, str]], lib: HexamerLibrary
) -> FamilyEvalReport:
    """Per-family modal-signature coherence, averaged over scoreable families.

    Coherence is the fraction of a family's valid members that share the
    family's most common signature (ties go to the lexicographically smaller
    signature). Families whose members are all invalid are reported with size
    zero and excluded from the mean.
    """
    families: dict[str, list[str]] = {}
    for family_id, _member_id, seq in members:
        sigs = families.setdefault(family_id, [])
        try:
            sigs.append(signature(lib, seq).compressed)
        except SeqNamerError:
            pass

    rows: list[FamilyRow] = []
    scored: list[float] = []
    for family_id, sigs in families.items():
        if not sigs:
            rows.append(FamilyRow(family_id, 0, "", None))
            continue
        counts: dict[str, int] = {}
        for s in sigs:
            counts[s] = counts.get(s, 0) + 1
        modal = min(counts, key=lambda s: (-counts[s], s))
        coherence = counts[modal] / len(sigs)
        rows.append(FamilyRow(family_id, len(sigs), modal, coherence))
        scored.append(coherence)

    mean = sum(scored) / len(scored) if scored else None
    return FamilyEvalReport(tuple(rows), mean, lib.config_id)


# --- collision and avalanche census --------------------------------------

def birthday_expected_distinct(n: int, m: int = NAMESPACE_SIZE) -> float:
    """Expected distinct values after n uniform draws into m slots."""
    return m * (1.0 - (1.0 - 1.0 / m) ** n)


_POP16 = np.array([bin(v).count("1") for v in range(1 << 16)], dtype=np.uint8)


def _popcount24(values: np.ndarray) -> np.ndarray:
    return _POP16[values & 0xFFFF] + _POP16[values >> 16]


@dataclass(frozen=True)
class CollisionReport:
    n: int
    length: int
    seed: int
    encoder_id: str
    distinct_inputs: int
    distinct_names: int
    expected_distinct: float
    collision_pairs: int
    bit_bias: tuple[float, ...]
    avalanche_pairs: int
    avalanche_mean_bits: float
    avalanche_min_bits: int
    avalanche_max_bits: int

    def to_text(self) -> str:
        lines = [
            f"generator\t{RNG_NAME}",
            f"seed\t{self.seed}",
            f"n\t{self.n}",
            f"length\t{self.length}",
            f"encoder\t{self.encoder_id}",
            f"namespace\t{NAMESPACE_SIZE}",
            f"distinct_inputs\t{self.distinct_inputs}",
            f"distinct_names\t{self.distinct_names}",
            f"expected_distinct\t{self.expected_distinct:.3f}",
            f"collision_pairs\t{self.collision_pairs}",
            f"avalanche_pairs\t{self.avalanche_pairs}",
            f"avalanche_mean_bits\t{self.avalanche_mean_bits:.6f}",
            f"avalanche_min_bits\t{self.avalanche_min_bits}",
            f"avalanche_max_bits\t{self.avalanche_max_bits}",
            "bit_bias\t" + ",".join(format(b, ".6f") for b in self.bit_bias),
        ]
        return "\n".join(lines) + "\n"


def random_sequence_codes(n: int, length: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, len(ALPHABET), size=(n, length), dtype=np.uint8)


def collision_report(
    n: int,
    length: int,
    seed: int,
    encoder: SequenceEncoder = DEFAULT_ENCODER,
    avalanche_pairs: int = 10_000,
) -> CollisionReport:
    """Census of name collisions and state statistics over seeded random input."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    codes = random_sequence_codes(n, length, rng)
    numbers = digest_numbers(codes, encoder)
    values = numbers % NAMESPACE_SIZE

    _, counts = np.unique(values, return_counts=True)
    distinct_names = int(counts.size)
    collision_pairs = int((counts * (counts - 1) // 2).sum())
    distinct_inputs = int(np.unique(codes, axis=0).shape[0])

    bit_bias = tuple(
        float(((numbers >> i) & 1).mean()) for i in range(24)
    )

    k = min(n, avalanche_pairs)
    base = codes[:k]
    positions = rng.integers(0, length, size=k)
    offsets = rng.integers(1, len(ALPHABET), size=k).astype(np.uint8)
    flipped = base.copy()
    rows = np.arange(k)
    flipped[rows, positions] = (flipped[rows, positions] + offsets) % len(ALPHABET)
    diff = _popcount24(digest_numbers(base, encoder) ^ digest_numbers(flipped, encoder))

    return CollisionReport(
        n=n,
        length=length,
        seed=seed,
        encoder_id=encoder.id,
        distinct_inputs=distinct_inputs,
        distinct_names=distinct_names,
        expected_distinct=birthday_expected_distinct(n),
        collision_pairs=collision_pairs,
        bit_bias=bit_bias,
        avalanche_pairs=k,
        avalanche_mean_bits=float(diff.mean()),
        avalanche_min_bits=int(diff.min()),
        avalanche_max_bits=int(diff.max()),
    )
