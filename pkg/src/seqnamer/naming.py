"""Full sequence names: digest code + hyphen + familial signature."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .digest import ENCODERS, DEFAULT_ENCODER, NameCode, name_field
from .errors import (
    ConfigMismatchError,
    NameParseError,
    SequenceTooLongError,
    SequenceTooShortError,
)
from .library import SIGNATURE_MIN_LENGTH, FamilialSignature, HexamerLibrary, signature
from .nucleotides import normalize_sequence

MIN_NAME_LENGTH = SIGNATURE_MIN_LENGTH  # 9
MAX_NAME_LENGTH = 60

FULL_NAME_PATTERN = re.compile(
    r"^([A-Z][a-z]{2}(?:0|[1-9][0-9]?))-((?:[A-Z][23]?)+)$"
)


@dataclass(frozen=True)
class FullName:
    """A rendered name like ``Kdo94-H2V``: code, hyphen, compressed signature.

    ``config_id`` records the library/encoder configuration the name was
    generated under; parsed names carry ``None``. It does not participate in
    structural equality, but :func:`names_equal` refuses to compare names
    from different configurations.
    """

    code: NameCode
    signature: FamilialSignature
    config_id: str | None = field(default=None, compare=False)

    def render(self) -> str:
        return f"{self.code.render()}-{self.signature.compressed}"

    def __str__(self) -> str:
        return self.render()


def name_sequence(lib: HexamerLibrary, seq: str) -> FullName:
    """Name a raw sequence: normalize, digest to a code, attach the signature."""
    s = normalize_sequence(seq)
    if len(s) < MIN_NAME_LENGTH:
        raise SequenceTooShortError(
            f"sequence of {len(s)} nt is too short to name (minimum {MIN_NAME_LENGTH})"
        )
    if len(s) > MAX_NAME_LENGTH:
        raise SequenceTooLongError(
            f"sequence of {len(s)} nt is too long to name (maximum {MAX_NAME_LENGTH})"
        )
    encoder = ENCODERS.get(lib.encoder_id, DEFAULT_ENCODER)
    return FullName(
        code=name_field(s, encoder),
        signature=signature(lib, s),
        config_id=lib.config_id,
    )


def parse_name(text: str) -> FullName:
    """Parse a rendered full name back into its fields."""
    m = FULL_NAME_PATTERN.match(text)
    if m is None:
        raise NameParseError(f"not a valid full name: {text!r}")
    code_text, sig_text = m.groups()
    try:
        sig = FamilialSignature.from_compressed(sig_text)
    except ValueError as exc:
        raise NameParseError(str(exc)) from None
    return FullName(code=NameCode.parse(code_text), signature=sig)


def names_equal(a: FullName, b: FullName) -> bool:
    """Structural equality, refusing cross-configuration comparisons."""
    if (
        a.config_id is not None
        and b.config_id is not None
        and a.config_id != b.config_id
    ):
        raise ConfigMismatchError(
            f"names from different configurations are not comparable: "
            f"{a.config_id} vs {b.config_id}"
        )
    return a.code == b.code and a.signature == b.signature
