"""Exception types shared across the package.

Every user-facing failure mode gets its own class so the CLI can map
errors to stable machine-readable codes.
"""


class SeqNamerError(Exception):
    """Base class for all package errors."""


class SequenceAlphabetError(SeqNamerError):
    """Input contains characters outside the nucleotide alphabet, or is empty."""


class SequenceLengthError(SeqNamerError):
    """Input sequence length is outside the supported range."""


class SequenceTooShortError(SequenceLengthError):
    pass


class SequenceTooLongError(SequenceLengthError):
    pass


class MessageTooLongError(SeqNamerError):
    """Bit message does not fit the 16-bit length field."""


class BlockSizeError(SeqNamerError):
    """Compression block is not exactly 96 bits."""


class NameParseError(SeqNamerError):
    """Rendered name does not match the name grammar."""


class ConfigMismatchError(SeqNamerError):
    """Names generated under different encoder/library configurations were compared."""


class FastaParseError(SeqNamerError):
    """Malformed FASTA input."""


class FamilyFileError(SeqNamerError):
    """Malformed family evaluation file."""


class LibraryError(SeqNamerError):
    """Base class for hexamer library file problems."""


class LibraryVersionError(LibraryError):
    """Library file declares an unsupported format version."""


class LibraryTruncatedError(LibraryError):
    """Library file is structurally incomplete (missing sections or checksum)."""


class LibraryChecksumError(LibraryError):
    """Library file content does not match its checksum."""


class LibraryInvariantError(LibraryError):
    """Library content violates a structural invariant (entry count, partition)."""


class ClusteringInputError(SeqNamerError):
    """Distance matrix is not square/symmetric/zero-diagonal."""
