"""seqnamer: deterministic mnemonic names for short nucleotide sequences.

A sequence gets a compact-digest code (three letters plus up to two digits)
and a familial signature derived from a precomputed clustering of all 4,096
hexamers; the two are joined by a hyphen (e.g. ``Kdo94-H2V``).
"""

__version__ = "0.1.0"

from .bits import (
    BitString,
    Word6,
    bitwise_and,
    bitwise_not,
    bitwise_or,
    bitwise_xor,
    logical_f,
    logical_g,
    logical_h,
    logical_i,
    mod_add,
    rotate_left,
)
from .digest import (
    DEFAULT_ENCODER,
    NAMESPACE_SIZE,
    DigestState,
    NameCode,
    SequenceEncoder,
    compress_block,
    digest,
    encode_sequence,
    name_field,
    pad_message,
    state_to_name,
)
from .alignment import (
    DEFAULT_SCORING,
    AlignmentScoring,
    build_similarity_matrix,
    distance_matrix,
    local_align_identity,
)
from .clustering import (
    Dendrogram,
    Merge,
    average_linkage_cluster,
    leaf_order_cost,
    optimal_leaf_order,
)
from .library import (
    FamilialSignature,
    HexamerLibrary,
    build_library,
    build_library_from_scratch,
    default_library,
    load_library,
    save_library,
    signature,
)
from .naming import FullName, name_sequence, names_equal, parse_name
from .fasta import FastaRecord, parse_fasta, read_fasta
from .reports import (
    batch_name,
    birthday_expected_distinct,
    collision_report,
    evaluate_families,
)
from .nucleotides import all_hexamers, normalize_sequence

__all__ = [
    "BitString",
    "Word6",
    "bitwise_and",
    "bitwise_not",
    "bitwise_or",
    "bitwise_xor",
    "logical_f",
    "logical_g",
    "logical_h",
    "logical_i",
    "mod_add",
    "rotate_left",
    "DEFAULT_ENCODER",
    "NAMESPACE_SIZE",
    "DigestState",
    "NameCode",
    "SequenceEncoder",
    "compress_block",
    "digest",
    "encode_sequence",
    "name_field",
    "pad_message",
    "state_to_name",
    "DEFAULT_SCORING",
    "AlignmentScoring",
    "build_similarity_matrix",
    "distance_matrix",
    "local_align_identity",
    "Dendrogram",
    "Merge",
    "average_linkage_cluster",
    "leaf_order_cost",
    "optimal_leaf_order",
    "FamilialSignature",
    "HexamerLibrary",
    "build_library",
    "build_library_from_scratch",
    "default_library",
    "load_library",
    "save_library",
    "signature",
    "FullName",
    "name_sequence",
    "names_equal",
    "parse_name",
    "FastaRecord",
    "parse_fasta",
    "read_fasta",
    "batch_name",
    "birthday_expected_distinct",
    "collision_report",
    "evaluate_families",
    "all_hexamers",
    "normalize_sequence",
]
