"""Exact tools for Ryser designs: complementation, invariants, equivalence classes and search."""

from .complementation import (
    BlockClass,
    block_class,
    complement_at,
    predict_transformed_size,
    verify_complement_properties,
)
from .core import (
    Block,
    NotADesign,
    ReplicationProfile,
    Ryser,
    SetSystem,
    Symmetric,
    classify,
    fold_symmetric_difference,
    is_ryser_system,
    replication_profile,
    symmetric_difference,
)
from .equivalence import (
    apply_sequence,
    check_hypothesis_h,
    enumerate_class,
    even_block_construction,
    is_type1,
)
from .generators import (
    DifferenceSet,
    complement_design,
    develop,
    fano,
    find_difference_set,
    make_type1,
    paley,
    pg2,
)
from .invariants import (
    BlockProfile,
    ParameterLedger,
    block_profile,
    check_sum_identity,
    compute_ledger,
    evaluate_quadratic,
    two_block_size_analysis,
)
from .io import parse, serialize
from .search import SearchConfig, canonical_form, conjecture_scan, search_ryser

__version__ = "0.1.0"
