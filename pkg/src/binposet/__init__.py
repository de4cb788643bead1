"""Finite truncations of binomial posets.

Exact maximal-chain counting and the equal-count verification, canonical
certificates and isomorphism, section-word classification of the
type-(1,1,2,2,...) family, constructions for the recognized realizable
families, atom-sequence admissibility, and exhaustive extension search.
"""

from .classify import (
    AvoidanceReport,
    IntervalClass,
    IntervalClassification,
    SectionGraph,
    check_partition_avoidance,
    co_cover_partitions,
    count_valid_words,
    cover_partitions,
    enumerate_interval_classes,
    phi,
    section_graph,
    section_type,
    valid_words,
    validate_string,
    versal_string,
)
from .construct import (
    debruijn_poset,
    divisible_poset,
    m_interval,
    poset_from_string,
    stripped_boolean_interval,
)
from .core import (
    AtomicNumbersReport,
    AtomicSequence,
    BinomialReport,
    FactorialProfile,
    GradedPoset,
    Interval,
    PosetError,
    atomic_numbers,
    build_poset,
    count_maximal_chains,
    dual,
    grid_ids,
    interval,
    poset_from_json,
    poset_to_dot,
    poset_to_json,
    predicted_rank_size,
    rank_sizes,
    sup_rank_size,
    verify_binomial,
)
from .iso import (
    DEFAULT_NODE_CAP,
    CanonicalizationCapError,
    are_isomorphic,
    canonical_form,
    isomorphism,
)
from .search import SearchLimits, SearchResult, enumerate_intervals
from .seqcheck import (
    CompatibilityReport,
    FamilyDecision,
    RClassReport,
    check_R_equivalence,
    check_compatibility,
    decide_family,
    extension_search,
    lcm_extension,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicNumbersReport",
    "AtomicSequence",
    "AvoidanceReport",
    "BinomialReport",
    "CanonicalizationCapError",
    "CompatibilityReport",
    "DEFAULT_NODE_CAP",
    "FactorialProfile",
    "FamilyDecision",
    "GradedPoset",
    "Interval",
    "IntervalClass",
    "IntervalClassification",
    "PosetError",
    "RClassReport",
    "SearchLimits",
    "SearchResult",
    "SectionGraph",
    "are_isomorphic",
    "atomic_numbers",
    "build_poset",
    "canonical_form",
    "check_R_equivalence",
    "check_compatibility",
    "check_partition_avoidance",
    "co_cover_partitions",
    "count_maximal_chains",
    "count_valid_words",
    "cover_partitions",
    "debruijn_poset",
    "decide_family",
    "divisible_poset",
    "dual",
    "enumerate_interval_classes",
    "enumerate_intervals",
    "extension_search",
    "grid_ids",
    "interval",
    "isomorphism",
    "lcm_extension",
    "m_interval",
    "phi",
    "poset_from_json",
    "poset_from_string",
    "poset_to_dot",
    "poset_to_json",
    "predicted_rank_size",
    "rank_sizes",
    "section_graph",
    "section_type",
    "stripped_boolean_interval",
    "sup_rank_size",
    "valid_words",
    "validate_string",
    "verify_binomial",
    "versal_string",
    "__version__",
]
