"""The inverse monoids POI_{k x m} of block-stable, block-order-preserving partial permutations."""

from .blocks import (
    BlockSpec,
    GeneratorFamily,
    abc_generators,
    bar_embed,
    block_of,
    d_generators,
    decompose,
    generator_set,
    is_member,
    is_p_order_preserving,
    is_p_stable,
    parse_spec,
    psi_embed,
    rebase,
    x_generators,
)
from .congruence import QuotientOverflow, QuotientTable, quotient_enumerate
from .enumeration import (
    MonoidTable,
    enumerate_monoid,
    green_summary,
    j_class_size,
    minimal_generating_size,
    rank_lower_bound_check,
    size_formula,
)
from .pperm import PartialPerm, compose, empty, identity, image_size, inverse, make_pperm
from .presentations import (
    InterpretationMap,
    Presentation,
    Relation,
    build_family,
    build_preset,
    check_relations,
    interpret,
    product_presentation,
    sm_presentation,
)
from .verify import verify_presentation

__version__ = "0.1.0"

__all__ = [
    "BlockSpec",
    "GeneratorFamily",
    "InterpretationMap",
    "MonoidTable",
    "PartialPerm",
    "Presentation",
    "QuotientOverflow",
    "QuotientTable",
    "Relation",
    "abc_generators",
    "bar_embed",
    "block_of",
    "build_family",
    "build_preset",
    "check_relations",
    "compose",
    "d_generators",
    "decompose",
    "empty",
    "enumerate_monoid",
    "generator_set",
    "green_summary",
    "identity",
    "image_size",
    "interpret",
    "inverse",
    "is_member",
    "is_p_order_preserving",
    "is_p_stable",
    "j_class_size",
    "make_pperm",
    "minimal_generating_size",
    "parse_spec",
    "product_presentation",
    "psi_embed",
    "quotient_enumerate",
    "rank_lower_bound_check",
    "rebase",
    "size_formula",
    "sm_presentation",
    "verify_presentation",
    "x_generators",
]
