"""Exact intersection theory on tropical cycles.

Cycles are weighted balanced polyhedral complexes with integer weights
and rational coordinates.  The package builds the tropical linear spaces
L^n_k and their diagonal refinements F^n_k, rewrites diagonals as sums of
Cartier divisor products, and uses them to intersect, push forward, and
pull back cycles, all in exact arithmetic.
"""

from .polyhedra import (
    Cell,
    Complex,
    TropicalCycle,
    TropicalGeometryError,
    VerificationError,
    ZeroCycleSummary,
    add_cycles,
    common_refinement,
    cone_from_generators,
    cross,
    cycles_equal,
    degree,
    diagonal_cycle,
    empty_cycle,
    is_balanced,
    make_cell,
    make_cycle,
    scale_cycle,
    star,
    stellar_subdivide,
)
from .functions import (
    CartierExpression,
    PLFunction,
    UnbalancedCycleError,
    add_functions,
    affine_function,
    apply_expression,
    divisor,
    max_poly_function,
    pullback_function,
    ray_function,
    scale_function,
)
from .linspace import (
    DiagonalRepresentation,
    build_fnk,
    build_lnk,
    diagonal_divisors_rn,
    fnk_cycle,
    relations_check,
    rewrite_diagonal,
    rn_cycle,
    star_diagonal,
    symbol_function,
)
from .intersect import (
    AmbientContext,
    Morphism,
    diagonal_morphism,
    graph,
    identity_morphism,
    intersect_cycles,
    linear_space_context,
    product_context,
    projection_morphism,
    pullback_cycle,
    pushforward,
    star_context,
)
from .formats import (
    FormatError,
    parse_document,
    serialize,
)

__all__ = [
    "AmbientContext",
    "CartierExpression",
    "Cell",
    "Complex",
    "DiagonalRepresentation",
    "FormatError",
    "Morphism",
    "PLFunction",
    "TropicalCycle",
    "TropicalGeometryError",
    "UnbalancedCycleError",
    "VerificationError",
    "ZeroCycleSummary",
    "add_cycles",
    "add_functions",
    "affine_function",
    "apply_expression",
    "build_fnk",
    "build_lnk",
    "common_refinement",
    "cone_from_generators",
    "cross",
    "cycles_equal",
    "degree",
    "diagonal_cycle",
    "diagonal_divisors_rn",
    "diagonal_morphism",
    "divisor",
    "empty_cycle",
    "fnk_cycle",
    "graph",
    "identity_morphism",
    "intersect_cycles",
    "is_balanced",
    "linear_space_context",
    "make_cell",
    "make_cycle",
    "max_poly_function",
    "parse_document",
    "product_context",
    "projection_morphism",
    "pullback_cycle",
    "pullback_function",
    "pushforward",
    "ray_function",
    "relations_check",
    "rewrite_diagonal",
    "rn_cycle",
    "scale_cycle",
    "scale_function",
    "serialize",
    "star",
    "star_context",
    "star_diagonal",
    "stellar_subdivide",
    "symbol_function",
]
