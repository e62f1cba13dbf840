"""Finite groups, subgroups, socles and homomorphism enumeration."""

from .catalog import (
    STANDARD_NAMES,
    alternating,
    catalog,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    named,
    quaternion8,
    special_linear_2,
    symmetric,
)
from .finite import (
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    GroupHom,
    Subgroup,
    abelian_invariants,
    abelianization,
    center,
    closure,
    commutator_subgroup,
    element_order,
    format_cycles,
    is_normal,
    is_p_generated,
    is_perfect,
    p_socle,
    parse_cycles,
)
from .homs import DEFAULT_ENUM_BUDGET, count_homs, enumerate_homs, minimal_generating_tuple, surjections

from_permutations = FiniteGroup.from_permutations

__all__ = [
    "DEFAULT_ENUM_BUDGET",
    "DEFAULT_MAX_ORDER",
    "STANDARD_NAMES",
    "FiniteGroup",
    "GroupHom",
    "Subgroup",
    "abelian_invariants",
    "abelianization",
    "alternating",
    "catalog",
    "center",
    "closure",
    "commutator_subgroup",
    "count_homs",
    "cyclic",
    "dihedral",
    "direct_product",
    "element_order",
    "elementary_abelian",
    "enumerate_homs",
    "format_cycles",
    "from_permutations",
    "is_normal",
    "is_p_generated",
    "is_perfect",
    "minimal_generating_tuple",
    "named",
    "p_socle",
    "parse_cycles",
    "quaternion8",
    "special_linear_2",
    "surjections",
    "symmetric",
]
