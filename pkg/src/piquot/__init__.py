"""Finite-level certificates for fundamental-group quotients of compactified
arithmetic quotients, plus the exact symplectic/congruence-group arithmetic,
finite matrix-group engine, and toric lattice quotient tools behind them."""

from .matrices import (
    CapExceeded,
    IntMatrix,
    MatrixError,
    ModMatrix,
    NotInvertible,
    NotSymplectic,
    PolarizedForm,
    SNFResult,
    element_order,
    is_unipotent,
    reduce_mod,
    smith_normal_form,
    sp_check,
    sp_inverse,
)
from .groups import (
    BoundarySpec,
    CongruencePattern,
    GeneratorSet,
    boundary_center_generators,
    elementary_symplectic_generators,
    embed_sl2,
    pattern_member,
    sp_group_order,
    transvection,
)
from .engine import (
    ElementTable,
    GroupContext,
    QuotientReport,
    WitnessNotFound,
    center,
    closure,
    find_dihedral8,
    is_normal,
    normal_closure,
    quotient_structure,
    sylow_subgroup,
)
from .toric import Fan, cone_lattice_generators, toric_pi1

__version__ = "0.1.0"

__all__ = [
    "BoundarySpec",
    "CapExceeded",
    "CongruencePattern",
    "ElementTable",
    "Fan",
    "GeneratorSet",
    "GroupContext",
    "IntMatrix",
    "MatrixError",
    "ModMatrix",
    "NotInvertible",
    "NotSymplectic",
    "PolarizedForm",
    "QuotientReport",
    "SNFResult",
    "WitnessNotFound",
    "boundary_center_generators",
    "center",
    "closure",
    "cone_lattice_generators",
    "element_order",
    "elementary_symplectic_generators",
    "embed_sl2",
    "find_dihedral8",
    "is_normal",
    "is_unipotent",
    "normal_closure",
    "pattern_member",
    "quotient_structure",
    "reduce_mod",
    "smith_normal_form",
    "sp_check",
    "sp_group_order",
    "sp_inverse",
    "sylow_subgroup",
    "toric_pi1",
    "transvection",
]
