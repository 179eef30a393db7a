"""Exact Ore-solvable presentations and simultaneous triangularization."""

from .field import QQ, Field, GFElement, UniPoly, root_of_unity_order, univariate_roots
from .linalg import Matrix, Subspace, char_poly, restrict_and_quotient, row_reduce
from .presentation import (
    NCPoly,
    OrePresentation,
    left_datum_from_right,
    nc_mul,
    normal_form,
    overlap_consistency_check,
    parse_presentation,
)
from .module import (
    FDModule,
    check_module,
    evaluate,
    generated_algebra_basis,
    quotient_module,
    regular_module,
    submodule_closure,
)
from .triangularize import (
    Character,
    FailureCertificate,
    TriangularizationResult,
    common_eigenvector,
    loewy_series,
    nilpotency_ladder,
    strict_triangularize,
    triangularize,
    weight_ladder_matrix,
)
from .theorems import (
    character_sigma_action,
    check_genlie,
    check_genlie2,
    check_na1,
    check_t3,
    enumerate_characters,
    ext1_characters,
    orbit_classify,
)
from .extract import extract, extract_ore_datum, pointed_ideal_chain

__all__ = [
    "QQ",
    "Field",
    "GFElement",
    "UniPoly",
    "root_of_unity_order",
    "univariate_roots",
    "Matrix",
    "Subspace",
    "char_poly",
    "restrict_and_quotient",
    "row_reduce",
    "NCPoly",
    "OrePresentation",
    "left_datum_from_right",
    "nc_mul",
    "normal_form",
    "overlap_consistency_check",
    "parse_presentation",
    "FDModule",
    "check_module",
    "evaluate",
    "generated_algebra_basis",
    "quotient_module",
    "regular_module",
    "submodule_closure",
    "Character",
    "FailureCertificate",
    "TriangularizationResult",
    "common_eigenvector",
    "loewy_series",
    "nilpotency_ladder",
    "strict_triangularize",
    "triangularize",
    "weight_ladder_matrix",
    "character_sigma_action",
    "check_genlie",
    "check_genlie2",
    "check_na1",
    "check_t3",
    "enumerate_characters",
    "ext1_characters",
    "orbit_classify",
    "extract",
    "extract_ore_datum",
    "pointed_ideal_chain",
]

__version__ = "0.1.0"
