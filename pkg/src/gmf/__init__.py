"""Exact computer algebra for graded matrix factorizations of a homogeneous
potential, the cokernel bridge into stable module theory over the hypersurface
quotient, and exceptional-collection verification."""

__version__ = "0.1.0"

from .equivalence import (
    check_acyclic_tensor,
    check_full_faithfulness,
    check_round_trip,
    cok,
    stabilize,
)
from .exceptional import (
    check_collection,
    check_exceptional,
    dual_collection,
    q_algebra,
    trichotomy_report,
)
from .fields import GF, QQ, Field, FieldError
from .freemod import FreeModule, GradedMatrix, GradingError, matrix_compose, validate_matrix
from .mf import MatrixFactorization, MFMorphism, mf_cone, mf_hom, mf_hom_table, mf_is_isomorphic, mf_validate
from .modules import (
    ModulePresentation,
    dsing_hom,
    ext_against_A,
    gorenstein_parameter,
    hilbert_function,
    module_hom,
    residue_field_presentation,
    stable_hom,
    syzygy_module,
    truncate_tail,
)
from .rings import GradedRing, ParseError, Polynomial, parse_polynomial

__all__ = [
    "GF",
    "QQ",
    "Field",
    "FieldError",
    "FreeModule",
    "GradedMatrix",
    "GradedRing",
    "GradingError",
    "MatrixFactorization",
    "MFMorphism",
    "ModulePresentation",
    "ParseError",
    "Polynomial",
    "check_acyclic_tensor",
    "check_collection",
    "check_exceptional",
    "check_full_faithfulness",
    "check_round_trip",
    "cok",
    "dsing_hom",
    "dual_collection",
    "ext_against_A",
    "gorenstein_parameter",
    "hilbert_function",
    "matrix_compose",
    "mf_cone",
    "mf_hom",
    "mf_hom_table",
    "mf_is_isomorphic",
    "mf_validate",
    "module_hom",
    "parse_polynomial",
    "q_algebra",
    "residue_field_presentation",
    "stabilize",
    "stable_hom",
    "syzygy_module",
    "trichotomy_report",
    "truncate_tail",
    "validate_matrix",
    "__version__",
]
