"""dualbern — dual bases for polynomial subspaces in Bernstein form.

Exact (rational) construction of selection-based dual bases
D^m = B^m E(s,:)^{-1}, the symmetric configuration converging to the
Lagrange basis with an explicit first-order rate constant, and
derivative-free approximation operators with provable stability and error
bounds.
"""

from .bernstein import (
    BPoly,
    Interval,
    NodeVector,
    UNIT_INTERVAL,
    bernstein_value,
    bform_to_power,
    de_casteljau_eval,
    dual_functional_apply,
    dual_functional_apply_right,
    elevation_matrix,
    generalized_dual_apply,
    pascal_matrix,
    power_to_bform,
    xi_nodes,
)
from .operators import (
    OperatorReport,
    StabilityReport,
    bernstein_like,
    bernstein_like_report,
    collocation_matrix,
    distance_to_subspace,
    modulus_of_continuity,
    quasi_interpolant,
    quasi_interpolant_report,
    stability_report,
    tilde_lambda_apply,
)
from .ratmat import (
    Mat,
    Rational,
    SingularMatrixError,
    binomial,
    inf_norm,
    is_row_affine,
    mat_from_json_obj,
    mat_inv,
    mat_mul,
    mat_sub,
    mat_to_json_obj,
    row_select,
    transpose,
)
from .subspace import (
    DualBasis,
    Embedding,
    IndexOutOfRangeError,
    NotInjectiveError,
    SelectionError,
    SelectionMap,
    WrongLengthError,
    bernstein_embedding,
    data_map_invariance_check,
    dual_basis,
    dual_basis_eval,
    is_complete,
    linear_precision_check,
    make_selection,
    power_embedding,
    verify_duality,
)
from .symmetric import (
    ConvergenceRecord,
    RateConstant,
    SymmetricConfig,
    convergence_csv,
    convergence_table,
    lagrange_collocation,
    rate_bound,
    rate_constant,
    selected_elevation_rows,
    symmetric_dual_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BPoly",
    "ConvergenceRecord",
    "DualBasis",
    "Embedding",
    "IndexOutOfRangeError",
    "Interval",
    "Mat",
    "NodeVector",
    "NotInjectiveError",
    "OperatorReport",
    "RateConstant",
    "Rational",
    "SelectionError",
    "SelectionMap",
    "SingularMatrixError",
    "StabilityReport",
    "SymmetricConfig",
    "UNIT_INTERVAL",
    "WrongLengthError",
    "bernstein_embedding",
    "bernstein_like",
    "bernstein_like_report",
    "bernstein_value",
    "bform_to_power",
    "binomial",
    "collocation_matrix",
    "convergence_csv",
    "convergence_table",
    "data_map_invariance_check",
    "de_casteljau_eval",
    "distance_to_subspace",
    "dual_basis",
    "dual_basis_eval",
    "dual_functional_apply",
    "dual_functional_apply_right",
    "elevation_matrix",
    "generalized_dual_apply",
    "inf_norm",
    "is_complete",
    "is_row_affine",
    "lagrange_collocation",
    "linear_precision_check",
    "make_selection",
    "mat_from_json_obj",
    "mat_inv",
    "mat_mul",
    "mat_sub",
    "mat_to_json_obj",
    "modulus_of_continuity",
    "pascal_matrix",
    "power_embedding",
    "power_to_bform",
    "quasi_interpolant",
    "quasi_interpolant_report",
    "rate_bound",
    "rate_constant",
    "row_select",
    "selected_elevation_rows",
    "stability_report",
    "symmetric_dual_matrix",
    "tilde_lambda_apply",
    "transpose",
    "verify_duality",
    "xi_nodes",
]
