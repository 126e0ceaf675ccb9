"""Universal linear ODEs, generalized Wronskians and Schubert calculus in exact arithmetic.

Series use the divided-power convention: a series is sum a_n t^n / n! and
only the a_n are stored, so D is an index shift and products are binomial
convolutions.
"""

from .combinat import (
    Partition,
    addable_cells,
    conjugate,
    format_partition,
    hook_lengths,
    parse_partition,
    partition,
    partitions_in_box,
    pieri_successors,
    syt_count_hook,
    syt_enumerate,
)
from .exactmath import (
    PolyMatrix,
    Polynomial,
    SymbolTable,
    TruncationError,
    UsageError,
    as_rational,
    leibniz_det,
    matrix_det,
    poly_mul,
    poly_substitute,
    weighted_degree,
)
from .odecore import (
    AlgebraElement,
    CauchySolution,
    HSequence,
    UniversalContext,
    algebra_mul,
    cauchy_solve,
    fundamental_check,
    h_sequence,
    initial_condition_matrix,
    kernel_check,
    solve_nonhomogeneous,
    specialize_system,
    symbolic_inits,
    universal_exp_check,
    universal_operator,
    universal_solutions,
)
from .schurring import (
    GradedSequence,
    GrassmannRing,
    SchurExpansion,
    cap_action,
    e_from_h,
    grassmann_degree,
    grassmann_product,
    h_from_e,
    jacobi_trudi,
    schur_expand,
    sigma1_power,
)
from .series import (
    DifferentialOperator,
    DividedSeries,
    series_apply_operator,
    series_derive,
    series_map_coeffs,
    series_product,
)
from .wronskian import (
    derivative_expansion,
    expansion_coefficient,
    generalized_wronskian,
    giambelli_certificate,
    pieri_wronskian_check,
    universal_wronskian,
    cohomology_system,
    wr_module_check,
    young_cover_derivative_check,
)

__version__ = "0.1.0"
__all__ = [
    "Partition",
    "addable_cells",
    "conjugate",
    "format_partition",
    "hook_lengths",
    "parse_partition",
    "partition",
    "partitions_in_box",
    "pieri_successors",
    "syt_count_hook",
    "syt_enumerate",
    "PolyMatrix",
    "Polynomial",
    "SymbolTable",
    "TruncationError",
    "UsageError",
    "as_rational",
    "leibniz_det",
    "matrix_det",
    "poly_mul",
    "poly_substitute",
    "weighted_degree",
    "AlgebraElement",
    "CauchySolution",
    "HSequence",
    "UniversalContext",
    "algebra_mul",
    "cauchy_solve",
    "fundamental_check",
    "h_sequence",
    "initial_condition_matrix",
    "kernel_check",
    "solve_nonhomogeneous",
    "specialize_system",
    "symbolic_inits",
    "universal_exp_check",
    "universal_operator",
    "universal_solutions",
    "GradedSequence",
    "GrassmannRing",
    "SchurExpansion",
    "cap_action",
    "e_from_h",
    "grassmann_degree",
    "grassmann_product",
    "h_from_e",
    "jacobi_trudi",
    "schur_expand",
    "sigma1_power",
    "DifferentialOperator",
    "DividedSeries",
    "series_apply_operator",
    "series_derive",
    "series_map_coeffs",
    "series_product",
    "derivative_expansion",
    "expansion_coefficient",
    "generalized_wronskian",
    "giambelli_certificate",
    "pieri_wronskian_check",
    "universal_wronskian",
    "young_cover_derivative_check",
    "cohomology_system",
    "wr_module_check",
]
