"""Exact Frolicher-Nijenhuis calculus on Lie algebroids.

Vector-valued forms on a Lie algebroid with polynomial coefficients,
connections and their curvature, the Frolicher-Nijenhuis bracket computed
through a torsion-free connection, Nijenhuis torsion, deformation of the
algebroid bracket, and randomized verification suites.
"""

from __future__ import annotations

from algebroid_fn._internal.algebroid import (
    ZOO,
    Algebroid,
    Bundle,
    Section,
    ValidationReport,
    VectorBundle,
    abelian,
    aff1,
    aff1_action,
    anchor_apply,
    bracket,
    heisenberg,
    so3,
    tangent,
    validate_algebroid,
)
from algebroid_fn._internal.cli import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    SYNTHESIZED_CONNECTION,
    CommandResult,
    get_parser,
    main,
    run_command,
)
from algebroid_fn._internal.config import SEED_ENV_VAR, SuiteInputOptions, SuiteOptions, default_seed
from algebroid_fn._internal.connections import (
    Connection,
    CurvatureTensor,
    anchor_connection,
    cov_deriv,
    curvature,
    curvature_action,
    d_nabla,
    d_nabla_squared_check,
    nabla_X_form,
    symmetrize,
    torsion,
)
from algebroid_fn._internal.debug import ENV_PREFIX, REPORTED_PACKAGES, print_debug_info
from algebroid_fn._internal.errors import AlgebroidError, PreconditionError, SpecError, StructuralError, UsageError
from algebroid_fn._internal.fncalc import (
    Combination,
    Commutator,
    CovariantDerivative,
    DeformationResult,
    DNabla,
    Epsilon,
    GradedOperator,
    Insertion,
    LieDerivative,
    commutator,
    cov_phi,
    default_connection,
    deform,
    epsilon,
    fn_bracket,
    fn_bracket_default,
    lie_deriv,
    nijenhuis,
    r_extended,
)
from algebroid_fn._internal.oracle import (
    curvature_bruteforce,
    de_rham_koszul,
    fn_extract,
    insert_bruteforce,
    jacobi_bruteforce,
    nijenhuis_classical,
    parity,
    r_extended_bruteforce,
)
from algebroid_fn._internal.sampling import (
    random_bundle,
    random_connection,
    random_form,
    random_poly,
    random_section,
    random_torsion_free,
)
from algebroid_fn._internal.scalars import (
    Monomial,
    Poly,
    Rational,
    Scalar,
    Vector,
    format_rational,
    parse_rational,
    poly_arith,
    vector_add,
    vector_is_zero,
    vector_scale,
    vector_sub,
    zero_vector,
)
from algebroid_fn._internal.specfile import (
    ALGEBROID_TARGET,
    SCALAR_TARGET,
    PolyRecord,
    SpecFile,
    algebroid_to_record,
    connection_to_record,
    dump_json,
    form_to_record,
    parse_indices,
    parse_spec,
    parse_spec_text,
    poly_to_record,
    section_to_record,
    spec_to_record,
    target_to_record,
)
from algebroid_fn._internal.suites import FAIL, PASS, REJECTED, SUITES, Check, VerificationReport, run_suite
from algebroid_fn._internal.vforms import (
    MultiIndex,
    Shuffle,
    VForm,
    enumerate_shuffles,
    eval_form,
    insert,
    merge_sign,
    permutation_sign,
    scalar_line,
    sort_with_sign,
    tensor,
    wedge,
)

__all__: list[str] = [
    "ALGEBROID_TARGET",
    "ENV_PREFIX",
    "EXIT_FAILED",
    "EXIT_OK",
    "EXIT_USAGE",
    "FAIL",
    "PASS",
    "REJECTED",
    "REPORTED_PACKAGES",
    "SCALAR_TARGET",
    "SEED_ENV_VAR",
    "SUITES",
    "SYNTHESIZED_CONNECTION",
    "ZOO",
    "Algebroid",
    "AlgebroidError",
    "Bundle",
    "Check",
    "Combination",
    "CommandResult",
    "Commutator",
    "Connection",
    "CovariantDerivative",
    "CurvatureTensor",
    "DNabla",
    "DeformationResult",
    "Epsilon",
    "GradedOperator",
    "Insertion",
    "LieDerivative",
    "Monomial",
    "MultiIndex",
    "Poly",
    "PolyRecord",
    "PreconditionError",
    "Rational",
    "Scalar",
    "Section",
    "Shuffle",
    "SpecError",
    "SpecFile",
    "StructuralError",
    "SuiteInputOptions",
    "SuiteOptions",
    "UsageError",
    "VForm",
    "ValidationReport",
    "Vector",
    "VectorBundle",
    "VerificationReport",
    "abelian",
    "aff1",
    "aff1_action",
    "algebroid_to_record",
    "anchor_apply",
    "anchor_connection",
    "bracket",
    "commutator",
    "connection_to_record",
    "cov_deriv",
    "cov_phi",
    "curvature",
    "curvature_action",
    "curvature_bruteforce",
    "d_nabla",
    "d_nabla_squared_check",
    "de_rham_koszul",
    "default_connection",
    "default_seed",
    "deform",
    "dump_json",
    "enumerate_shuffles",
    "epsilon",
    "eval_form",
    "fn_bracket",
    "fn_bracket_default",
    "fn_extract",
    "form_to_record",
    "format_rational",
    "get_parser",
    "heisenberg",
    "insert",
    "insert_bruteforce",
    "jacobi_bruteforce",
    "lie_deriv",
    "main",
    "merge_sign",
    "nabla_X_form",
    "nijenhuis",
    "nijenhuis_classical",
    "parity",
    "parse_indices",
    "parse_rational",
    "parse_spec",
    "parse_spec_text",
    "permutation_sign",
    "poly_arith",
    "poly_to_record",
    "print_debug_info",
    "r_extended",
    "r_extended_bruteforce",
    "random_bundle",
    "random_connection",
    "random_form",
    "random_poly",
    "random_section",
    "random_torsion_free",
    "run_command",
    "run_suite",
    "scalar_line",
    "section_to_record",
    "so3",
    "sort_with_sign",
    "spec_to_record",
    "symmetrize",
    "tangent",
    "target_to_record",
    "tensor",
    "torsion",
    "validate_algebroid",
    "vector_add",
    "vector_is_zero",
    "vector_scale",
    "vector_sub",
    "wedge",
    "zero_vector",
]
