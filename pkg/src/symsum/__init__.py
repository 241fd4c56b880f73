"""Exact value distributions of elementary symmetric polynomials over finite fields."""

from .asymptotic import (
    ProbabilityProfile,
    asymptotic_pgf,
    asymptotic_pgf_combo,
    convergence_check,
    fine_property_report,
    finite_n_pgf,
    perturbed_pgf,
    perturbed_pgf_expanded,
    smith_probability,
    smith_table,
)
from .balance import (
    BalanceCertificate,
    ConvolutionMatrix,
    NotFound,
    build_matrix,
    choose_perturbation_multiset,
    determinant,
    find_counterexample,
    is_asymptotically_balanced,
    prime_field_equivalence_check,
    rational_nullspace,
    synthesize_function,
)
from .errors import *  # noqa: F401,F403
from .expsum import (
    Perturbation,
    PolyFunction,
    SymmetricSpec,
    brute_sum,
    closed_formula_sum,
    perturbation_decompose,
)
from .field import FieldCtx, LinearMap, identity_map, make_field, make_linear_map, trace_map
from .lambdas import (
    MultiplicityVector,
    ValueHistogram,
    hypercube_histogram,
    lambda_series,
    lambda_value,
    period_D,
)
from .qalgebra import CyclotomicNumber, GroupAlgebraElement

__version__ = "0.1.0"
