"""kappagen: exact Cohen-kappa feasibility bounds for given marginals and
LP-based generation of correlated nominal/ordinal datasets hitting a target
pairwise kappa matrix."""

from .bounds import (binary_kappa_bounds, binary_rho_bounds, cohen_upper_bound,
                     exact_bounds, exact_lower_bound, feasible_p0_range,
                     p0_zero_bounds, p0_zero_lower_bound, sorting_based_bounds)
from .constraints import build_constraint_matrix, build_mat, build_rhs, pair_order
from .errors import (InfeasibleTargetError, IterationLimitError, JointInfeasibleError,
                     KappagenError, MethodFailureError, SizeCapError,
                     UndefinedKappaError, ValidationError)
from .estimator import KappaSampler
from .generation import (GenerationResult, empirical_kappa_matrix, generate_bivariate,
                         generate_marginal_sample, generate_multivariate, required_p0,
                         sorting_generate_bivariate)
from .metrics import (binary_kappa_from_rho, binary_rho_from_kappa, binary_scale_factor,
                      expected_agreement, kappa_from_ratings, kappa_from_table)
from .simplex import is_feasible, solve_phase1
from .types import (AgreementSummary, BinaryScale, BisectionTrace, CellIndexMatrix,
                    GenerationSpec, KappaBounds, KappaMatrix, LPSolution, MarginalPMF,
                    MultiwayTable, RatingsDataset, SquareTable, StandardFormLP)
from .validation import validate_kappa_matrix, validate_marginals

__version__ = "0.1.0"

__all__ = [
    "AgreementSummary", "BinaryScale", "BisectionTrace", "CellIndexMatrix",
    "GenerationResult", "GenerationSpec", "KappaBounds", "KappaMatrix",
    "KappaSampler", "KappagenError", "LPSolution", "MarginalPMF", "MultiwayTable",
    "RatingsDataset", "SquareTable", "StandardFormLP",
    "InfeasibleTargetError", "IterationLimitError", "JointInfeasibleError",
    "MethodFailureError", "SizeCapError", "UndefinedKappaError", "ValidationError",
    "binary_kappa_bounds", "binary_kappa_from_rho", "binary_rho_bounds",
    "binary_rho_from_kappa", "binary_scale_factor", "build_constraint_matrix",
    "build_mat", "build_rhs", "cohen_upper_bound", "empirical_kappa_matrix",
    "exact_bounds", "exact_lower_bound", "expected_agreement", "feasible_p0_range",
    "generate_bivariate", "generate_marginal_sample", "generate_multivariate",
    "is_feasible", "kappa_from_ratings", "kappa_from_table", "p0_zero_bounds",
    "p0_zero_lower_bound", "pair_order", "required_p0", "solve_phase1",
    "sorting_based_bounds", "sorting_generate_bivariate", "validate_kappa_matrix",
    "validate_marginals",
]
