"""Exact intertwiners between Grassmann graph levels over finite fields."""

from .errors import BudgetExceeded, DimensionError, InconsistencyError, QGrassError
from .exact import Mat, QuadExt, Rat
from .geometry import GrassmannSpace, Subspace, distance, grassmann_space, transvection_set
from .intertwiners import (
    IntertwinerOp,
    adjoint_constant,
    canonical_operator,
    fixed_s_check,
    kernel_from_operator,
    lambda_oracle,
    operator_from_kernel,
    projection_P,
    radon_complement,
    radon_subset,
)
from .kernels import IntertwinerKernel, mu_eigenvalue, qhahn_kernel, rodrigues_eval
from .laplacians import bc_coefficients, graph_laplacian, group_laplacian
from .qcomb import QContext, dim_irrep, q_binomial, q_multinomial
from .suites import SUITES, Check, run_suite

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Check",
    "DimensionError",
    "GrassmannSpace",
    "InconsistencyError",
    "IntertwinerKernel",
    "IntertwinerOp",
    "Mat",
    "QContext",
    "QGrassError",
    "QuadExt",
    "Rat",
    "SUITES",
    "Subspace",
    "adjoint_constant",
    "bc_coefficients",
    "canonical_operator",
    "dim_irrep",
    "distance",
    "fixed_s_check",
    "grassmann_space",
    "graph_laplacian",
    "group_laplacian",
    "kernel_from_operator",
    "lambda_oracle",
    "mu_eigenvalue",
    "operator_from_kernel",
    "projection_P",
    "q_binomial",
    "q_multinomial",
    "qhahn_kernel",
    "radon_complement",
    "radon_subset",
    "rodrigues_eval",
    "run_suite",
    "transvection_set",
]
