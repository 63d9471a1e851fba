"""Convex optimization by inexact ADMM with randomized preconditioning.

The solver handles problems of the form

    minimize f(x) + g(z)  subject to  M x - z = c,

with specialized front ends for box-constrained QPs and l1/l2-regularized
machine-learning objectives. The x-subproblem is replaced by a second-order
model and solved inexactly with Nystrom-preconditioned conjugate gradient.
"""

from .admm import (
    IterationRecord,
    PenaltyEvent,
    SolveResult,
    SolverOptions,
    SolverState,
    Status,
    solve,
)
from .errors import (
    CapabilityError,
    DataError,
    DimensionMismatchError,
    InputError,
    NotSPDError,
    NumericalError,
    NysoptError,
)
from .krylov import CgReport, cg_tolerance, pcg
from .operators import (
    ConstantHessian,
    DenseOperator,
    DiagonalOperator,
    DiagPlusLowRank,
    FunctionHessian,
    HessianOperator,
    IdentityOperator,
    LinearOperator,
    MatrixFreeOperator,
    OnesRowOperator,
    SparseOperator,
    StackedOperator,
    as_operator,
    stack_vertical,
    update_hessian,
)
from .problems import (
    GenericProblem,
    Loss,
    MLProblem,
    QPProblem,
    builtin_loss,
    elastic_net_problem,
    huber_loss,
    huber_problem,
    huber_subdiff_distance,
    huber_subdiff_stop,
    lasso_as_qp,
    lasso_problem,
    logistic_loss,
    logistic_problem,
    lower,
    ml_dual_gap,
    ml_dual_point,
    ml_dual_value,
    ml_gradient,
    ml_hessian_operator,
    ml_objective,
    ml_smooth_value,
    ml_x_system,
    qp_lower,
    square_loss,
)
from .prox import (
    Box,
    box_project,
    box_recession_distance,
    box_support,
    simplex_project,
    soft_threshold,
)
from .sketch import (
    NystromPreconditioner,
    NystromSketch,
    adaptive_sketch,
    condition_bound,
    default_sketch_rank,
    diagonal_reduce,
    estimate_error_norm,
    estimate_extreme_eigs,
    nystrom_sketch,
    precond_apply,
    update_shift,
)

__version__ = "0.1.0"
