"""Problem interfaces: generic convex programs, QPs, and regularized ERM.

All three interfaces lower to the common splitting form

    minimize f(x) + g(z)  subject to  M x - z = c,

which is what the solver iterates on. The QP and ML lowerings carry a back
reference to the structured problem so the solver can enable the features
that depend on structure (infeasibility detection for QPs, the duality-gap
stopping criterion for ML problems).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DataError
from .operators import (
    ConstantHessian,
    HessianOperator,
    IdentityOperator,
    LinearOperator,
    SparseOperator,
    as_operator,
)
from .prox import Box, box_indicator, box_project, soft_threshold

# ---------------------------------------------------------------------------
# Losses


@dataclass(frozen=True)
class Loss:
    """Scalar convex per-sample loss with derivatives and optional conjugate.

    ``value``, ``deriv``, ``deriv2``, and ``conj`` act elementwise on arrays;
    ``conj`` returns +inf outside the conjugate's domain. ``deriv2_constant``
    marks losses whose curvature does not depend on the input (the Hessian of
    the fitted objective is then fixed across iterates).
    """

    kind: str
    value: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    deriv2: Callable[[np.ndarray], np.ndarray]
    conj: Optional[Callable[[np.ndarray], np.ndarray]] = None
    deriv2_constant: bool = False


def square_loss() -> Loss:
    """l(w) = w^2 / 2 with conjugate y^2 / 2."""
    return Loss(
        kind="square",
        value=lambda w: 0.5 * w**2,
        deriv=lambda w: np.asarray(w, dtype=float).copy(),
        deriv2=lambda w: np.ones_like(np.asarray(w, dtype=float)),
        conj=lambda y: 0.5 * y**2,
        deriv2_constant=True,
    )


def _logistic_conj(y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    inside = (y >= 0.0) & (y <= 1.0)
    # Binary entropy, clamped away from the endpoints before the logs; the
    # endpoints themselves take their limit value 0.
    yc = np.clip(y, 1e-12, 1.0 - 1e-12)
    ent = yc * np.log(yc) + (1.0 - yc) * np.log1p(-yc)
    out = np.where(inside, ent, np.inf)
    return np.where((y == 0.0) | (y == 1.0), 0.0, out)


def logistic_loss() -> Loss:
    """l(w) = log(1 + e^w); the conjugate is the binary entropy on [0, 1]."""
    from scipy.special import expit

    return Loss(
        kind="logistic",
        value=lambda w: np.logaddexp(0.0, w),
        deriv=lambda w: expit(np.asarray(w, dtype=float)),
        deriv2=lambda w: expit(w) * expit(-np.asarray(w, dtype=float)),
        conj=_logistic_conj,
    )


def huber_loss() -> Loss:
    """Robust loss: w^2 inside [-1, 1], 2|w| - 1 outside.

    The conjugate is y^2 / 4 on |y| <= 2 and +inf outside.
    """

    def value(w):
        w = np.asarray(w, dtype=float)
        return np.where(np.abs(w) <= 1.0, w**2, 2.0 * np.abs(w) - 1.0)

    def deriv(w):
        w = np.asarray(w, dtype=float)
        return np.where(np.abs(w) <= 1.0, 2.0 * w, 2.0 * np.sign(w))

    def deriv2(w):
        w = np.asarray(w, dtype=float)
        return np.where(np.abs(w) <= 1.0, 2.0, 0.0)

    def conj(y):
        y = np.asarray(y, dtype=float)
        return np.where(np.abs(y) <= 2.0, 0.25 * y**2, np.inf)

    return Loss(kind="huber", value=value, deriv=deriv, deriv2=deriv2, conj=conj)


def builtin_loss(kind: str) -> Loss:
    factories = {"square": square_loss, "logistic": logistic_loss, "huber": huber_loss}
    if kind not in factories:
        raise DataError(f"unknown loss kind {kind!r}; expected one of {sorted(factories)}")
    return factories[kind]()


# ---------------------------------------------------------------------------
# Problem definitions


@dataclass
class GenericProblem:
    """Oracles and data for minimize f(x) + g(z) s.t. M x - z = c.

    ``prox_g`` takes (v, rho, tol) and returns argmin g(z) + (rho/2)||z-v||^2,
    possibly inexactly to within ``tol`` (built-in proximal operators are
    exact and ignore tol). ``hess`` is the single mutable piece: the solver
    refreshes it at the current iterate before each x-update.
    """

    n: int
    m: int
    f: Callable[[np.ndarray], float]
    grad_f: Callable[[np.ndarray], np.ndarray]
    hess: HessianOperator
    g: Callable[[np.ndarray], float]
    prox_g: Callable[[np.ndarray, float, float], np.ndarray]
    M: LinearOperator
    c: np.ndarray
    is_quadratic: bool = False
    full_rank: bool = False
    prox_inexact: bool = False
    qp: Optional["QPProblem"] = None
    ml: Optional["MLProblem"] = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        if self.M.input_dim != self.n or self.M.output_dim != self.m:
            raise DataError("constraint operator dimensions do not match (n, m)")
        if self.c.shape != (self.m,):
            raise DataError("offset c must have length m")
        if self.hess.input_dim != self.n:
            raise DataError("Hessian dimension must equal n")


@dataclass
class QPProblem:
    """minimize (1/2) x'Px + q'x  subject to  l <= Mx <= u."""

    P: LinearOperator
    q: np.ndarray
    M: LinearOperator
    box: Box

    def __post_init__(self):
        self.P = as_operator(self.P)
        self.M = as_operator(self.M)
        self.q = np.asarray(self.q, dtype=float)
        if self.P.input_dim != self.P.output_dim:
            raise DataError("P must be square")
        if self.q.shape != (self.P.input_dim,):
            raise DataError("q must have length n")
        if self.M.input_dim != self.P.input_dim:
            raise DataError("M must map from dimension n")
        if self.box.dim != self.M.output_dim:
            raise DataError("box dimension must equal the number of constraint rows")

    @property
    def n(self) -> int:
        return self.P.input_dim

    @property
    def m(self) -> int:
        return self.M.output_dim


@dataclass
class MLProblem:
    """minimize sum_i l(a_i'x - b_i) + lambda1 ||x||_1 + (lambda2/2) ||x||_2^2."""

    loss: Loss
    A: LinearOperator
    b: np.ndarray
    lambda1: float = 0.0
    lambda2: float = 0.0

    def __post_init__(self):
        self.A = as_operator(self.A)
        self.b = np.asarray(self.b, dtype=float)
        if self.b.shape != (self.A.output_dim,):
            raise DataError("response vector length must equal the number of samples")
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise DataError("regularization parameters must be nonnegative")
        if self.lambda1 == 0 and self.lambda2 == 0:
            raise DataError("at least one regularization parameter must be positive")

    @property
    def n(self) -> int:
        return self.A.input_dim

    @property
    def N(self) -> int:
        return self.A.output_dim

    def residuals(self, x: np.ndarray) -> np.ndarray:
        return self.A.apply(x) - self.b


# ---------------------------------------------------------------------------
# ML oracles


def ml_smooth_value(p: MLProblem, x: np.ndarray) -> float:
    """Smooth part: sum_i l(a_i'x - b_i) + (lambda2/2) ||x||^2."""
    r = p.residuals(x)
    return float(np.sum(p.loss.value(r)) + 0.5 * p.lambda2 * np.dot(x, x))


def ml_objective(p: MLProblem, x: np.ndarray) -> float:
    """Full objective including the l1 term."""
    return ml_smooth_value(p, x) + p.lambda1 * float(np.abs(x).sum())


def ml_gradient(p: MLProblem, x: np.ndarray) -> np.ndarray:
    """A' l'(Ax - b) + lambda2 x."""
    return p.A.apply_adjoint(p.loss.deriv(p.residuals(x))) + p.lambda2 * np.asarray(
        x, dtype=float
    )


class MLHessian(HessianOperator):
    """Hessian A' diag(l''(Ax - b)) A + lambda2 I kept matrix-free.

    ``update`` re-evaluates the curvature weights at the new iterate; each
    apply costs two passes through the data operator.
    """

    def __init__(self, p: MLProblem, x: Optional[np.ndarray] = None):
        super().__init__(p.n)
        self.p = p
        self.diag_shift = p.lambda2
        self.is_constant = p.loss.deriv2_constant
        self._weights = np.ones(p.N)
        self.update(np.zeros(p.n) if x is None else x)

    def update(self, x: np.ndarray) -> None:
        self._weights = np.asarray(self.p.loss.deriv2(self.p.residuals(x)), dtype=float)

    def _apply(self, v):
        return self.p.A.apply_adjoint(self._weights * self.p.A.apply(v)) + self.diag_shift * v

    def smooth_part(self) -> LinearOperator:
        # The data-dependent part A' diag(w) A, the sketching target.
        from .operators import MatrixFreeOperator

        def matvec(v):
            return self.p.A.apply_adjoint(self._weights * self.p.A.apply(v))

        return MatrixFreeOperator(self.input_dim, self.output_dim, matvec, matvec)


def ml_hessian_operator(p: MLProblem, x: np.ndarray) -> MLHessian:
    return MLHessian(p, x)


def ml_x_system(
    p: MLProblem,
    x: np.ndarray,
    z: np.ndarray,
    u: np.ndarray,
    rho: float,
    hess: Optional[MLHessian] = None,
) -> tuple[Callable[[np.ndarray], np.ndarray], np.ndarray]:
    """Per-iteration SPD system for the ML x-update.

    Returns a matvec for A' diag(l'') A + (lambda2 + rho) I and the
    right-hand side built from the current iterates; identical to the generic
    second-order x-subproblem specialized to M = I, c = 0, and no diagonal
    offset.
    """
    if hess is None:
        hess = MLHessian(p, x)
    x = np.asarray(x, dtype=float)

    def matvec(v):
        return hess.apply(v) + rho * v

    rhs = hess.apply(x) - ml_gradient(p, x) + rho * (np.asarray(z) - np.asarray(u))
    return matvec, rhs


def ml_dual_point(p: MLProblem, x: np.ndarray) -> np.ndarray:
    """Dual feasible point nu_i = l'(a_i'x - b_i).

    With no ridge term the point is scaled into the dual norm ball
    ||A'nu||_inf <= lambda1; the scaling factor is capped at 1 so an already
    feasible point is never inflated.
    """
    nu = np.asarray(p.loss.deriv(p.residuals(x)), dtype=float)
    if p.lambda2 == 0.0:
        denom = float(np.max(np.abs(p.A.apply_adjoint(nu)), initial=0.0))
        if denom > p.lambda1:
            nu = nu * (p.lambda1 / denom)
    return nu


def ml_dual_value(p: MLProblem, nu: np.ndarray) -> float:
    """Dual objective at nu; -inf when the conjugate is infinite at nu."""
    if p.loss.conj is None:
        raise DataError("dual value requires the loss conjugate")
    conj_vals = p.loss.conj(nu)
    if np.any(np.isinf(conj_vals)):
        return -np.inf
    val = -float(np.sum(conj_vals)) - float(p.b @ nu)
    if p.lambda2 > 0.0:
        excess = np.maximum(np.abs(p.A.apply_adjoint(nu)) - p.lambda1, 0.0)
        val -= float(np.sum(excess**2)) / (2.0 * p.lambda2)
    return val


def ml_dual_gap(p: MLProblem, x: np.ndarray) -> float:
    """Relative duality gap (primal - dual) / min(primal, |dual|).

    Weak duality makes this an upper bound on the relative suboptimality of
    x. Returns +inf when the constructed dual point falls outside the
    conjugate's domain (still a valid, if useless, bound).
    """
    nu = ml_dual_point(p, x)
    primal = ml_objective(p, x)
    dual = ml_dual_value(p, nu)
    if not np.isfinite(dual):
        return np.inf
    num = primal - dual
    denom = min(primal, abs(dual))
    if denom <= 1e-16:
        return 0.0 if abs(num) <= 1e-12 else np.inf
    return num / denom


def huber_subdiff_distance(p: MLProblem, x: np.ndarray) -> float:
    """l2 distance from 0 to the subdifferential of the huber-fit objective.

    For w = A' l'(Ax - b) + lambda2 x the squared distance is
    sum over supports of (w_i + lambda1 sign x_i)^2 plus, on the zero
    coordinates, (|w_i| - lambda1)_+^2.
    """
    if p.loss.kind != "huber":
        raise DataError("subdifferential stopping rule is defined for the huber loss")
    x = np.asarray(x, dtype=float)
    w = ml_gradient(p, x)
    active = x != 0.0
    d2 = float(np.sum((w[active] + p.lambda1 * np.sign(x[active])) ** 2))
    d2 += float(np.sum(np.maximum(np.abs(w[~active]) - p.lambda1, 0.0) ** 2))
    return float(np.sqrt(d2))


def huber_subdiff_stop(tol: float = 1e-4) -> Callable:
    """Termination rule: stop when the subdifferential distance at the sparse
    iterate drops below tol."""

    def stop(problem: GenericProblem, state) -> bool:
        if problem.ml is None:
            return False
        return huber_subdiff_distance(problem.ml, state.z) <= tol

    return stop


# ---------------------------------------------------------------------------
# Lowering to the common form


def qp_lower(qp: QPProblem) -> GenericProblem:
    """Express a QP in the splitting form.

    f is the quadratic (constant Hessian P), g the box indicator with exact
    projection prox, and c = 0. The quadratic flag records that the
    second-order model of f is exact.
    """
    P, q, box = qp.P, qp.q, qp.box

    def f(x):
        return 0.5 * float(x @ P.apply(x)) + float(q @ x)

    def grad(x):
        return P.apply(x) + q

    def g(z):
        return box_indicator(z, box)

    def prox(v, rho, tol):
        return box_project(v, box)

    return GenericProblem(
        n=qp.n,
        m=qp.m,
        f=f,
        grad_f=grad,
        hess=ConstantHessian(P),
        g=g,
        prox_g=prox,
        M=qp.M,
        c=np.zeros(qp.m),
        is_quadratic=True,
        full_rank=isinstance(qp.M, IdentityOperator),
        qp=qp,
    )


def ml_lower(p: MLProblem) -> GenericProblem:
    """Express an ML problem in the splitting form with M = I, c = 0.

    The identity constraint makes the x-subproblem system positive definite
    on its own, so no diagonal offset is needed.
    """

    def g(z):
        return p.lambda1 * float(np.abs(z).sum())

    def prox(v, rho, tol):
        return soft_threshold(v, p.lambda1 / rho)

    return GenericProblem(
        n=p.n,
        m=p.n,
        f=lambda x: ml_smooth_value(p, x),
        grad_f=lambda x: ml_gradient(p, x),
        hess=MLHessian(p),
        g=g,
        prox_g=prox,
        M=IdentityOperator(p.n),
        c=np.zeros(p.n),
        is_quadratic=p.loss.deriv2_constant,
        full_rank=True,
        ml=p,
    )


def lower(problem) -> GenericProblem:
    """Coerce any of the three interfaces to the common form."""
    if isinstance(problem, GenericProblem):
        return problem
    if isinstance(problem, QPProblem):
        return qp_lower(problem)
    if isinstance(problem, MLProblem):
        return ml_lower(problem)
    raise DataError(f"cannot solve object of type {type(problem).__name__}")


# ---------------------------------------------------------------------------
# Convenience constructors


def lasso_problem(A, b, lambda1: float) -> MLProblem:
    return MLProblem(square_loss(), A, b, lambda1=lambda1, lambda2=0.0)


def elastic_net_problem(A, b, lambda1: float, lambda2: float) -> MLProblem:
    return MLProblem(square_loss(), A, b, lambda1=lambda1, lambda2=lambda2)


def logistic_problem(A, b, lambda1: float, lambda2: float = 0.0) -> MLProblem:
    return MLProblem(logistic_loss(), A, b, lambda1=lambda1, lambda2=lambda2)


def huber_problem(A, b, lambda1: float) -> MLProblem:
    return MLProblem(huber_loss(), A, b, lambda1=lambda1, lambda2=0.0)


def lasso_as_qp(A: np.ndarray, b: np.ndarray, lambda1: float) -> QPProblem:
    """Block QP reformulation of the lasso with auxiliary magnitudes t.

    Variables (x, t) with |x| <= t enforced by two stacked identity blocks:
    minimize (1/2) x'A'Ax - (A'b)'x + lambda1 1't over x + t >= 0, x - t <= 0.
    The constraint matrix is kept sparse (two nonzeros per row).
    """
    import scipy.sparse as sp

    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    n = A.shape[1]
    P = sp.bmat([[sp.csr_matrix(A.T @ A), None], [None, sp.csr_matrix((n, n))]])
    q = np.concatenate([-A.T @ b, lambda1 * np.ones(n)])
    eye = sp.eye(n)
    M = sp.bmat([[eye, eye], [eye, -eye]])
    l = np.concatenate([np.zeros(n), np.full(n, -np.inf)])
    u = np.concatenate([np.full(n, np.inf), np.zeros(n)])
    return QPProblem(SparseOperator(P.tocsr()), q, SparseOperator(M.tocsr()), Box(l, u))
