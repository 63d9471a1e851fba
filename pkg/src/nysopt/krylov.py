"""Preconditioned conjugate gradient for the SPD x-subproblem system."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .errors import NotSPDError, NumericalError
from .operators import LinearOperator

TOL_FLOOR = 1e-12

# Recompute the true residual this often to curb recurrence drift.
_RESIDUAL_REFRESH = 50


@dataclass
class CgReport:
    iterations: int
    final_relative_residual: float
    converged: bool


MatVec = Union[LinearOperator, Callable[[np.ndarray], np.ndarray]]


def _as_matvec(A: MatVec) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(A, LinearOperator):
        return A.apply
    return A


def pcg(
    A: MatVec,
    b: np.ndarray,
    x0: Optional[np.ndarray] = None,
    Minv: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    tol_rel: float = 1e-8,
    max_iter: Optional[int] = None,
) -> tuple[np.ndarray, CgReport]:
    """Solve A x = b for symmetric positive definite A.

    Stops when the unpreconditioned true residual satisfies
    ||b - A x|| <= tol_rel * ||b||, or after ``max_iter`` iterations
    (default 10 n). ``Minv`` applies the inverse preconditioner; ``x0`` warm
    starts the iteration. Raises :class:`NumericalError` on non-finite
    values and :class:`NotSPDError` on nonpositive curvature.
    """
    matvec = _as_matvec(A)
    b = np.asarray(b, dtype=float)
    n = b.size
    if max_iter is None:
        max_iter = 10 * n
    x = np.zeros(n) if x0 is None else np.asarray(x0, dtype=float).copy()

    b_norm = float(np.linalg.norm(b))
    denom = b_norm if b_norm > 0 else 1.0

    r = b - matvec(x)
    res_norm = float(np.linalg.norm(r))
    if res_norm <= tol_rel * denom:
        return x, CgReport(0, res_norm / denom, True)

    z = Minv(r) if Minv is not None else r.copy()
    p = z.copy()
    rz = float(r @ z)

    k = 0
    for k in range(1, max_iter + 1):
        Ap = matvec(p)
        pAp = float(p @ Ap)
        if not np.isfinite(pAp):
            raise NumericalError("non-finite value in conjugate gradient")
        if pAp <= 0:
            raise NotSPDError(f"nonpositive curvature p'Ap = {pAp:.3e}; operator is not SPD")
        alpha = rz / pAp
        x += alpha * p
        if k % _RESIDUAL_REFRESH == 0:
            r = b - matvec(x)
        else:
            r -= alpha * Ap
        res_norm = float(np.linalg.norm(r))
        if not np.isfinite(res_norm):
            raise NumericalError("non-finite residual in conjugate gradient")
        if res_norm <= tol_rel * denom:
            return x, CgReport(k, res_norm / denom, True)
        z = Minv(r) if Minv is not None else r.copy()
        rz_new = float(r @ z)
        beta = rz_new / rz
        rz = rz_new
        p = z + beta * p

    return x, CgReport(k, res_norm / denom, False)


def cg_tolerance(k: int, rp_norm: float, rd_norm: float, gamma: float = 1.2) -> float:
    """Relative tolerance min(sqrt(rp * rd), 1) / k^gamma for the k-th solve.

    gamma > 1 makes the schedule summable, which keeps the accumulated
    subproblem errors within the convergence budget. The result is floored
    at 1e-12 (double precision limit).
    """
    if k < 1:
        raise ValueError("iteration index must be >= 1")
    if rp_norm < 0 or rd_norm < 0:
        raise ValueError("residual norms must be nonnegative")
    if gamma <= 1:
        raise ValueError("gamma must exceed 1 for summability")
    tol = min(np.sqrt(rp_norm * rd_norm), 1.0) / k**gamma
    return max(tol, TOL_FLOOR)
