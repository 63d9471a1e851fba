"""Randomized Nystrom approximation and the derived preconditioner.

Given a symmetric PSD operator A, a Gaussian test matrix Omega with r
columns yields the rank-r approximation

    A_hat = (A Omega) (Omega^T A Omega)^+ (A Omega)^T = U diag(lam) U^T,

which satisfies 0 <= A_hat <= A in the PSD order. For shifted systems
(A + nu I) x = b the preconditioner inverse is kept in factored form,

    L^{-1} = (lam_r + nu) U (diag(lam) + nu I)^{-1} U^T + I - U U^T,

inverting the dominant eigenspace while acting as the identity on the
complement. Applying it costs O(nr) and changing nu is O(1).
"""

from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from .errors import DataError
from .operators import LinearOperator, MatrixFreeOperator


def default_sketch_rank(n: int) -> int:
    """Constant default rank: min(50, ceil(n / 20)), at least 1."""
    return max(1, min(50, math.ceil(n / 20)))


class NystromSketch:
    """Rank-r eigenpair factorization U diag(lambda_hat) U^T of A_hat.

    U is n-by-r with orthonormal columns and lambda_hat is nonincreasing
    and nonnegative. A rank-0 sketch (empty U) represents A_hat = 0.
    """

    def __init__(self, U: np.ndarray, lambda_hat: np.ndarray):
        U = np.asarray(U, dtype=float)
        lambda_hat = np.asarray(lambda_hat, dtype=float)
        self.U = U
        self.lambda_hat = lambda_hat

    @property
    def n(self) -> int:
        return self.U.shape[0]

    @property
    def rank(self) -> int:
        return self.U.shape[1]

    @classmethod
    def empty(cls, n: int) -> "NystromSketch":
        return cls(np.zeros((n, 0)), np.zeros(0))

    def approx_apply(self, v: np.ndarray) -> np.ndarray:
        """A_hat v = U (lambda_hat * (U^T v))."""
        if self.rank == 0:
            return np.zeros_like(np.asarray(v, dtype=float))
        return self.U @ (self.lambda_hat * (self.U.T @ v))

    def to_dense(self) -> np.ndarray:
        return (self.U * self.lambda_hat) @ self.U.T


def _operator_columns(A: LinearOperator, V: np.ndarray) -> np.ndarray:
    """Apply A to each column of V."""
    return np.column_stack([A.apply(V[:, j]) for j in range(V.shape[1])])


def nystrom_sketch(
    A: LinearOperator, r: int, rng_seed: int, oversample: Optional[int] = None
) -> NystromSketch:
    """Randomized Nystrom approximation of a symmetric PSD operator.

    Deterministic for a fixed seed. The test matrix carries a few extra
    columns beyond the requested rank and the eigendecomposition is truncated
    back to r, which sharply reduces the variance of the approximation error
    at the cost of a handful of extra operator applications. The core matrix
    is shifted by a small multiple of a trace estimate before the Cholesky
    factorization and the shift is subtracted from the recovered eigenvalues
    (clamped at zero), the standard stabilization for nearly rank-deficient
    inputs. A clearly indefinite core raises :class:`DataError`.
    """
    n = A.input_dim
    if A.output_dim != n:
        raise DataError("nystrom_sketch requires a square operator")
    if not 1 <= r <= n:
        raise DataError(f"sketch rank must satisfy 1 <= r <= {n}, got {r}")
    if oversample is None:
        oversample = 8 + r // 4
    s = min(n, r + max(oversample, 0))

    rng = np.random.default_rng(rng_seed)
    Omega = rng.standard_normal((n, s))
    Omega, _ = np.linalg.qr(Omega, mode="reduced")
    Y = _operator_columns(A, Omega)

    # Stabilization shift: machine epsilon times a trace estimate of A.
    trace_est = (n / s) * float(np.sum(Omega * Y))
    shift = np.finfo(float).eps * max(trace_est, 0.0)
    if shift == 0.0:
        shift = np.finfo(float).eps
    Y_shifted = Y + shift * Omega
    core = Omega.T @ Y_shifted
    core = 0.5 * (core + core.T)

    try:
        L = np.linalg.cholesky(core)
        B = scipy.linalg.solve_triangular(L, Y_shifted.T, lower=True).T
    except np.linalg.LinAlgError:
        w, V = np.linalg.eigh(core)
        scale = max(abs(w[-1]), shift)
        if w[0] < -1e-8 * scale:
            raise DataError(
                "operator is not positive semidefinite (negative pivot in sketch core)"
            ) from None
        keep = w > np.finfo(float).eps * scale
        if not keep.any():
            return NystromSketch.empty(n)
        B = Y_shifted @ (V[:, keep] / np.sqrt(w[keep]))

    U, sv, _ = np.linalg.svd(B, full_matrices=False)
    lam = np.maximum(sv**2 - shift, 0.0)
    return NystromSketch(U[:, :r], lam[:r])


class NystromPreconditioner:
    """Factored inverse preconditioner for A + nu I built from a sketch.

    Only the shift nu is mutable; the sketch itself is shared and immutable.
    """

    def __init__(self, sketch: NystromSketch, nu: float):
        if nu <= 0:
            raise DataError("preconditioner shift must be positive")
        self.sketch = sketch
        self.nu = float(nu)

    def apply(self, v: np.ndarray) -> np.ndarray:
        """L^{-1} v via the factored form; cost O(nr)."""
        v = np.asarray(v, dtype=float)
        S = self.sketch
        if S.rank == 0:
            return v.copy()
        Utv = S.U.T @ v
        head = (S.lambda_hat[-1] + self.nu) * (Utv / (S.lambda_hat + self.nu))
        return S.U @ (head - Utv) + v

    def update_shift(self, nu_new: float) -> None:
        if nu_new <= 0:
            raise DataError("preconditioner shift must be positive")
        self.nu = float(nu_new)

    def to_dense(self) -> np.ndarray:
        """Materialized L^{-1}; for verification on small instances."""
        S = self.sketch
        n = S.n
        if S.rank == 0:
            return np.eye(n)
        inner = np.diag((S.lambda_hat[-1] + self.nu) / (S.lambda_hat + self.nu))
        return S.U @ inner @ S.U.T + np.eye(n) - S.U @ S.U.T


def precond_apply(P: NystromPreconditioner, v: np.ndarray) -> np.ndarray:
    return P.apply(v)


def update_shift(P: NystromPreconditioner, nu_new: float) -> None:
    P.update_shift(nu_new)


def estimate_error_norm(
    A: LinearOperator, S: NystromSketch, iters: int, rng_seed: int
) -> float:
    """Power-method estimate of ||A - A_hat||_2 (a lower bound up to convergence)."""
    if iters < 1:
        raise DataError("estimate_error_norm requires iters >= 1")
    n = A.input_dim
    rng = np.random.default_rng(rng_seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(iters):
        w = A.apply(v) - S.approx_apply(v)
        est = float(np.linalg.norm(w))
        if est <= 0.0 or not np.isfinite(est):
            return max(est, 0.0)
        v = w / est
    return est


def condition_bound(sketch: NystromSketch, err_norm: float, nu: float) -> float:
    """Upper bound 1 + (lam_r + ||E||) / nu on the preconditioned condition number."""
    tail = sketch.lambda_hat[-1] if sketch.rank > 0 else 0.0
    return 1.0 + (tail + err_norm) / nu


def adaptive_sketch(
    A: LinearOperator,
    r0: int,
    r_max: int,
    nu: float,
    kappa_target: float,
    rng_seed: int,
    power_iters: int = 10,
) -> NystromSketch:
    """Grow the sketch rank (doubling schedule) until the condition-number
    bound drops below ``kappa_target``, or ``r_max`` is reached.

    Returns the sketch for the smallest tried rank whose bound passes; if
    none passes, the rank-``r_max`` sketch is returned.
    """
    n = A.input_dim
    if not 1 <= r0 <= r_max <= n:
        raise DataError("adaptive_sketch requires 1 <= r0 <= r_max <= n")
    ranks = []
    r = r0
    while r < r_max:
        ranks.append(r)
        r *= 2
    ranks.append(r_max)

    seeds = np.random.SeedSequence(rng_seed).generate_state(2 * len(ranks))
    sketch = None
    for i, rank in enumerate(ranks):
        sketch = nystrom_sketch(A, rank, int(seeds[2 * i]))
        err = estimate_error_norm(A, sketch, power_iters, int(seeds[2 * i + 1]))
        if condition_bound(sketch, err, nu) <= kappa_target:
            return sketch
    return sketch


def estimate_extreme_eigs(
    A: LinearOperator, iters: int, rng_seed: int
) -> Tuple[float, float]:
    """Extreme eigenvalue estimates of a symmetric operator via Lanczos.

    Runs a randomly started Lanczos tridiagonalization with full
    reorthogonalization and returns the extreme Ritz values
    (lambda_max_est, lambda_min_est); the max estimate approaches the true
    maximum from below. On breakdown the current estimates are returned.
    """
    if iters < 2:
        raise DataError("estimate_extreme_eigs requires iters >= 2")
    n = A.input_dim
    iters = min(iters, n)
    rng = np.random.default_rng(rng_seed)
    q = rng.standard_normal(n)
    q /= np.linalg.norm(q)

    Q = np.zeros((n, iters))
    alphas: list[float] = []
    betas: list[float] = []
    Q[:, 0] = q
    scale = 0.0
    for j in range(iters):
        w = A.apply(Q[:, j])
        alpha = float(Q[:, j] @ w)
        alphas.append(alpha)
        scale = max(scale, abs(alpha))
        w -= alpha * Q[:, j]
        if j > 0:
            w -= betas[-1] * Q[:, j - 1]
        # Full reorthogonalization, twice for stability.
        for _ in range(2):
            w -= Q[:, : j + 1] @ (Q[:, : j + 1].T @ w)
        beta = float(np.linalg.norm(w))
        if j == iters - 1 or beta <= 1e-12 * max(scale, 1.0):
            break
        betas.append(beta)
        Q[:, j + 1] = w / beta

    T = np.diag(alphas)
    if betas:
        k = len(alphas)
        T += np.diag(betas[: k - 1], 1) + np.diag(betas[: k - 1], -1)
    ritz = np.linalg.eigvalsh(T)
    return float(ritz[-1]), float(ritz[0])


def diagonal_reduce(
    A: LinearOperator, d: np.ndarray
) -> Tuple[LinearOperator, np.ndarray]:
    """Reduce (A + diag(d)) w = b to unit-diagonal-shift form.

    Returns the similarity-transformed operator D^{-1/2} A D^{-1/2} and the
    scaling vector d^{-1/2}. Solving the reduced system
    (A_tilde + I) w_tilde = D^{-1/2} b and setting w = d^{-1/2} * w_tilde
    recovers the solution of the original system.
    """
    d = np.asarray(d, dtype=float)
    if d.size != A.input_dim:
        raise DataError("diagonal length must match the operator dimension")
    if np.any(d <= 0):
        raise DataError("diagonal_reduce requires strictly positive d")
    s = 1.0 / np.sqrt(d)

    def matvec(v, _s=s, _A=A):
        return _s * _A.apply(_s * v)

    A_tilde = MatrixFreeOperator(A.input_dim, A.input_dim, matvec, matvec)
    return A_tilde, s
