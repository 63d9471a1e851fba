"""Synthetic problem generators for the benchmark suite.

All generators are deterministic per seed. Fractional counts (outliers,
support sizes) use round-half-even.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

from ..errors import DataError
from ..operators import (
    DenseOperator,
    DiagonalOperator,
    DiagPlusLowRank,
    IdentityOperator,
    OnesRowOperator,
    SparseOperator,
    stack_vertical,
)
from ..operators import ConstantHessian
from ..problems import GenericProblem, QPProblem
from ..prox import Box, simplex_indicator, simplex_project


def gen_regression_data(
    N: int, n: int, seed: int, nonzero_frac: float = 0.1, noise: float = 0.1
) -> Tuple[np.ndarray, np.ndarray]:
    """Dense regression data with a sparse ground truth.

    Columns of A are centered and scaled to unit norm; b = A x_true + noise.
    """
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((N, n))
    A -= A.mean(axis=0)
    A /= np.linalg.norm(A, axis=0)
    x_true = np.zeros(n)
    support = rng.choice(n, size=max(1, round(nonzero_frac * n)), replace=False)
    x_true[support] = rng.standard_normal(support.size)
    b = A @ x_true + noise * rng.standard_normal(N)
    return A, b


def gen_huber_data(n: int, seed: int) -> Tuple[np.ndarray, np.ndarray, float]:
    """Robust-regression data with heavy outliers.

    N = n/2 samples of standard-normal features, columns normalized to zero
    mean and unit l2 norm; the true weights have 10% nonzeros; 5% of the
    responses are shifted by exactly +-10. Returns (A, b, lambda1) with
    lambda1 = 0.1 ||A'b||_inf.
    """
    if n % 2 != 0 or n < 4:
        raise DataError("gen_huber_data requires even n >= 4")
    rng = np.random.default_rng(seed)
    N = n // 2
    A = rng.standard_normal((N, n))
    A -= A.mean(axis=0)
    A /= np.linalg.norm(A, axis=0)

    # n / 10 and N / 20 are exact for the half-integer cases, so round-half-even
    # applies to the true fractional counts.
    x_true = np.zeros(n)
    support = rng.choice(n, size=round(n / 10), replace=False)
    x_true[support] = rng.standard_normal(support.size)

    b = A @ x_true + 0.1 * rng.standard_normal(N)
    n_out = round(N / 20)
    if n_out > 0:
        idx = rng.choice(N, size=n_out, replace=False)
        b[idx] += rng.choice([-10.0, 10.0], size=n_out)

    lambda1 = 0.1 * float(np.max(np.abs(A.T @ b)))
    return A, b, lambda1


def gen_portfolio_data(
    k: int, seed: int
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """Factor-model covariance data for portfolio allocation.

    n = 100 k assets; asset-specific variances uniform on [0, sqrt(k)]; the
    n-by-k factor matrix has each entry standard normal with probability 1/2
    and zero otherwise; expected returns are standard normal. Returns
    (d, F, mu, gamma) with risk aversion gamma = 1.
    """
    if k < 1:
        raise DataError("gen_portfolio_data requires k >= 1")
    rng = np.random.default_rng(seed)
    n = 100 * k
    d = rng.uniform(0.0, np.sqrt(k), size=n)
    F = rng.standard_normal((n, k))
    F[rng.random((n, k)) < 0.5] = 0.0
    mu = rng.standard_normal(n)
    return d, F, mu, 1.0


def gen_bounded_ls(N: int, seed: int) -> QPProblem:
    """Box-constrained least squares with n = N/2 features.

    minimize (1/2)||Ax - b||^2 over [0, 1]^n, passed to the QP interface
    with P = A'A precomputed dense and q = -A'b.
    """
    if N % 2 != 0 or N < 4:
        raise DataError("gen_bounded_ls requires even N >= 4")
    rng = np.random.default_rng(seed)
    n = N // 2
    A = rng.standard_normal((N, n))
    x_ref = rng.uniform(-0.2, 1.2, size=n)
    b = A @ x_ref + 0.1 * rng.standard_normal(N)
    P = A.T @ A
    q = -A.T @ b
    return QPProblem(
        DenseOperator(P), q, IdentityOperator(n), Box(np.zeros(n), np.ones(n))
    )


def gen_logistic_data(N: int, n: int, seed: int) -> Tuple[np.ndarray, float]:
    """Binary-classification data folded into the margin matrix.

    Labels enter through the rows (a_i = label_i * features_i), so the fit
    minimizes sum_i log(1 + exp(a_i'x)) with responses fixed at zero.
    Returns (A, lambda1) with lambda1 = (0.1/2) ||A'1||_inf.
    """
    rng = np.random.default_rng(seed)
    feats = rng.standard_normal((N, n))
    feats -= feats.mean(axis=0)
    feats /= np.linalg.norm(feats, axis=0)
    x_true = np.zeros(n)
    support = rng.choice(n, size=max(1, round(0.1 * n)), replace=False)
    x_true[support] = rng.standard_normal(support.size)
    margin = feats @ x_true
    labels = np.where(rng.random(N) < 1.0 / (1.0 + np.exp(-margin)), 1.0, -1.0)
    A = -labels[:, None] * feats
    lambda1 = 0.05 * float(np.max(np.abs(A.T @ np.ones(N))))
    return A, lambda1


# ---------------------------------------------------------------------------
# Portfolio formulations (three solution paths for the same allocation task)


def portfolio_equivalent_qp(d, F, mu, gamma: float) -> QPProblem:
    """Lifted QP over (x, y) with y = F'x so the covariance is never formed.

    The constraint matrix is sparse: a factor block, a budget row, and an
    identity block for the long-only bounds.
    """
    import scipy.sparse as sp

    d = np.asarray(d, dtype=float)
    F = np.asarray(F, dtype=float)
    mu = np.asarray(mu, dtype=float)
    n, k = F.shape
    P = DiagonalOperator(np.concatenate([gamma * d, gamma * np.ones(k)]))
    q = np.concatenate([-mu, np.zeros(k)])
    M = sp.bmat(
        [
            [sp.csr_matrix(F.T), -sp.eye(k)],
            [sp.csr_matrix(np.ones((1, n))), None],
            [sp.eye(n), None],
        ]
    )
    l = np.concatenate([np.zeros(k), [1.0], np.zeros(n)])
    u = np.concatenate([np.zeros(k), [1.0], np.full(n, np.inf)])
    return QPProblem(P, q, SparseOperator(M.tocsr()), Box(l, u))


def portfolio_operator_qp(d, F, mu, gamma: float) -> QPProblem:
    """Original QP with structured operators: diagonal-plus-low-rank P and a
    stacked budget/positivity constraint map."""
    d = np.asarray(d, dtype=float)
    F = np.asarray(F, dtype=float)
    mu = np.asarray(mu, dtype=float)
    n = d.size
    P = DiagPlusLowRank(gamma * d, np.sqrt(gamma) * F)
    M = stack_vertical([OnesRowOperator(n), IdentityOperator(n)])
    l = np.concatenate([[1.0], np.zeros(n)])
    u = np.concatenate([[1.0], np.full(n, np.inf)])
    return QPProblem(P, -mu, M, Box(l, u))


def portfolio_generic_problem(d, F, mu, gamma: float, prox_tol: float = 1e-8) -> GenericProblem:
    """Splitting formulation with the simplex handled by direct projection."""
    d = np.asarray(d, dtype=float)
    F = np.asarray(F, dtype=float)
    mu = np.asarray(mu, dtype=float)
    n = d.size
    P = DiagPlusLowRank(gamma * d, np.sqrt(gamma) * F)

    def f(x):
        return 0.5 * float(x @ P.apply(x)) - float(mu @ x)

    def grad(x):
        return P.apply(x) - mu

    def prox(v, rho, tol):
        return simplex_project(v, min(tol, prox_tol))

    return GenericProblem(
        n=n,
        m=n,
        f=f,
        grad_f=grad,
        hess=ConstantHessian(P),
        g=lambda z: simplex_indicator(z),
        prox_g=prox,
        M=IdentityOperator(n),
        c=np.zeros(n),
        is_quadratic=True,
        full_rank=True,
        prox_inexact=True,
    )
