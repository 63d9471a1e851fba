"""Independent reference implementations used to check the solver.

Everything here is deliberately written from scratch against the underlying
math (proximal gradient with restarts, sorting-based simplex projection,
dense linear algebra) so tests never validate the library against itself.
"""

import numpy as np


def soft(v, kappa):
    return np.sign(v) * np.maximum(np.abs(v) - kappa, 0.0)


def fista_l1(grad, objective, lipschitz, n, lam1, max_iter=100000, gap_fn=None, gap_tol=None):
    """Accelerated proximal gradient for min F(x) + lam1 ||x||_1.

    Uses gradient restarts. Stops on gap_fn(x) <= gap_tol when provided,
    otherwise on a long objective stall, and returns the best iterate seen.
    """
    x = np.zeros(n)
    y = x.copy()
    t = 1.0
    best_obj = np.inf
    best_x = x.copy()
    stall = 0
    for _ in range(max_iter):
        g = grad(y)
        x_new = soft(y - g / lipschitz, lam1 / lipschitz)
        if np.dot(y - x_new, x_new - x) > 0:
            # restart momentum
            t = 1.0
            y = x_new.copy()
        else:
            t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
            y = x_new + ((t - 1.0) / t_new) * (x_new - x)
            t = t_new
        x = x_new
        obj = objective(x)
        if not np.isfinite(best_obj) or obj < best_obj - 1e-15 * max(1.0, abs(best_obj)):
            best_obj = obj
            best_x = x.copy()
            stall = 0
        else:
            stall += 1
        if gap_fn is not None and gap_fn(best_x) <= gap_tol:
            break
        if gap_fn is None and stall > 300:
            break
    return best_x


def square_reg_gap(A, b, lam1, lam2, x):
    """Relative duality gap for the squared loss with l1/l2 regularization,
    computed directly from the conjugate."""
    r = A @ x - b
    primal = 0.5 * r @ r + lam1 * np.abs(x).sum() + 0.5 * lam2 * x @ x
    nu = r.copy()
    if lam2 == 0.0:
        denom = np.max(np.abs(A.T @ nu), initial=0.0)
        if denom > lam1:
            nu *= lam1 / denom
        dual = -0.5 * nu @ nu - b @ nu
    else:
        excess = np.maximum(np.abs(A.T @ nu) - lam1, 0.0)
        dual = -0.5 * nu @ nu - b @ nu - (excess @ excess) / (2.0 * lam2)
    return (primal - dual) / max(min(primal, abs(dual)), 1e-16)


def solve_lasso(A, b, lam1, lam2=0.0, gap_tol=1e-10):
    """High-accuracy l1/l2-regularized least squares by proximal gradient."""
    A = np.asarray(A, dtype=float)
    L = np.linalg.eigvalsh(A.T @ A)[-1] + lam2

    def grad(x):
        return A.T @ (A @ x - b) + lam2 * x

    def obj(x):
        r = A @ x - b
        return 0.5 * r @ r + lam1 * np.abs(x).sum() + 0.5 * lam2 * x @ x

    return fista_l1(
        grad, obj, L, A.shape[1], lam1,
        gap_fn=lambda x: square_reg_gap(A, b, lam1, lam2, x), gap_tol=gap_tol,
    )


def huber_value(w):
    return np.where(np.abs(w) <= 1.0, w * w, 2.0 * np.abs(w) - 1.0)


def huber_grad(w):
    return np.where(np.abs(w) <= 1.0, 2.0 * w, 2.0 * np.sign(w))


def solve_huber_l1(A, b, lam1, iters=60000):
    """High-accuracy l1-regularized robust fit by proximal gradient."""
    A = np.asarray(A, dtype=float)
    L = 2.0 * np.linalg.eigvalsh(A.T @ A)[-1]

    def grad(x):
        return A.T @ huber_grad(A @ x - b)

    def obj(x):
        return huber_value(A @ x - b).sum() + lam1 * np.abs(x).sum()

    return fista_l1(grad, obj, L, A.shape[1], lam1, max_iter=iters)


def simplex_project_sorted(v):
    """Exact simplex projection via the sorting construction."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ks = np.arange(1, v.size + 1)
    k = ks[u - css / ks > 0][-1]
    tau = css[k - 1] / k
    return np.maximum(v - tau, 0.0)


def equality_qp_kkt(P, q, M, v):
    """Solve min (1/2)x'Px + q'x s.t. Mx = v by the dense KKT system.

    Returns (x, y) with y the multiplier of the equality constraint.
    """
    P = np.asarray(P, dtype=float)
    M = np.asarray(M, dtype=float)
    n = P.shape[0]
    m = M.shape[0]
    kkt = np.block([[P, M.T], [M, np.zeros((m, m))]])
    rhs = np.concatenate([-q, v])
    sol = np.linalg.solve(kkt, rhs)
    return sol[:n], sol[n:]


def grad_fd(f, x, eps=1e-6):
    """Central-difference gradient."""
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = eps
        g[i] = (f(x + e) - f(x - e)) / (2 * eps)
    return g


def hvp_fd(grad, x, v, eps=1e-6):
    """Central-difference Hessian-vector product from a gradient oracle."""
    return (grad(x + eps * v) - grad(x - eps * v)) / (2 * eps)


def random_psd(n, rng, rank=None, decay=None):
    """Random symmetric PSD matrix with controllable spectrum."""
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    if decay is not None:
        lam = decay
    elif rank is not None:
        lam = np.concatenate([rng.uniform(0.5, 2.0, size=rank), np.zeros(n - rank)])
    else:
        lam = rng.uniform(0.1, 2.0, size=n)
    return (Q * lam) @ Q.T


def dense_precond_inverse(U, lam, nu):
    """Dense factored-inverse preconditioner built from the eigenpairs."""
    n = U.shape[0]
    if U.shape[1] == 0:
        return np.eye(n)
    inner = np.diag((lam[-1] + nu) / (lam + nu))
    return U @ inner @ U.T + np.eye(n) - U @ U.T
