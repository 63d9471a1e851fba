"""Inexact ADMM engine.

Each iteration solves a second-order model of the x-subproblem as an SPD
linear system (preconditioned CG, warm started, tolerance tightening with
the iteration index), applies the proximal operator of g with over-relaxed
inputs, updates the scaled dual variable, and tracks residuals, penalty
adaptation, and infeasibility certificates for box-constrained QPs.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import DataError
from .krylov import CgReport, cg_tolerance, pcg
from .operators import IdentityOperator, MatrixFreeOperator
from .problems import GenericProblem, ml_dual_gap, lower
from .prox import box_recession_distance, box_support
from .sketch import NystromPreconditioner, default_sketch_rank, estimate_extreme_eigs, nystrom_sketch

# Penalty adaptation must stop eventually for the convergence guarantees to
# hold; no updates are applied past this iteration.
PENALTY_ADAPT_CUTOFF = 1000

# Width of the moving window that smooths the iterate-difference sequences
# monitored for infeasibility.
DELTA_WINDOW = 25


class Status(str, Enum):
    OPTIMAL = "optimal"
    PRIMAL_INFEASIBLE = "primal_infeasible"
    DUAL_INFEASIBLE = "dual_infeasible"
    PRIMAL_AND_DUAL_INFEASIBLE = "primal_and_dual_infeasible"
    ITERATION_LIMIT = "iteration_limit"
    TIME_LIMIT = "time_limit"


@dataclass
class SolverOptions:
    """Tunable parameters; defaults follow the solver's standard settings."""

    sigma: float = 1e-6
    gamma: float = 1.2
    sketch_rank: Optional[int] = None
    resketch_every: int = 20
    norm_kind: str = "l2"
    eps_abs: float = 1e-4
    eps_rel: float = 1e-4
    eps_inf: float = 1e-8
    alpha: float = 1.6
    tau: float = 2.0
    mu: float = 10.0
    rho0: float = 1.0
    penalty_update_every: int = 25
    # No penalty adaptation before this iteration: the first iterations carry
    # a transient in which the dual residual decays on its own, and reacting
    # to it drives the penalty to a floor it cannot climb back from before
    # updates cease.
    penalty_warmup: int = 100
    max_iter: int = 10000
    time_limit: Optional[float] = None
    use_preconditioner: bool = True
    exact_x_solve: bool = False
    use_dual_gap: Optional[bool] = None
    eps_dual_gap: float = 1e-4
    rng_seed: int = 0
    # Offset policy: assert full rank, or probe the minimum eigenvalue of the
    # x-system at setup and drop the offset when it certifies definiteness.
    assume_full_rank: bool = False
    check_rank: bool = False
    # Replaces the built-in termination criteria when provided; called as
    # custom_stop(problem, state) -> bool after every iteration.
    custom_stop: Optional[Callable[[GenericProblem, "SolverState"], bool]] = None
    # Instrumentation for analysis and verification.
    record_iterates: bool = False
    track_averaged_objective: bool = False
    prox_tol0: float = 1e-8

    def __post_init__(self):
        if self.sigma < 0:
            raise DataError("sigma must be nonnegative")
        if self.gamma <= 1:
            raise DataError("gamma must exceed 1")
        if not 0 < self.alpha < 2:
            raise DataError("over-relaxation alpha must lie in (0, 2)")
        if self.tau <= 1 or self.mu <= 1:
            raise DataError("penalty factors tau and mu must exceed 1")
        if self.rho0 <= 0:
            raise DataError("initial penalty must be positive")
        if self.norm_kind not in ("l2", "linf"):
            raise DataError("norm_kind must be 'l2' or 'linf'")


@dataclass
class SolverState:
    """Mutable iterate state threaded through one solve."""

    x: np.ndarray
    z: np.ndarray
    u: np.ndarray
    rho: float
    k: int = 0
    x_prev: Optional[np.ndarray] = None
    u_prev: Optional[np.ndarray] = None
    Mx: Optional[np.ndarray] = None
    x_bar_sum: Optional[np.ndarray] = None
    z_bar_sum: Optional[np.ndarray] = None
    bar_count: int = 0

    @property
    def x_bar(self) -> Optional[np.ndarray]:
        if self.bar_count == 0:
            return None
        return self.x_bar_sum / self.bar_count

    @property
    def z_bar(self) -> Optional[np.ndarray]:
        if self.bar_count == 0:
            return None
        return self.z_bar_sum / self.bar_count


@dataclass
class Residuals:
    rp: np.ndarray
    rd: np.ndarray
    rp_norm: float
    rd_norm: float
    primal_scale: float
    dual_scale: float


@dataclass
class IterationRecord:
    k: int
    rp_norm: float
    rd_norm: float
    objective: float
    rho: float
    cg_iters: int
    cg_tol: float
    linsys_s: float
    prox_s: float
    gap: Optional[float] = None
    avg_objective: Optional[float] = None


@dataclass
class PenaltyEvent:
    """One penalty change, with the relative jump of the unscaled dual."""

    k: int
    rho_old: float
    rho_new: float
    dual_jump_rel: float


@dataclass
class Timings:
    setup_s: float = 0.0
    precond_s: float = 0.0
    linsys_total_s: float = 0.0
    prox_total_s: float = 0.0
    total_s: float = 0.0


@dataclass
class SolveResult:
    status: Status
    x: np.ndarray
    z: np.ndarray
    u: np.ndarray
    objective: float
    iterations: int
    rp_norm: float
    rd_norm: float
    history: list[IterationRecord]
    timings: Timings
    x_bar: Optional[np.ndarray] = None
    z_bar: Optional[np.ndarray] = None
    certificate_primal: Optional[np.ndarray] = None
    certificate_dual: Optional[np.ndarray] = None
    penalty_events: list[PenaltyEvent] = field(default_factory=list)
    iterates: Optional[list[tuple[np.ndarray, np.ndarray, np.ndarray]]] = None
    gap: Optional[float] = None

    @property
    def certificate(self) -> Optional[np.ndarray]:
        if self.status in (Status.PRIMAL_INFEASIBLE, Status.PRIMAL_AND_DUAL_INFEASIBLE):
            return self.certificate_primal
        if self.status == Status.DUAL_INFEASIBLE:
            return self.certificate_dual
        return None


def _norm(v: np.ndarray, kind: str) -> float:
    if v.size == 0:
        return 0.0
    if kind == "linf":
        return float(np.max(np.abs(v)))
    return float(np.linalg.norm(v))


# ---------------------------------------------------------------------------
# Single-step operations


def compute_residuals(problem: GenericProblem, state: SolverState, options: SolverOptions) -> Residuals:
    """Primal residual Mx - z - c and dual residual grad f(x) + rho M'u."""
    Mx = state.Mx if state.Mx is not None else problem.M.apply(state.x)
    rp = Mx - state.z - problem.c
    Mtu = problem.M.apply_adjoint(state.u)
    rd = problem.grad_f(state.x) + state.rho * Mtu
    kind = options.norm_kind
    primal_scale = max(_norm(Mx, kind), _norm(state.z, kind), _norm(problem.c, kind))
    dual_scale = _norm(state.rho * Mtu, kind)
    return Residuals(rp, rd, _norm(rp, kind), _norm(rd, kind), primal_scale, dual_scale)


def check_termination(
    res: Residuals,
    state: SolverState,
    options: SolverOptions,
    gap: Optional[float] = None,
) -> bool:
    """Mixed absolute/relative residual test, or the duality-gap test."""
    if gap is not None:
        return gap <= options.eps_dual_gap
    m = state.z.size
    n = state.x.size
    primal_ok = res.rp_norm <= np.sqrt(m) * options.eps_abs + options.eps_rel * res.primal_scale
    dual_ok = res.rd_norm <= np.sqrt(n) * options.eps_abs + options.eps_rel * res.dual_scale
    return bool(primal_ok and dual_ok)


def x_update(
    problem: GenericProblem,
    state: SolverState,
    options: SolverOptions,
    preconditioner: Optional[NystromPreconditioner],
    tol: float,
    sigma_eff: float,
) -> tuple[np.ndarray, CgReport]:
    """Solve the second-order x-subproblem system by warm-started PCG.

    The left operator v -> H v + rho M'(M v) + sigma v is applied on the fly
    and never materialized.
    """
    hess, M, rho = problem.hess, problem.M, state.rho
    identity_M = isinstance(M, IdentityOperator)

    if identity_M:
        shift = rho + sigma_eff

        def matvec(v):
            return hess.apply(v) + shift * v

    else:

        def matvec(v):
            return hess.apply(v) + rho * M.apply_adjoint(M.apply(v)) + sigma_eff * v

    rhs = hess.apply(state.x) + sigma_eff * state.x - problem.grad_f(state.x)
    target = state.z + problem.c - state.u
    rhs = rhs + (rho * target if identity_M else rho * M.apply_adjoint(target))

    Minv = preconditioner.apply if preconditioner is not None else None
    return pcg(matvec, rhs, x0=state.x, Minv=Minv, tol_rel=tol, max_iter=10 * problem.n)


def relaxed_constraint_point(Mx_new: np.ndarray, state: SolverState, problem: GenericProblem, alpha: float) -> np.ndarray:
    """Over-relaxed substitute alpha Mx + (1 - alpha)(z + c) for Mx."""
    return alpha * Mx_new + (1.0 - alpha) * (state.z + problem.c)


def z_update(
    problem: GenericProblem,
    state: SolverState,
    options: SolverOptions,
    w: np.ndarray,
) -> np.ndarray:
    """Proximal step at the over-relaxed point.

    Inexact proximal operators receive a tolerance that tightens as
    tol0 / k^(2 gamma), keeping the accumulated subproblem errors square-root
    summable.
    """
    prox_tol = options.prox_tol0 / max(state.k, 1) ** (2.0 * options.gamma)
    return problem.prox_g(w - problem.c + state.u, state.rho, max(prox_tol, 1e-15))


def u_update(state: SolverState, w: np.ndarray, z_new: np.ndarray, problem: GenericProblem) -> np.ndarray:
    return state.u + w - z_new - problem.c


def _change_penalty(
    state: SolverState,
    rho_new: float,
    preconditioner: Optional[NystromPreconditioner] = None,
    nu_of_rho: Optional[Callable[[float], float]] = None,
) -> PenaltyEvent:
    """Set a new penalty, rescaling the scaled dual so rho * u is unchanged."""
    rho_old = state.rho
    y_old = rho_old * state.u
    state.u *= rho_old / rho_new
    state.rho = rho_new
    y_new = rho_new * state.u
    denom = max(float(np.linalg.norm(y_old)), 1e-30)
    jump = float(np.linalg.norm(y_new - y_old)) / denom
    if preconditioner is not None and nu_of_rho is not None:
        preconditioner.update_shift(nu_of_rho(rho_new))
    return PenaltyEvent(state.k, rho_old, rho_new, jump)


def update_penalty(
    state: SolverState,
    res: Residuals,
    options: SolverOptions,
    preconditioner: Optional[NystromPreconditioner] = None,
    nu_of_rho: Optional[Callable[[float], float]] = None,
) -> Optional[PenaltyEvent]:
    """Rescale the penalty by tau when the residuals are out of balance.

    Each residual enters the comparison normalized by its own termination
    threshold, so the balance targets the two stopping criteria rather than
    raw norms whose scales depend on the problem data. The scaled dual is
    rescaled so the unscaled dual rho * u is unchanged; the preconditioner
    shift follows the new penalty when a shift map is supplied. Returns the
    event, or None when the penalty is unchanged.
    """
    t_p = np.sqrt(res.rp.size) * options.eps_abs + options.eps_rel * res.primal_scale
    t_d = np.sqrt(res.rd.size) * options.eps_abs + options.eps_rel * res.dual_scale
    if t_p > 0 and t_d > 0:
        p_meas, d_meas = res.rp_norm / t_p, res.rd_norm / t_d
    else:
        p_meas, d_meas = res.rp_norm, res.rd_norm
    if p_meas > options.mu * d_meas:
        rho_new = state.rho * options.tau
    elif d_meas > options.mu * p_meas:
        rho_new = state.rho / options.tau
    else:
        return None
    return _change_penalty(state, rho_new, preconditioner, nu_of_rho)


@dataclass
class InfeasibilityCheck:
    status: Optional[Status]
    certificate_primal: Optional[np.ndarray]
    certificate_dual: Optional[np.ndarray]
    near_trigger: bool


def check_infeasibility(
    delta_x: np.ndarray,
    delta_u: np.ndarray,
    problem: GenericProblem,
    options: SolverOptions,
    rho: float,
) -> InfeasibilityCheck:
    """Approximate certificate tests on the iterate-difference directions.

    Primal infeasibility: M'du vanishes relative to du and the box support
    function at du is below the same threshold. Dual infeasibility: P dx and
    the recession-cone distance of M dx vanish relative to dx and q'dx is
    (nearly) negative. Only defined for box-constrained QPs.
    """
    qp = problem.qp
    if qp is None:
        return InfeasibilityCheck(None, None, None, False)
    eps = options.eps_inf

    primal = dual = False
    near_primal = near_dual = False
    cert_p = cert_d = None

    du_norm = float(np.linalg.norm(delta_u))
    if du_norm > 1e-14:
        t_map = float(np.linalg.norm(qp.M.apply_adjoint(delta_u)))
        t_support = box_support(delta_u, qp.box)
        primal = t_map < eps * du_norm and t_support < eps * du_norm
        near_primal = t_map < 10 * eps * du_norm and t_support < 10 * eps * du_norm
        if primal:
            cert_p = rho * delta_u

    dx_norm = float(np.linalg.norm(delta_x))
    if dx_norm > 1e-14:
        s_obj = float(np.linalg.norm(qp.P.apply(delta_x)))
        s_cone = box_recession_distance(qp.M.apply(delta_x), qp.box)
        s_lin = float(qp.q @ delta_x)
        dual = s_obj < eps * dx_norm and s_cone < eps * dx_norm and s_lin < eps * dx_norm
        near_dual = (
            s_obj < 10 * eps * dx_norm
            and s_cone < 10 * eps * dx_norm
            and s_lin < 10 * eps * dx_norm
        )
        if dual:
            cert_d = delta_x.copy()

    if primal and dual:
        status = Status.PRIMAL_AND_DUAL_INFEASIBLE
    elif primal:
        status = Status.PRIMAL_INFEASIBLE
    elif dual:
        status = Status.DUAL_INFEASIBLE
    else:
        status = None
    return InfeasibilityCheck(status, cert_p, cert_d, near_primal or near_dual)


# ---------------------------------------------------------------------------
# Main loop


def solve(
    problem,
    options: Optional[SolverOptions] = None,
    x0: Optional[np.ndarray] = None,
    z0: Optional[np.ndarray] = None,
    u0: Optional[np.ndarray] = None,
    callback: Optional[Callable] = None,
) -> SolveResult:
    """Run the splitting method on a Generic, QP, or ML problem.

    The callback, when given, is invoked after every iteration as
    callback(k, rp_norm, rd_norm, objective, rho, cg_iters).
    """
    t_start = time.perf_counter()
    options = options or SolverOptions()
    problem = lower(problem)
    n, m = problem.n, problem.m

    def warm(v, dim, name):
        if v is None:
            return np.zeros(dim)
        v = np.asarray(v, dtype=float)
        if v.shape != (dim,):
            raise DataError(f"warm start {name} must have length {dim}, got shape {v.shape}")
        return v.copy()

    state = SolverState(
        x=warm(x0, n, "x0"),
        z=warm(z0, m, "z0"),
        u=warm(u0, m, "u0"),
        rho=options.rho0,
        x_bar_sum=np.zeros(n),
        z_bar_sum=np.zeros(m),
    )
    hess = problem.hess
    hess.update(state.x)
    state.Mx = problem.M.apply(state.x)

    identity_M = isinstance(problem.M, IdentityOperator)

    # Offset policy: drop the diagonal offset when definiteness is known
    # structurally, asserted by the user, or certified by an eigenvalue probe.
    sigma_eff = options.sigma
    if problem.full_rank or options.assume_full_rank:
        sigma_eff = 0.0
    elif options.check_rank:
        def composite(v):
            return hess.apply(v) + state.rho * problem.M.apply_adjoint(problem.M.apply(v))

        probe = MatrixFreeOperator(n, n, composite, composite)
        _, lam_min = estimate_extreme_eigs(probe, min(max(2, n), 60), options.rng_seed + 7)
        if lam_min > 1e-8:
            sigma_eff = 0.0

    use_gap = options.use_dual_gap
    if use_gap is None:
        use_gap = problem.ml is not None and problem.ml.loss.conj is not None
    if use_gap and problem.ml is None:
        raise DataError("the duality-gap criterion requires an ML problem")

    timings = Timings()
    sketch_rank = options.sketch_rank or default_sketch_rank(n)
    sketch_rank = max(1, min(sketch_rank, n))

    preconditioner: Optional[NystromPreconditioner] = None
    last_sketch_iter = 0
    rho_at_sketch = state.rho

    def nu_identity(rho: float) -> float:
        return rho + sigma_eff + hess.diag_shift

    def build_preconditioner(seed: int) -> NystromPreconditioner:
        t0 = time.perf_counter()
        if identity_M:
            target = hess.smooth_part()
            nu = nu_identity(state.rho)
        else:
            rho_now = state.rho

            def comp(v):
                return hess.apply(v) + rho_now * problem.M.apply_adjoint(problem.M.apply(v))

            target = MatrixFreeOperator(n, n, comp, comp)
            nu = max(sigma_eff, 1e-8)
        pc = NystromPreconditioner(nystrom_sketch(target, sketch_rank, seed), nu)
        timings.precond_s += time.perf_counter() - t0
        return pc

    if options.use_preconditioner:
        preconditioner = build_preconditioner(options.rng_seed)
        rho_at_sketch = state.rho

    res = compute_residuals(problem, state, options)
    timings.setup_s = time.perf_counter() - t_start

    history: list[IterationRecord] = []
    penalty_events: list[PenaltyEvent] = []
    iterates: Optional[list] = [] if options.record_iterates else None
    x_window: deque = deque(maxlen=DELTA_WINDOW + 1)
    u_window: deque = deque(maxlen=DELTA_WINDOW + 1)
    x_window.append(state.x.copy())
    u_window.append(state.u.copy())

    status = Status.ITERATION_LIMIT
    cert_p = cert_d = None
    gap: Optional[float] = None
    rho_frozen = False
    cycle_hits = 0
    best_res = np.inf
    best_res_trend: deque = deque(maxlen=DELTA_WINDOW + 1)

    for k in range(1, options.max_iter + 1):
        state.k = k
        if options.time_limit is not None and time.perf_counter() - t_start > options.time_limit:
            status = Status.TIME_LIMIT
            break

        if not hess.is_constant:
            hess.update(state.x)

        # Rebuild the sketch when the curvature it captured has drifted: on
        # the resketch cadence for iterate-dependent Hessians, and after a
        # penalty change when the penalty is folded into the sketch target.
        if preconditioner is not None:
            stale_hess = not hess.is_constant and k - last_sketch_iter >= options.resketch_every
            stale_rho = not identity_M and state.rho != rho_at_sketch
            if stale_hess or stale_rho:
                preconditioner = build_preconditioner(options.rng_seed + k)
                last_sketch_iter = k
                rho_at_sketch = state.rho

        tol = 1e-12 if options.exact_x_solve else cg_tolerance(
            k, res.rp_norm, res.rd_norm, options.gamma
        )

        t0 = time.perf_counter()
        x_new, cg_report = x_update(problem, state, options, preconditioner, tol, sigma_eff)
        linsys_s = time.perf_counter() - t0
        timings.linsys_total_s += linsys_s

        Mx_new = x_new if identity_M else problem.M.apply(x_new)
        w = relaxed_constraint_point(Mx_new, state, problem, options.alpha)

        state.x_prev, state.u_prev = state.x, state.u.copy()
        state.x = x_new
        state.Mx = Mx_new
        state.k = k

        t0 = time.perf_counter()
        z_new = z_update(problem, state, options, w)
        prox_s = time.perf_counter() - t0
        timings.prox_total_s += prox_s

        state.u = u_update(state, w, z_new, problem)
        state.z = z_new

        # Averaged iterates: mean of the iterates produced from the second
        # iteration onward.
        if k >= 2:
            state.x_bar_sum += state.x
            state.z_bar_sum += state.z
            state.bar_count += 1

        res = compute_residuals(problem, state, options)
        objective = problem.f(state.x) + problem.g(state.z)
        gap = ml_dual_gap(problem.ml, state.z) if use_gap else None

        avg_obj = None
        if options.track_averaged_objective and state.bar_count > 0:
            avg_obj = problem.f(state.x_bar) + problem.g(state.z_bar)

        history.append(
            IterationRecord(
                k=k,
                rp_norm=res.rp_norm,
                rd_norm=res.rd_norm,
                objective=objective,
                rho=state.rho,
                cg_iters=cg_report.iterations,
                cg_tol=tol,
                linsys_s=linsys_s,
                prox_s=prox_s,
                gap=gap,
                avg_objective=avg_obj,
            )
        )
        if iterates is not None:
            iterates.append((state.x.copy(), state.z.copy(), state.u.copy()))
        if callback is not None:
            callback(k, res.rp_norm, res.rd_norm, objective, state.rho, cg_report.iterations)

        if options.custom_stop is not None:
            if options.custom_stop(problem, state):
                status = Status.OPTIMAL
                break
        elif check_termination(res, state, options, gap=gap):
            status = Status.OPTIMAL
            break

        # Infeasibility detection on smoothed iterate differences.
        x_window.append(state.x.copy())
        u_window.append(state.u.copy())
        if problem.qp is not None and len(u_window) == DELTA_WINDOW + 1:
            width = len(u_window) - 1
            delta_x = (x_window[-1] - x_window[0]) / width
            delta_u = (u_window[-1] - u_window[0]) / width
            check = check_infeasibility(delta_x, delta_u, problem, options, state.rho)
            if check.near_trigger:
                rho_frozen = True
            if check.status is not None:
                status = check.status
                cert_p, cert_d = check.certificate_primal, check.certificate_dual
                break

        # A locked short-period cycle of the model-based x-update (the iterate
        # keeps returning near a recent position while still taking large
        # steps, with no residual progress) signals that the quadratic model
        # under-estimates curvature along the step; raising the penalty
        # restores the missing curvature and breaks the cycle. Subject to the
        # same finite-updates cutoff as the balancing rule below. A diverging
        # ray is never flagged: there the p-step displacement grows with p.
        best_res = min(best_res, max(res.rp_norm, res.rd_norm))
        best_res_trend.append(best_res)
        if len(x_window) >= 4 and not rho_frozen and k <= PENALTY_ADAPT_CUTOFF:
            xk = x_window[-1]
            step = float(np.linalg.norm(xk - x_window[-2]))
            locked = False
            if step > 1e-8 * max(1.0, float(np.linalg.norm(xk))):
                periods = range(2, min(len(x_window) - 1, 10) + 1)
                return_gap = min(
                    float(np.linalg.norm(xk - x_window[-1 - p])) for p in periods
                )
                locked = return_gap <= 1e-3 * step
            cycle_hits = cycle_hits + 1 if locked else 0
            stagnant = (
                len(best_res_trend) == best_res_trend.maxlen
                and best_res_trend[-1] >= 0.99 * best_res_trend[0]
            )
            if cycle_hits >= 5 and stagnant:
                cycle_hits = 0
                best_res_trend.clear()
                nu_fn = nu_identity if (preconditioner is not None and identity_M) else None
                penalty_events.append(
                    _change_penalty(
                        state,
                        state.rho * options.tau,
                        preconditioner if identity_M else None,
                        nu_fn,
                    )
                )
                x_window.clear()
                u_window.clear()
                x_window.append(state.x.copy())
                u_window.append(state.u.copy())

        if (
            not rho_frozen
            and options.penalty_update_every > 0
            and k >= options.penalty_warmup
            and k % options.penalty_update_every == 0
            and k <= PENALTY_ADAPT_CUTOFF
        ):
            nu_fn = nu_identity if (preconditioner is not None and identity_M) else None
            event = update_penalty(
                state,
                res,
                options,
                preconditioner if identity_M else None,
                nu_fn,
            )
            if event is not None:
                penalty_events.append(event)
                # Differences of u across the rescale are meaningless.
                x_window.clear()
                u_window.clear()
                x_window.append(state.x.copy())
                u_window.append(state.u.copy())

    timings.total_s = time.perf_counter() - t_start
    return SolveResult(
        status=status,
        x=state.x,
        z=state.z,
        u=state.u,
        objective=problem.f(state.x) + problem.g(state.z),
        iterations=state.k,
        rp_norm=res.rp_norm,
        rd_norm=res.rd_norm,
        history=history,
        timings=timings,
        x_bar=state.x_bar,
        z_bar=state.z_bar,
        certificate_primal=cert_p,
        certificate_dual=cert_d,
        penalty_events=penalty_events,
        iterates=iterates,
        gap=gap,
    )
