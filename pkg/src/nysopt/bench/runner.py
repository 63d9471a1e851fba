"""Build benchmark problems from a config, run them, and record timings."""

from __future__ import annotations

import os
from typing import Tuple

import numpy as np

from ..admm import SolveResult, SolverOptions, solve
from ..errors import InputError, NumericalError
from ..problems import (
    GenericProblem,
    elastic_net_problem,
    huber_problem,
    huber_subdiff_stop,
    lasso_problem,
    logistic_problem,
    lower,
)
from . import datagen
from .io import read_libsvm, read_qp_files
from .records import BenchConfig, RunRecord


def _solver_options(config: BenchConfig) -> SolverOptions:
    opts = SolverOptions()
    opts.rng_seed = config.seed
    opts.use_preconditioner = not config.no_preconditioner
    opts.exact_x_solve = config.exact
    if config.tol is not None:
        opts.eps_abs = opts.eps_rel = config.tol
        opts.eps_dual_gap = config.tol
    if config.max_iter is not None:
        opts.max_iter = config.max_iter
    opts.norm_kind = config.norm
    return opts


def build_problem(config: BenchConfig) -> Tuple[GenericProblem, SolverOptions, str]:
    """Materialize the problem named by the config.

    Returns the lowered problem, solver options, and the data source tag
    ("synthetic" or "file").
    """
    opts = _solver_options(config)
    source = "file" if config.data is not None else "synthetic"
    kind = config.problem

    if kind in ("lasso", "elastic_net"):
        if config.data is not None:
            A_op, b = read_libsvm(config.data)
            A = A_op.a
        else:
            A, b = datagen.gen_regression_data(2 * config.n, config.n, config.seed)
        lam1 = 0.1 * float(np.max(np.abs((A.T @ b))))
        if kind == "lasso":
            ml = lasso_problem(A, b, lam1)
        else:
            ml = elastic_net_problem(A, b, lam1, lam1)
        return lower(ml), opts, source

    if kind == "logistic":
        if config.data is not None:
            A_op, labels = read_libsvm(config.data)
            A = A_op.a.multiply(np.sign(labels)[:, None]).tocsr()
            lam1 = 0.05 * float(np.max(np.abs(A.T @ np.ones(A.shape[0]))))
        else:
            A, lam1 = datagen.gen_logistic_data(2 * config.n, config.n, config.seed)
        ml = logistic_problem(A, np.zeros(A.shape[0]), lam1)
        return lower(ml), opts, source

    if kind == "huber":
        if config.data is not None:
            A_op, b = read_libsvm(config.data)
            A = A_op.a
            lam1 = 0.1 * float(np.max(np.abs(A.T @ b)))
        else:
            A, b, lam1 = datagen.gen_huber_data(config.n, config.seed)
        ml = huber_problem(A, b, lam1)
        # Stopping rule for robust fits: subdifferential distance at the
        # sparse iterate, replacing the residual/gap criteria.
        opts.custom_stop = huber_subdiff_stop(config.tol if config.tol is not None else 1e-4)
        opts.use_dual_gap = False
        return lower(ml), opts, source

    if kind == "bounded_ls":
        if config.data is not None:
            raise InputError("bounded_ls supports synthetic data only")
        return lower(datagen.gen_bounded_ls(config.n, config.seed)), opts, source

    if kind == "portfolio":
        if config.data is not None:
            raise InputError("portfolio supports synthetic data only")
        d, F, mu, gamma = datagen.gen_portfolio_data(config.k, config.seed)
        if config.portfolio_path == "qp":
            prob = datagen.portfolio_equivalent_qp(d, F, mu, gamma)
        elif config.portfolio_path == "operators":
            prob = datagen.portfolio_operator_qp(d, F, mu, gamma)
        else:
            prob = datagen.portfolio_generic_problem(d, F, mu, gamma)
        return lower(prob), opts, source

    if kind == "qp_file":
        if config.data is None:
            raise InputError("qp_file requires --data pointing at a directory")
        base = config.data
        paths = {name: os.path.join(base, name) for name in ("P.mtx", "q.txt", "M.mtx", "l.txt", "u.txt")}
        missing = [p for p in paths.values() if not os.path.exists(p)]
        if missing:
            raise InputError(f"missing QP files: {missing}")
        qp = read_qp_files(paths["P.mtx"], paths["q.txt"], paths["M.mtx"], paths["l.txt"], paths["u.txt"])
        return lower(qp), opts, source

    raise InputError(f"unknown problem {kind!r}")


def record_from_result(config: BenchConfig, problem: GenericProblem, result: SolveResult, source: str) -> RunRecord:
    iters = max(result.iterations, 1)
    history = [
        {
            "k": rec.k,
            "rp_norm": rec.rp_norm,
            "rd_norm": rec.rd_norm,
            "objective": rec.objective,
            "rho": rec.rho,
            "cg_iters": rec.cg_iters,
        }
        for rec in result.history
    ]
    return RunRecord(
        problem=config.problem,
        n=problem.n,
        status=result.status.value,
        iters=result.iterations,
        setup_s=result.timings.setup_s,
        precond_s=result.timings.precond_s,
        linsys_total_s=result.timings.linsys_total_s,
        linsys_avg_ms=1000.0 * result.timings.linsys_total_s / iters,
        prox_total_s=result.timings.prox_total_s,
        prox_avg_ms=1000.0 * result.timings.prox_total_s / iters,
        total_s=result.timings.total_s,
        rp=result.rp_norm,
        rd=result.rd_norm,
        objective=result.objective,
        data_source=source,
        seed=config.seed,
        history=history,
    )


def write_record(record: RunRecord, config: BenchConfig) -> None:
    if config.out is None:
        return
    with open(config.out, "w") as fh:
        fh.write(record.to_csv() if config.fmt == "csv" else record.to_json())
    if config.plot:
        from .plots import render_run_plots

        render_run_plots(record, os.path.splitext(config.out)[0])


def run_bench(config: BenchConfig) -> RunRecord:
    """Build the configured problem, solve it, and emit the run record.

    Numerical failures inside the solve are captured as a record with status
    "failed" rather than raised, so the run still produces output.
    """
    problem, opts, source = build_problem(config)
    try:
        result = solve(problem, opts)
        record = record_from_result(config, problem, result, source)
    except NumericalError as exc:
        record = RunRecord(
            problem=config.problem,
            n=problem.n,
            status="failed",
            iters=0,
            setup_s=0.0,
            precond_s=0.0,
            linsys_total_s=0.0,
            linsys_avg_ms=0.0,
            prox_total_s=0.0,
            prox_avg_ms=0.0,
            total_s=0.0,
            rp=float("nan"),
            rd=float("nan"),
            objective=float("nan"),
            data_source=source,
            seed=config.seed,
            history=[{"error": str(exc)}],
        )
    write_record(record, config)
    return record
