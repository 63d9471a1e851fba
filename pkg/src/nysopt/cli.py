"""Command-line benchmark interface.

Exit codes: 0 solved to optimality, 2 infeasibility detected, 3 iteration or
time limit reached, 4 malformed input.
"""

from __future__ import annotations

import sys

import click

from .bench.records import PROBLEMS, BenchConfig
from .errors import InputError

_EXIT_BY_STATUS = {
    "optimal": 0,
    "primal_infeasible": 2,
    "dual_infeasible": 2,
    "primal_and_dual_infeasible": 2,
    "iteration_limit": 3,
    "time_limit": 3,
}


@click.group()
def main():
    """Convex solver benchmarks: synthetic generators, file inputs, timings."""


@main.command()
@click.argument("problem", type=click.Choice(PROBLEMS))
@click.option("--n", type=int, default=None, help="Primary size (features; samples for bounded_ls).")
@click.option("--k", type=int, default=None, help="Factor count for the portfolio problem.")
@click.option("--seed", type=int, default=0, show_default=True, help="Generator seed.")
@click.option("--data", type=click.Path(), default=None,
              help="libsvm file, or a directory of P.mtx,q.txt,M.mtx,l.txt,u.txt for qp_file.")
@click.option("--no-preconditioner", is_flag=True, help="Disable the randomized preconditioner.")
@click.option("--exact", is_flag=True, help="Solve the x-subproblem system to high accuracy.")
@click.option("--tol", type=float, default=None, help="Stopping tolerance override.")
@click.option("--max-iter", type=int, default=None, help="Iteration cap.")
@click.option("--norm", type=click.Choice(["l2", "linf"]), default="l2", show_default=True)
@click.option("--out", type=click.Path(), default=None, help="Output file path.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--portfolio-path", type=click.Choice(["qp", "operators", "generic"]),
              default="operators", show_default=True, help="Formulation used for portfolio runs.")
@click.option("--plot", is_flag=True, help="Also render convergence figures next to --out.")
def bench(problem, n, k, seed, data, no_preconditioner, exact, tol, max_iter, norm, out, fmt,
          portfolio_path, plot):
    """Run one benchmark problem and print its summary row."""
    from .bench.runner import run_bench

    try:
        config = BenchConfig(
            problem=problem,
            n=n,
            k=k,
            seed=seed,
            data=data,
            no_preconditioner=no_preconditioner,
            exact=exact,
            tol=tol,
            max_iter=max_iter,
            norm=norm,
            out=out,
            fmt=fmt,
            portfolio_path=portfolio_path,
            plot=plot,
        )
        if plot and out is None:
            raise InputError("--plot requires --out to name the figure files")
        record = run_bench(config)
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(4)

    click.echo(record.to_csv(), nl=False)
    sys.exit(_EXIT_BY_STATUS.get(record.status, 3))


if __name__ == "__main__":
    main()
