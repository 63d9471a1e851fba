"""Benchmark harness: synthetic data generators, file ingestion, runners."""

from .datagen import (
    gen_bounded_ls,
    gen_huber_data,
    gen_logistic_data,
    gen_portfolio_data,
    gen_regression_data,
    portfolio_generic_problem,
    portfolio_operator_qp,
    portfolio_equivalent_qp,
)
from .io import read_libsvm, read_qp_files, write_libsvm
from .records import CSV_HEADER, BenchConfig, RunRecord
from .runner import build_problem, run_bench

__all__ = [
    "BenchConfig",
    "RunRecord",
    "CSV_HEADER",
    "build_problem",
    "run_bench",
    "gen_huber_data",
    "gen_portfolio_data",
    "gen_bounded_ls",
    "gen_regression_data",
    "gen_logistic_data",
    "portfolio_equivalent_qp",
    "portfolio_operator_qp",
    "portfolio_generic_problem",
    "read_libsvm",
    "read_qp_files",
    "write_libsvm",
]
