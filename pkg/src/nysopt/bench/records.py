"""Benchmark configuration and run records with CSV/JSON serialization."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

from ..errors import InputError

PROBLEMS = ("lasso", "elastic_net", "logistic", "huber", "bounded_ls", "portfolio", "qp_file")

CSV_HEADER = (
    "problem,n,status,iters,setup_s,precond_s,linsys_total_s,linsys_avg_ms,"
    "prox_total_s,prox_avg_ms,total_s,rp,rd,objective"
)


@dataclass
class BenchConfig:
    problem: str
    n: Optional[int] = None
    k: Optional[int] = None
    seed: int = 0
    data: Optional[str] = None
    no_preconditioner: bool = False
    exact: bool = False
    tol: Optional[float] = None
    max_iter: Optional[int] = None
    norm: str = "l2"
    out: Optional[str] = None
    fmt: str = "csv"
    portfolio_path: str = "operators"
    plot: bool = False

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise InputError(f"unknown problem {self.problem!r}; expected one of {PROBLEMS}")
        if self.fmt not in ("csv", "json"):
            raise InputError("format must be csv or json")
        if self.data is None and self.n is None and self.problem != "portfolio":
            raise InputError("either a size --n or a data path must be given")
        if self.problem == "portfolio" and self.data is None and self.k is None:
            raise InputError("portfolio requires --k (number of factors)")
        if self.data is not None and (self.n is not None or self.k is not None):
            raise InputError("give either a synthetic size or a data path, not both")
        if self.n is not None and self.n <= 0:
            raise InputError("--n must be positive")
        if self.k is not None and self.k <= 0:
            raise InputError("--k must be positive")
        if self.portfolio_path not in ("qp", "operators", "generic"):
            raise InputError("portfolio path must be qp, operators, or generic")


@dataclass
class RunRecord:
    """One benchmark run; field names match the CSV schema."""

    problem: str
    n: int
    status: str
    iters: int
    setup_s: float
    precond_s: float
    linsys_total_s: float
    linsys_avg_ms: float
    prox_total_s: float
    prox_avg_ms: float
    total_s: float
    rp: float
    rd: float
    objective: float
    data_source: str = "synthetic"
    seed: Optional[int] = None
    history: list[dict] = field(default_factory=list)

    def csv_row(self) -> str:
        cells = [
            self.problem,
            str(self.n),
            self.status,
            str(self.iters),
            f"{self.setup_s:.6f}",
            f"{self.precond_s:.6f}",
            f"{self.linsys_total_s:.6f}",
            f"{self.linsys_avg_ms:.6f}",
            f"{self.prox_total_s:.6f}",
            f"{self.prox_avg_ms:.6f}",
            f"{self.total_s:.6f}",
            f"{self.rp:.6e}",
            f"{self.rd:.6e}",
            f"{self.objective:.10e}",
        ]
        return ",".join(cells)

    def to_csv(self) -> str:
        return CSV_HEADER + "\n" + self.csv_row() + "\n"

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunRecord":
        return cls(**json.loads(text))
