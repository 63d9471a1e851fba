"""Render convergence figures for a benchmark run."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .records import RunRecord


def render_run_plots(record: RunRecord, out_prefix: str) -> list[str]:
    """Write residual and objective traces next to the tabular output.

    Returns the list of files written.
    """
    if not record.history:
        return []
    ks = [h["k"] for h in record.history]
    rp = [max(h["rp_norm"], 1e-300) for h in record.history]
    rd = [max(h["rd_norm"], 1e-300) for h in record.history]
    obj = [h["objective"] for h in record.history]

    fig, (ax_res, ax_obj) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax_res.semilogy(ks, rp, label="primal residual")
    ax_res.semilogy(ks, rd, label="dual residual")
    ax_res.set_xlabel("iteration")
    ax_res.set_ylabel("residual norm")
    ax_res.legend()
    ax_obj.plot(ks, obj)
    ax_obj.set_xlabel("iteration")
    ax_obj.set_ylabel("objective")
    fig.suptitle(f"{record.problem} (n={record.n}, status={record.status})")
    fig.tight_layout()

    path = f"{out_prefix}_convergence.png"
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return [path]
