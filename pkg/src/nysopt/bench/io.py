"""File ingestion: libsvm-format datasets and Matrix-Market QP files."""

from __future__ import annotations

import os
import warnings
from typing import Optional, Tuple

import numpy as np
import scipy.io
import scipy.sparse as sp

from ..errors import InputError
from ..operators import SparseOperator
from ..problems import QPProblem
from ..prox import Box


def read_libsvm(path, n_features: Optional[int] = None) -> Tuple[SparseOperator, np.ndarray]:
    """Parse a libsvm-format text file: ``label idx:val idx:val ...``.

    Indices are 1-based. A line with only a label yields an all-zero row.
    Returns a CSR-backed operator and the label vector; malformed lines
    raise :class:`InputError` with their line number.
    """
    labels = []
    rows, cols, vals = [], [], []
    max_col = 0
    with open(path, "r") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            try:
                labels.append(float(parts[0]))
            except ValueError:
                raise InputError(f"{path}:{lineno}: bad label {parts[0]!r}") from None
            row = len(labels) - 1
            for tok in parts[1:]:
                try:
                    idx_s, val_s = tok.split(":", 1)
                    idx = int(idx_s)
                    val = float(val_s)
                except ValueError:
                    raise InputError(f"{path}:{lineno}: bad feature token {tok!r}") from None
                if idx < 1:
                    raise InputError(f"{path}:{lineno}: indices are 1-based, got {idx}")
                rows.append(row)
                cols.append(idx - 1)
                vals.append(val)
                max_col = max(max_col, idx)
    if not labels:
        raise InputError(f"{path}: no data lines")
    n = n_features if n_features is not None else max_col
    if n < max_col:
        raise InputError(f"{path}: feature index {max_col} exceeds n_features={n}")
    A = sp.csr_matrix((vals, (rows, cols)), shape=(len(labels), max(n, 1)))
    return SparseOperator(A), np.asarray(labels)


def write_libsvm(path, A, b: np.ndarray) -> None:
    """Write a matrix and labels in libsvm format with full float precision."""
    A = sp.csr_matrix(A)
    b = np.asarray(b, dtype=float)
    with open(path, "w") as fh:
        for i in range(A.shape[0]):
            start, end = A.indptr[i], A.indptr[i + 1]
            feats = " ".join(
                f"{j + 1}:{float(v)!r}" for j, v in zip(A.indices[start:end], A.data[start:end])
            )
            fh.write(f"{float(b[i])!r} {feats}".rstrip() + "\n")


def _read_vector(path) -> np.ndarray:
    """One decimal per line; the tokens inf/-inf denote infinite bounds."""
    vals = []
    with open(path, "r") as fh:
        for lineno, line in enumerate(fh, start=1):
            tok = line.strip()
            if not tok:
                continue
            try:
                vals.append(float(tok))
            except ValueError:
                raise InputError(f"{path}:{lineno}: non-numeric token {tok!r}") from None
    return np.asarray(vals)


def _read_matrix(path):
    try:
        mat = scipy.io.mmread(os.fspath(path))
    except Exception as exc:
        raise InputError(f"{path}: failed to parse Matrix Market file: {exc}") from None
    return sp.csr_matrix(mat)


def read_qp_files(pP, pq, pM, pl, pu) -> QPProblem:
    """Assemble a QP from Matrix Market (P, M) and newline-delimited vectors.

    P is symmetrized as (P + P') / 2; asymmetry beyond 1e-8 draws a warning.
    Dimension inconsistencies raise :class:`InputError`.
    """
    P = _read_matrix(pP)
    M = _read_matrix(pM)
    q = _read_vector(pq)
    l = _read_vector(pl)
    u = _read_vector(pu)

    if P.shape[0] != P.shape[1]:
        raise InputError(f"P must be square, got {P.shape}")
    n = P.shape[0]
    if q.size != n:
        raise InputError(f"q has length {q.size}, expected {n}")
    if M.shape[1] != n:
        raise InputError(f"M has {M.shape[1]} columns, expected {n}")
    m = M.shape[0]
    if l.size != m or u.size != m:
        raise InputError(f"bounds have lengths {l.size}/{u.size}, expected {m}")

    asym = abs(P - P.T)
    if asym.nnz and asym.max() > 1e-8:
        warnings.warn("P is not symmetric; using (P + P')/2", stacklevel=2)
    P = (P + P.T) * 0.5
    return QPProblem(SparseOperator(P), q, SparseOperator(M), Box(l, u))
