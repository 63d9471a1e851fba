"""Matrix-free linear operators.

The solver never materializes the matrices it iterates with: the constraint
map, the objective matrix of a QP, and Hessian-vector products are all
expressed through :class:`LinearOperator`. Operators are immutable after
construction except :class:`HessianOperator`, whose internal data may be
refreshed at the current iterate by the outer loop.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import CapabilityError, DimensionMismatchError


class LinearOperator:
    """A map v -> Av with known dimensions and an optional adjoint.

    Subclasses implement ``_apply`` (and ``_apply_adjoint`` when the adjoint
    is available). ``apply`` accepts an optional output buffer so inner loops
    can avoid allocation; the functional form returns a fresh array.
    """

    def __init__(self, input_dim: int, output_dim: int):
        if input_dim < 1 or output_dim < 1:
            raise DimensionMismatchError("operator dimensions must be positive")
        self.input_dim = int(input_dim)
        self.output_dim = int(output_dim)

    @property
    def has_adjoint(self) -> bool:
        return type(self)._apply_adjoint is not LinearOperator._apply_adjoint

    def apply(self, v: np.ndarray, out: Optional[np.ndarray] = None) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.input_dim,):
            raise DimensionMismatchError(
                f"apply expected vector of length {self.input_dim}, got shape {v.shape}"
            )
        result = self._apply(v)
        if out is None:
            return result
        np.copyto(out, result)
        return out

    def apply_adjoint(self, u: np.ndarray, out: Optional[np.ndarray] = None) -> np.ndarray:
        if not self.has_adjoint:
            raise CapabilityError(f"{type(self).__name__} does not support an adjoint")
        u = np.asarray(u, dtype=float)
        if u.shape != (self.output_dim,):
            raise DimensionMismatchError(
                f"apply_adjoint expected vector of length {self.output_dim}, got shape {u.shape}"
            )
        result = self._apply_adjoint(u)
        if out is None:
            return result
        np.copyto(out, result)
        return out

    def _apply(self, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _apply_adjoint(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_dense(self) -> np.ndarray:
        """Materialize the operator column by column. Intended for small dims."""
        cols = np.eye(self.input_dim)
        return np.column_stack([self.apply(cols[:, j]) for j in range(self.input_dim)])


class IdentityOperator(LinearOperator):
    """Identity map; O(1) metadata, O(n) apply."""

    def __init__(self, dim: int):
        super().__init__(dim, dim)

    def _apply(self, v):
        return v.copy()

    def _apply_adjoint(self, u):
        return u.copy()


class DiagonalOperator(LinearOperator):
    """Multiplication by diag(d)."""

    def __init__(self, d: np.ndarray):
        d = np.asarray(d, dtype=float)
        super().__init__(d.size, d.size)
        self.d = d

    def _apply(self, v):
        return self.d * v

    def _apply_adjoint(self, u):
        return self.d * u


class DenseOperator(LinearOperator):
    """Operator backed by a dense 2-d array."""

    def __init__(self, a: np.ndarray):
        a = np.asarray(a, dtype=float)
        if a.ndim != 2:
            raise DimensionMismatchError("dense operator requires a 2-d array")
        super().__init__(a.shape[1], a.shape[0])
        self.a = a

    def _apply(self, v):
        return self.a @ v

    def _apply_adjoint(self, u):
        return self.a.T @ u


class SparseOperator(LinearOperator):
    """Operator backed by a scipy sparse matrix (stored as CSR)."""

    def __init__(self, a):
        if not sp.issparse(a):
            raise DimensionMismatchError("SparseOperator requires a scipy sparse matrix")
        a = a.tocsr()
        super().__init__(a.shape[1], a.shape[0])
        self.a = a

    def _apply(self, v):
        return np.asarray(self.a @ v)

    def _apply_adjoint(self, u):
        return np.asarray(self.a.T @ u)


class DiagPlusLowRank(LinearOperator):
    """Symmetric operator diag(d) + F F^T kept in factored form.

    apply costs O(nk) for an n-vector and an n-by-k factor; the n-by-n matrix
    is never formed. PSD whenever d >= 0.
    """

    def __init__(self, d: np.ndarray, F: np.ndarray):
        d = np.asarray(d, dtype=float)
        F = np.asarray(F, dtype=float)
        if F.ndim != 2 or F.shape[0] != d.size:
            raise DimensionMismatchError("factor F must be n-by-k with n = len(d)")
        super().__init__(d.size, d.size)
        self.d = d
        self.F = F

    def _apply(self, v):
        return self.d * v + self.F @ (self.F.T @ v)

    def _apply_adjoint(self, u):
        return self._apply(u)


class StackedOperator(LinearOperator):
    """Vertical concatenation [A_1; A_2; ...] of operators on a common domain.

    The adjoint sums the part adjoints: (stack)^T u = sum_i A_i^T u_i.
    """

    def __init__(self, ops: Sequence[LinearOperator]):
        ops = list(ops)
        if not ops:
            raise DimensionMismatchError("stack_vertical requires at least one operator")
        n = ops[0].input_dim
        for op in ops:
            if op.input_dim != n:
                raise DimensionMismatchError("stacked operators must share input_dim")
        super().__init__(n, sum(op.output_dim for op in ops))
        self.ops = ops
        self._offsets = np.cumsum([0] + [op.output_dim for op in ops])

    def _apply(self, v):
        return np.concatenate([op.apply(v) for op in self.ops])

    def _apply_adjoint(self, u):
        out = np.zeros(self.input_dim)
        for op, lo, hi in zip(self.ops, self._offsets[:-1], self._offsets[1:]):
            out += op.apply_adjoint(u[lo:hi])
        return out

    @property
    def has_adjoint(self) -> bool:
        return all(op.has_adjoint for op in self.ops)


class OnesRowOperator(LinearOperator):
    """The 1-by-n summing map v -> (sum v); adjoint broadcasts a scalar."""

    def __init__(self, dim: int):
        super().__init__(dim, 1)

    def _apply(self, v):
        return np.array([v.sum()])

    def _apply_adjoint(self, u):
        return np.full(self.input_dim, u[0])


class MatrixFreeOperator(LinearOperator):
    """Operator defined by callables; adjoint optional."""

    def __init__(
        self,
        input_dim: int,
        output_dim: int,
        matvec: Callable[[np.ndarray], np.ndarray],
        rmatvec: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    ):
        super().__init__(input_dim, output_dim)
        self._matvec = matvec
        self._rmatvec = rmatvec

    @property
    def has_adjoint(self) -> bool:
        return self._rmatvec is not None

    def _apply(self, v):
        return np.asarray(self._matvec(v), dtype=float)

    def _apply_adjoint(self, u):
        return np.asarray(self._rmatvec(u), dtype=float)


class HessianOperator(LinearOperator):
    """Square operator representing the curvature of the smooth objective at
    the current iterate.

    ``update(x)`` refreshes the internal data so that subsequent ``apply``
    calls act as the Hessian at ``x``; for problems whose curvature does not
    depend on the iterate this is a no-op and ``is_constant`` is True.

    ``diag_shift`` reports the multiple of the identity folded into ``apply``
    (for instance a ridge term); ``smooth_part`` exposes the remainder, which
    is the natural target for low-rank sketching.
    """

    is_constant: bool = True
    diag_shift: float = 0.0

    def __init__(self, dim: int):
        super().__init__(dim, dim)

    def update(self, x: np.ndarray) -> None:
        pass

    def smooth_part(self) -> LinearOperator:
        if self.diag_shift == 0.0:
            return self
        return MatrixFreeOperator(
            self.input_dim,
            self.output_dim,
            lambda v: self.apply(v) - self.diag_shift * v,
            lambda u: self.apply(u) - self.diag_shift * u,
        )

    def _apply_adjoint(self, u):
        return self._apply(u)


class ConstantHessian(HessianOperator):
    """Hessian that never changes (quadratic objectives)."""

    def __init__(self, op: LinearOperator):
        if op.input_dim != op.output_dim:
            raise DimensionMismatchError("a Hessian must be square")
        super().__init__(op.input_dim)
        self.op = op

    def _apply(self, v):
        return self.op.apply(v)


class FunctionHessian(HessianOperator):
    """Hessian-vector product supplied as a callable of (x, v).

    ``update`` stores the evaluation point; ``apply`` closes over it.
    """

    is_constant = False

    def __init__(self, dim: int, hvp: Callable[[np.ndarray, np.ndarray], np.ndarray], x0=None):
        super().__init__(dim)
        self._hvp = hvp
        self._x = np.zeros(dim) if x0 is None else np.asarray(x0, dtype=float)

    def update(self, x: np.ndarray) -> None:
        self._x = np.asarray(x, dtype=float).copy()

    def _apply(self, v):
        return np.asarray(self._hvp(self._x, v), dtype=float)


def as_operator(a) -> LinearOperator:
    """Coerce an ndarray, sparse matrix, or operator into a LinearOperator."""
    if isinstance(a, LinearOperator):
        return a
    if sp.issparse(a):
        return SparseOperator(a)
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2:
        raise DimensionMismatchError("expected a 2-d matrix or a LinearOperator")
    return DenseOperator(arr)


def stack_vertical(ops: Sequence[LinearOperator]) -> StackedOperator:
    """Vertically stack operators sharing a common input dimension."""
    return StackedOperator(ops)


def update_hessian(op: HessianOperator, x: np.ndarray) -> None:
    """Refresh ``op`` so its apply reflects the curvature at ``x``."""
    op.update(np.asarray(x, dtype=float))
