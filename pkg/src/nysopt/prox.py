"""Proximal operators and set geometry for the z-subproblem.

Extended reals are IEEE infinities; the convention inf * 0 = 0 is applied
explicitly where support functions need it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class Box:
    """Hyperrectangle [l, u]; entries of l may be -inf and of u +inf."""

    l: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        l = np.asarray(self.l, dtype=float)
        u = np.asarray(self.u, dtype=float)
        if l.shape != u.shape:
            raise DataError("box bounds must have matching shapes")
        if np.any(l > u):
            raise DataError("box requires l <= u elementwise")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "u", u)

    @property
    def dim(self) -> int:
        return self.l.size


def soft_threshold(v: np.ndarray, kappa: float) -> np.ndarray:
    """Elementwise sign(v) * max(|v| - kappa, 0); kappa >= 0."""
    if kappa < 0:
        raise DataError("soft_threshold requires kappa >= 0")
    v = np.asarray(v, dtype=float)
    return np.sign(v) * np.maximum(np.abs(v) - kappa, 0.0)


def box_project(v: np.ndarray, box: Box) -> np.ndarray:
    """Clamp v into [l, u]."""
    return np.clip(np.asarray(v, dtype=float), box.l, box.u)


def simplex_project(v: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Project v onto the probability simplex {z >= 0, sum z = 1}.

    Solves sum_i (v_i - nu)_+ = 1 for the threshold nu by bisection and
    returns (v - nu)_+. The root is bracketed by nu in
    [-max|v| - 1, max|v|]. After bisection the active set is read off and
    the threshold is polished to its closed form for that set, so the result
    is exact up to roundoff whenever the active set is identified.
    """
    v = np.asarray(v, dtype=float)
    if v.size < 1:
        raise DataError("simplex_project requires a nonempty vector")
    if tol <= 0:
        raise DataError("simplex_project requires tol > 0")

    # Already on the simplex: the threshold is 0 and the projection is v.
    if np.all(v >= 0) and abs(v.sum() - 1.0) <= tol:
        return v.copy()

    vmax = np.max(np.abs(v))
    lo, hi = -vmax - 1.0, vmax

    def excess(nu):
        return np.maximum(v - nu, 0.0).sum() - 1.0

    nu = 0.5 * (lo + hi)
    for _ in range(200):
        nu = 0.5 * (lo + hi)
        e = excess(nu)
        if abs(e) <= tol and hi - lo <= tol:
            break
        if e > 0:
            lo = nu
        else:
            hi = nu

    active = v > nu
    if active.any():
        nu_exact = (v[active].sum() - 1.0) / active.sum()
        # Accept the closed-form threshold only if it keeps the same set.
        if np.all(v[active] > nu_exact) and np.all(v[~active] <= nu_exact):
            nu = nu_exact
    return np.maximum(v - nu, 0.0)


def box_support(y: np.ndarray, box: Box) -> float:
    """Support function of [l, u]: sum_i u_i (y_i)_+ - l_i (-y_i)_+.

    Terms with y_i = 0 contribute 0 regardless of infinite bounds; any
    inf * positive term makes the result +inf.
    """
    y = np.asarray(y, dtype=float)
    total = 0.0
    pos = y > 0
    neg = y < 0
    if np.any(pos & np.isinf(box.u)) or np.any(neg & np.isinf(box.l)):
        return np.inf
    total += np.sum(box.u[pos] * y[pos])
    total += np.sum(box.l[neg] * y[neg])
    return float(total)


def box_recession_project(y: np.ndarray, box: Box) -> np.ndarray:
    """Project y onto the recession cone of [l, u], coordinatewise.

    Coordinates with both bounds finite recede only through 0; a finite
    lower bound with u = +inf admits d >= 0; the mirror case admits d <= 0;
    doubly infinite coordinates are free.
    """
    y = np.asarray(y, dtype=float)
    l_fin = np.isfinite(box.l)
    u_fin = np.isfinite(box.u)
    out = y.copy()
    out[l_fin & u_fin] = 0.0
    up_only = ~u_fin & l_fin
    out[up_only] = np.maximum(y[up_only], 0.0)
    down_only = ~l_fin & u_fin
    out[down_only] = np.minimum(y[down_only], 0.0)
    return out


def box_recession_distance(y: np.ndarray, box: Box) -> float:
    """l2 distance from y to the recession cone of [l, u]."""
    y = np.asarray(y, dtype=float)
    return float(np.linalg.norm(y - box_recession_project(y, box)))


def box_indicator(z: np.ndarray, box: Box, tol: float = 1e-9) -> float:
    """0 if z lies in [l, u] (within tol), else +inf."""
    z = np.asarray(z, dtype=float)
    scale = 1.0 + np.max(np.abs(z), initial=0.0)
    if np.all(z >= box.l - tol * scale) and np.all(z <= box.u + tol * scale):
        return 0.0
    return np.inf


def simplex_indicator(z: np.ndarray, tol: float = 1e-6) -> float:
    """0 if z is on the probability simplex within tol, else +inf."""
    z = np.asarray(z, dtype=float)
    if np.all(z >= -tol) and abs(z.sum() - 1.0) <= tol:
        return 0.0
    return np.inf
