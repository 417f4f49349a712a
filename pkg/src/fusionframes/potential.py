"""The order-p fusion frame potential and its lower bounds.

FFP(F, p) = sum_{i,j} w_i w_j trace(P_i P_j)^p, diagonal included.  Three
bounds are provided: the generalized simplex bound (any frame), its pairwise
max form, and the mixed-dimension moment-matrix bound.  Equality in the
simplex bound characterizes equiangular tight collections, which is what the
equiangularity report detects.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import MissingMoment, SingleSubspace
from .frames import WeightedFrame, certify_tight
from .subspaces import projector

EQUIANGULAR_TOL = 1e-8
DISTINCT_TOL = 1e-8


def gram_matrix(frame: WeightedFrame) -> np.ndarray:
    """Pairwise table G[i, j] = trace(P_i P_j) = ||B_i^T B_j||_F^2."""
    n = len(frame)
    g = np.empty((n, n))
    subs = frame.subspaces
    for i in range(n):
        g[i, i] = subs[i].dim
        for j in range(i + 1, n):
            m = subs[i].basis.T @ subs[j].basis
            g[i, j] = g[j, i] = (m * m).sum()
    return g


def ffp(frame: WeightedFrame, p: int) -> float:
    """The order-p potential, diagonal terms included."""
    w = frame.weights
    g = gram_matrix(frame)
    return float(np.einsum("i,j,ij->", w, w, g ** p))


def _simplex_pieces(frame: WeightedFrame):
    w = frame.weights
    dims = frame.dims
    m = float(w @ dims)
    diag = float((w * w) @ dims)
    cross = float(w.sum() ** 2 - (w * w).sum())
    return m, diag, cross


def simplex_bound_rhs(frame: WeightedFrame) -> float:
    """(m^2/d - sum w_j^2 dim V_j) / sum_{i != j} w_i w_j, the floor under the
    largest off-diagonal trace(P_i P_j)."""
    if len(frame) < 2:
        raise SingleSubspace("simplex bound needs n >= 2")
    m, diag, cross = _simplex_pieces(frame)
    return (m * m / frame.ambient_dim - diag) / cross


def max_offdiagonal(frame: WeightedFrame) -> float:
    g = gram_matrix(frame)
    mask = ~np.eye(len(frame), dtype=bool)
    return float(g[mask].max())


def ffp_lower_bound_p(frame: WeightedFrame, p: int) -> float:
    """Generalized simplex lower bound on FFP(F, p).

    The cross term (m^2/d - sum w_j^2 dim V_j)^p / (sum_{i!=j} w_i w_j)^{p-1}
    is added to the diagonal sum sum w_j^2 dim(V_j)^p.  A negative numerator
    (possible for wildly unequal weights) is clamped to zero, leaving the
    diagonal sum as the bound.
    """
    if len(frame) < 2:
        raise SingleSubspace("bound needs n >= 2")
    w = frame.weights
    dims = frame.dims
    m, diag, cross = _simplex_pieces(frame)
    numerator = max(m * m / frame.ambient_dim - diag, 0.0)
    diag_p = float((w * w) @ (dims.astype(float) ** p))
    return numerator ** p / cross ** (p - 1) + diag_p


@dataclass(frozen=True)
class EquiangularityReport:
    is_equiangular: bool
    common_value: float | None
    spread: float
    n_distinct: int
    all_distinct: bool
    gerzon_ok: bool          # n <= C(d+1, 2)
    predicted_common_value: float | None  # k(nk-d)/((n-1)d) when tight, equal dims/weights


def equiangularity(frame: WeightedFrame, tol: float = EQUIANGULAR_TOL) -> EquiangularityReport:
    """Detect a constant off-diagonal trace(P_i P_j) and run the counting
    checks that a genuine equiangular system must satisfy.

    ``n_distinct`` counts pairwise-distinct subspaces (projector max-norm
    distance > 1e-8); the counting bound C(d+1,2) applies only to distinct
    members, so a valid equiangular system needs is_equiangular,
    all_distinct, and gerzon_ok simultaneously.
    """
    if len(frame) < 2:
        raise SingleSubspace("equiangularity needs n >= 2")
    n, d = len(frame), frame.ambient_dim
    g = gram_matrix(frame)
    off = g[~np.eye(n, dtype=bool)]
    spread = float(off.max() - off.min())
    is_eq = spread <= tol
    common = float(off.mean()) if is_eq else None

    projs = [projector(s) for s in frame.subspaces]
    distinct: list = []
    for p_i in projs:
        if not any(np.abs(p_i - q).max() <= DISTINCT_TOL for q in distinct):
            distinct.append(p_i)
    n_distinct = len(distinct)

    predicted = None
    if frame.equal_dims():
        w = frame.weights
        if np.ptp(w) <= tol * max(w.max(), 1.0):
            k = int(frame.dims[0])
            if certify_tight(frame, 1).tight:
                predicted = k * (n * k - d) / ((n - 1) * d)

    return EquiangularityReport(
        is_equiangular=is_eq,
        common_value=common,
        spread=spread,
        n_distinct=n_distinct,
        all_distinct=n_distinct == n,
        gerzon_ok=n <= comb(d + 1, 2),
        predicted_common_value=predicted,
    )


def ffp_lower_bound_mixed(frame: WeightedFrame, t_table) -> float:
    """M T M^T with M the dimension-mass vector m_1..m_{d-1} and T a moment
    table of matching ambient dimension."""
    if t_table.d != frame.ambient_dim:
        raise MissingMoment(
            f"moment table is for d={t_table.d}, frame has d={frame.ambient_dim}"
        )
    mass = frame.mass_by_dim()
    if any(not 1 <= k <= t_table.d - 1 for k in mass):
        raise MissingMoment("frame contains a dimension outside the table range")
    m = np.zeros(t_table.d - 1)
    for k, w in mass.items():
        m[k - 1] = w
    return float(m @ t_table.values @ m)


def mixed_bound_error(frame: WeightedFrame, t_table) -> float:
    """Propagated uncertainty of the mixed bound: sum m_k m_l err_{k,l}."""
    mass = frame.mass_by_dim()
    m = np.zeros(t_table.d - 1)
    for k, w in mass.items():
        m[k - 1] = w
    return float(m @ t_table.errors @ m)


@dataclass(frozen=True)
class PotentialReport:
    p: int
    value: float
    lower_bound: float
    bound_kind: str  # simplex-general | equal-dim-minimum | mixed-matrix
    gap: float


def potential_report(frame: WeightedFrame, p: int, t_table=None,
                     t_equal: float | None = None) -> PotentialReport:
    """FFP value against the applicable lower bound.

    ``t_table`` selects the mixed-matrix bound.  ``t_equal`` (the Haar
    moment for the frame's common dimension, supplied by the caller) selects
    the equal-dimension minimum (sum w)^2 T.  Otherwise the generalized
    simplex bound is reported.
    """
    value = ffp(frame, p)
    if t_table is not None:
        lower = ffp_lower_bound_mixed(frame, t_table)
        kind = "mixed-matrix"
    elif t_equal is not None and frame.equal_dims():
        lower = float(frame.weights.sum()) ** 2 * t_equal
        kind = "equal-dim-minimum"
    else:
        lower = ffp_lower_bound_p(frame, p)
        kind = "simplex-general"
    return PotentialReport(p=p, value=value, lower_bound=lower, bound_kind=kind,
                           gap=value - lower)
