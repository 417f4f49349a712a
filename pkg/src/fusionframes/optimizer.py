"""Riemannian minimization of the frame potential over products of
Grassmannians, plus a sphere min/max engine for numeric frame bounds.

Subspaces are carried as Stiefel representatives (orthonormal d x k bases)
and re-orthonormalized by QR after every step, so feasibility is exact at
machine precision.  The potential depends only on the spanned subspaces, so
the gradient is projected to the horizontal space to quotient out the gauge.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MixedDimensions, ParameterError
from .frames import WeightedFrame
from .moments import t_moment
from .subspaces import Subspace, haar_basis_batch

ARMIJO_C = 1e-4
ARMIJO_SHRINK = 0.5
MIN_STEP = 1e-18


@dataclass(frozen=True)
class OptimizerConfig:
    n: int
    k: int
    d: int
    p: int
    restarts: int = 16
    max_iters: int = 5000
    step: float = 0.1
    tol_grad: float = 1e-10
    target_margin: float = 1e-5

    def __post_init__(self):
        for field in ("n", "k", "d", "p", "restarts", "max_iters"):
            if getattr(self, field) < 1:
                raise ParameterError(f"{field} must be a positive integer")
        if self.step <= 0 or self.tol_grad <= 0 or self.target_margin <= 0:
            raise ParameterError("step, tol_grad, target_margin must be positive")
        if self.k > self.d - 1:
            raise ParameterError("need k <= d - 1")


@dataclass(frozen=True)
class OptimizerTrace:
    values: tuple          # FFP after each accepted step of the best restart
    frame: WeightedFrame
    t_value: float         # reference minimum: Haar moment for (k, k, d, p)
    t_error: float
    margin: float          # (final FFP - t_value) / t_value
    success: bool
    grad_norm: float
    restart_index: int
    restart_values: tuple  # final FFP of every restart, in restart order

    @property
    def final_value(self) -> float:
        return self.values[-1]


def _cross_gram(ys: np.ndarray) -> np.ndarray:
    # M[a, b] = Y_a^T Y_b, shape (n, n, k, k)
    return np.einsum("adk,bdl->abkl", ys, ys)


def _overlap(m: np.ndarray) -> np.ndarray:
    return (m ** 2).sum(axis=(2, 3))


def _ffp_equal(ys: np.ndarray, p: int, weight: float) -> float:
    s = _overlap(_cross_gram(ys))
    return weight ** 2 * float((s ** p).sum())


def ffp_gradient(frame: WeightedFrame, p: int):
    """Horizontal gradient of the potential with respect to each basis.

    For pairwise overlaps s_ij = tr(P_i P_j) the Euclidean gradient in Y_i is
    4p sum_j w_i w_j s_ij^(p-1) P_j Y_i, excluding j = i (that term is the
    constant k^p on the manifold); the result is then projected orthogonally
    to the column span of Y_i.
    """
    if not frame.equal_dims():
        raise MixedDimensions("gradient needs equal-dimension subspaces")
    if p < 1:
        raise ParameterError("need p >= 1")
    ys = np.stack([s.basis for s, _ in frame.entries])
    weights = np.asarray(frame.weights)
    m = _cross_gram(ys)
    s = _overlap(m)
    coef = np.power(s, p - 1) * np.outer(weights, weights)
    np.fill_diagonal(coef, 0.0)
    grad = 4 * p * np.einsum("ab,bdl,balk->adk", coef, ys, m)
    ytg = np.einsum("adk,adl->akl", ys, grad)
    grad -= np.einsum("adk,akl->adl", ys, ytg)
    return [grad[i] for i in range(len(frame.entries))]


def _equal_gradient(ys: np.ndarray, p: int, weight: float) -> np.ndarray:
    m = _cross_gram(ys)
    s = _overlap(m)
    coef = np.power(s, p - 1)
    np.fill_diagonal(coef, 0.0)
    grad = (4 * p * weight ** 2) * np.einsum("ab,bdl,balk->adk", coef, ys, m)
    ytg = np.einsum("adk,adl->akl", ys, grad)
    return grad - np.einsum("adk,akl->adl", ys, ytg)


def _retract(ys: np.ndarray, direction: np.ndarray, step: float) -> np.ndarray:
    q, r = np.linalg.qr(ys - step * direction)
    signs = np.sign(np.einsum("nii->ni", r))
    signs[signs == 0] = 1.0
    return q * signs[:, None, :]


def _one_restart(cfg: OptimizerConfig, rng) -> tuple:
    ys = haar_basis_batch(cfg.d, cfg.k, cfg.n, rng)
    weight = 1.0 / cfg.n
    value = _ffp_equal(ys, cfg.p, weight)
    values = [value]
    step = cfg.step
    grad = _equal_gradient(ys, cfg.p, weight)
    gnorm = float(np.sqrt((grad ** 2).sum()))
    for _ in range(cfg.max_iters):
        if gnorm <= cfg.tol_grad:
            break
        accepted = False
        while step >= MIN_STEP:
            cand = _retract(ys, grad, step)
            cand_value = _ffp_equal(cand, cfg.p, weight)
            if cand_value <= value - ARMIJO_C * step * gnorm ** 2:
                accepted = True
                break
            step *= ARMIJO_SHRINK
        if not accepted:
            break
        ys, value = cand, cand_value
        values.append(value)
        step *= 2.0      # warm start the next line search
        grad = _equal_gradient(ys, cfg.p, weight)
        gnorm = float(np.sqrt((grad ** 2).sum()))
    return ys, values, gnorm


def minimize_ffp(cfg: OptimizerConfig, rng=None) -> OptimizerTrace:
    """Best-of-restarts gradient descent with QR retraction and Armijo
    backtracking.  Success means the final potential sits within the
    configured relative margin of the Haar moment lower bound; failure is a
    reported outcome, never an exception.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    t_value, t_error, _ = t_moment(cfg.k, cfg.k, cfg.d, cfg.p)
    # pre-drawn child seeds keep restarts independent and order-insensitive
    seeds = rng.integers(0, 2 ** 63 - 1, size=cfg.restarts)
    best = None
    finals = []
    for idx in range(cfg.restarts):
        ys, values, gnorm = _one_restart(cfg, np.random.default_rng(seeds[idx]))
        finals.append(values[-1])
        if best is None or values[-1] < best[1][-1] - 1e-10:
            best = (ys, values, gnorm, idx)
    ys, values, gnorm, idx = best
    frame = WeightedFrame(
        cfg.d,
        tuple((Subspace(cfg.d, ys[i]), 1.0 / cfg.n) for i in range(cfg.n)),
    )
    margin = (values[-1] - t_value) / t_value
    return OptimizerTrace(
        values=tuple(values),
        frame=frame,
        t_value=t_value,
        t_error=t_error,
        margin=margin,
        success=values[-1] <= t_value * (1.0 + cfg.target_margin),
        grad_norm=gnorm,
        restart_index=idx,
        restart_values=tuple(finals),
    )


# ---------------------------------------------------------------------------
# sphere extrema of the power form (numeric frame bounds)

def _power_value_grad(bases, weights, p: int, x: np.ndarray) -> tuple:
    value = 0.0
    grad = np.zeros_like(x)
    for basis, w in zip(bases, weights):
        bx = basis.T @ x
        s = float(bx @ bx)
        value += w * s ** p
        grad += (2 * p * w * s ** (p - 1)) * (basis @ bx)
    return value, grad


def _sphere_descend(bases, weights, p, x, sign, max_iters=2000, tol=1e-12):
    # minimizes sign * f over the unit sphere
    value, grad = _power_value_grad(bases, weights, p, x)
    value *= sign
    grad = sign * grad
    grad = grad - (grad @ x) * x
    step = 0.1
    for _ in range(max_iters):
        gnorm = float(np.sqrt(grad @ grad))
        if gnorm <= tol:
            break
        accepted = False
        while step >= MIN_STEP:
            cand = x - step * grad
            cand /= np.sqrt(cand @ cand)
            cand_value, cand_grad = _power_value_grad(bases, weights, p, cand)
            cand_value *= sign
            if cand_value <= value - ARMIJO_C * step * gnorm ** 2:
                accepted = True
                break
            step *= ARMIJO_SHRINK
        if not accepted:
            break
        x, value = cand, cand_value
        grad = sign * cand_grad
        grad = grad - (grad @ x) * x
        step *= 2.0
    return sign * value


def sphere_extrema(frame: WeightedFrame, p: int, restarts: int = 32,
                   rng=None) -> tuple:
    """Estimated (min, max) of the power form over the unit sphere by
    projected gradient runs from Haar-random starts.  Estimates only: no
    global certificate, but for certified tight frames both ends match the
    forced constant to high accuracy.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    bases = [s.basis for s, _ in frame.entries]
    weights = list(frame.weights)
    lo, hi = np.inf, -np.inf
    for _ in range(restarts):
        x = rng.standard_normal(frame.ambient_dim)
        x /= np.sqrt(x @ x)
        lo = min(lo, _sphere_descend(bases, weights, p, x.copy(), +1.0))
        hi = max(hi, _sphere_descend(bases, weights, p, x.copy(), -1.0))
    return float(lo), float(hi)
