"""Weighted fusion frames: the frame object, its operators, exact tightness
certificates, and the weight/subspace transformations that preserve tightness.

Tightness of order p means sum_j w_j ||P_j x||^(2p) = A ||x||^(2p) for every
x.  Both sides are homogeneous polynomials of degree 2p, so the identity is
certified exactly by comparing coefficients; no sampling is involved.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DimensionError,
    FrameFormatError,
    LengthMismatch,
    MixedDimensions,
    NotAFrame,
)
from .homogeneous import (
    HomogeneousPoly,
    check_size_guard,
    quadratic_form,
    sum_of_squares_power,
)
from .subspaces import Subspace, complement, make_subspace, projector

# Largest degree-2p monomial count accepted by the certificate expansion.
POWER_FORM_GUARD = 10 ** 6
# Default tolerance on the coefficient residual of a certificate.
CERTIFY_TOL = 1e-9
# Frame files must be orthonormal to this much before re-orthonormalization.
READ_CORRECTION_TOL = 1e-6


@dataclass(frozen=True)
class WeightedFrame:
    """An ordered collection of (subspace, positive weight) pairs sharing one
    ambient dimension."""

    ambient_dim: int
    entries: tuple  # of (Subspace, float)

    def __post_init__(self):
        entries = tuple((s, float(w)) for s, w in self.entries)
        if len(entries) < 1:
            raise DimensionError("a frame needs at least one subspace")
        for s, w in entries:
            if s.ambient_dim != self.ambient_dim:
                raise DimensionError("subspace ambient dimension differs from frame")
            if not w > 0:
                raise DimensionError(f"weights must be positive, got {w}")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def subspaces(self) -> list:
        return [s for s, _ in self.entries]

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.entries])

    @property
    def dims(self) -> np.ndarray:
        return np.array([s.dim for s, _ in self.entries])

    def mass_by_dim(self) -> dict:
        """m_k = total weight carried by dimension-k members."""
        out: dict = {}
        for s, w in self.entries:
            out[s.dim] = out.get(s.dim, 0.0) + w
        return out

    def equal_dims(self) -> bool:
        return len({s.dim for s, _ in self.entries}) == 1

    def rescaled(self, factor: float) -> "WeightedFrame":
        return WeightedFrame(self.ambient_dim,
                             tuple((s, w * factor) for s, w in self.entries))

    def normalized(self) -> "WeightedFrame":
        """Same subspaces with weights scaled to sum to 1."""
        return self.rescaled(1.0 / float(self.weights.sum()))


@dataclass(frozen=True)
class TightnessCertificate:
    """Outcome of an exact order-p tightness check."""

    p: int
    target_A: float
    residual: float
    tol: float

    @property
    def tight(self) -> bool:
        return self.residual <= self.tol


def build_frame(bases, weights=None) -> WeightedFrame:
    """Convenience constructor from raw basis matrices; weights default to 1."""
    subs = [b if isinstance(b, Subspace) else make_subspace(b) for b in bases]
    if weights is None:
        weights = [1.0] * len(subs)
    if len(weights) != len(subs):
        raise LengthMismatch("weights and bases differ in length")
    if not subs:
        raise DimensionError("a frame needs at least one subspace")
    return WeightedFrame(subs[0].ambient_dim, tuple(zip(subs, weights)))


# ---------------------------------------------------------------------------
# operators

def frame_operator(frame: WeightedFrame) -> np.ndarray:
    """S = sum_j w_j P_j, symmetric positive semidefinite."""
    s = np.zeros((frame.ambient_dim, frame.ambient_dim))
    for sub, w in frame.entries:
        s += w * projector(sub)
    return s


def analysis(frame: WeightedFrame, x) -> list:
    """Project x onto every member subspace."""
    x = np.asarray(x, dtype=float)
    if x.shape != (frame.ambient_dim,):
        raise DimensionError(f"x must have length {frame.ambient_dim}")
    return [sub.basis @ (sub.basis.T @ x) for sub, _ in frame.entries]


def synthesis(frame: WeightedFrame, fs) -> np.ndarray:
    """Weighted sum of one vector per member."""
    if len(fs) != len(frame):
        raise LengthMismatch(f"expected {len(frame)} vectors, got {len(fs)}")
    out = np.zeros(frame.ambient_dim)
    for (sub, w), f in zip(frame.entries, fs):
        f = np.asarray(f, dtype=float)
        if f.shape != (frame.ambient_dim,):
            raise DimensionError("component vector has wrong length")
        out += w * f
    return out


def reconstruct(frame: WeightedFrame, fs) -> np.ndarray:
    """S^{-1} applied to the synthesis of fs; inverts analysis when the
    collection actually spans R^d."""
    s = frame_operator(frame)
    eigmin = float(np.linalg.eigvalsh(s)[0])
    if eigmin <= 1e-10:
        raise NotAFrame(f"frame operator is singular (smallest eigenvalue {eigmin:.2e})")
    return np.linalg.solve(s, synthesis(frame, fs))


# ---------------------------------------------------------------------------
# tightness certificate

def power_form(frame: WeightedFrame, p: int) -> HomogeneousPoly:
    """Exact expansion of sum_j w_j (x^T P_j x)^p as a degree-2p polynomial."""
    if p < 1:
        raise DimensionError("p must be >= 1")
    check_size_guard(frame.ambient_dim, 2 * p, POWER_FORM_GUARD)
    total = HomogeneousPoly(frame.ambient_dim, 2 * p, {})
    for sub, w in frame.entries:
        q = quadratic_form(projector(sub))
        total = total.add(q.power(p).scaled(w))
    return total


def pochhammer_ratio(k: int, d: int, p: int) -> Fraction:
    """(k/2)_p / (d/2)_p as an exact rational."""
    num, den = Fraction(1), Fraction(1)
    for i in range(p):
        num *= Fraction(k, 2) + i
        den *= Fraction(d, 2) + i
    return num / den


def tightness_constant(frame: WeightedFrame, p: int) -> float:
    """The only constant a tight order-p frame can have:
    sum_k m_k (k/2)_p / (d/2)_p."""
    d = frame.ambient_dim
    total = 0.0
    for k, mass in frame.mass_by_dim().items():
        total += mass * float(pochhammer_ratio(k, d, p))
    return total


def certify_tight(frame: WeightedFrame, p: int, tol: float = CERTIFY_TOL) -> TightnessCertificate:
    """Exact order-p tightness certificate by coefficient comparison.

    The forced constant is computed in closed form, never fitted.  Two
    homogeneous polynomials agree on all of R^d iff their coefficients agree,
    so the residual (max coefficient mismatch) is a complete certificate.
    """
    a = tightness_constant(frame, p)
    lhs = power_form(frame, p)
    rhs = sum_of_squares_power(frame.ambient_dim, p).scaled(a)
    return TightnessCertificate(p=p, target_A=a, residual=lhs.max_coeff_diff(rhs), tol=tol)


def evaluate_power_form(frame: WeightedFrame, p: int, xs: np.ndarray) -> np.ndarray:
    """sum_j w_j ||P_j x||^(2p) for each row x of xs; sampling route,
    independent of the polynomial expansion."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    out = np.zeros(xs.shape[0])
    for sub, w in frame.entries:
        proj_sq = ((xs @ sub.basis) ** 2).sum(axis=1)
        out += w * proj_sq ** p
    return out


# ---------------------------------------------------------------------------
# tightness-preserving transformations

def reweight_down(frame: WeightedFrame, p: int) -> WeightedFrame:
    """Weight map w_j -> w_j (p - 1 + dim(V_j)/2); sends tight order-p frames
    to tight order-(p-1) frames."""
    if p < 2:
        raise DimensionError("reweight_down needs p >= 2")
    return WeightedFrame(
        frame.ambient_dim,
        tuple((s, w * (p - 1 + s.dim / 2.0)) for s, w in frame.entries),
    )


def complement_frame(frame: WeightedFrame) -> WeightedFrame:
    """Replace every subspace by its orthogonal complement, keeping weights.
    Requires equal dimensions; preserves tightness at every order."""
    if not frame.equal_dims():
        raise MixedDimensions("complement_frame requires all subspaces of equal dimension")
    return WeightedFrame(
        frame.ambient_dim,
        tuple((complement(s), w) for s, w in frame.entries),
    )


def union(f1: WeightedFrame, f2: WeightedFrame) -> WeightedFrame:
    """Concatenation; unions of tight order-p frames are tight with the
    constants adding."""
    if f1.ambient_dim != f2.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    return WeightedFrame(f1.ambient_dim, f1.entries + f2.entries)


# ---------------------------------------------------------------------------
# frame JSON

def frame_to_dict(frame: WeightedFrame) -> dict:
    return {
        "ambient_dim": frame.ambient_dim,
        "entries": [
            {"basis": [list(map(float, col)) for col in sub.basis.T], "weight": w}
            for sub, w in frame.entries
        ],
    }


def frame_from_dict(data: dict) -> WeightedFrame:
    """Parse the frame JSON structure; bases are lists of k columns of length
    d and are re-orthonormalized on read."""
    try:
        d = int(data["ambient_dim"])
        raw_entries = data["entries"]
    except (KeyError, TypeError) as exc:
        raise FrameFormatError(f"malformed frame data: {exc}") from exc
    entries = []
    for ent in raw_entries:
        try:
            cols = np.asarray(ent["basis"], dtype=float).T  # stored as columns
            weight = float(ent["weight"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FrameFormatError(f"malformed frame entry: {exc}") from exc
        if cols.ndim != 2 or cols.shape[0] != d:
            raise FrameFormatError(f"basis columns must have length {d}")
        sub = make_subspace(cols)
        correction = np.abs(sub.basis - cols).max()
        if correction > READ_CORRECTION_TOL:
            raise FrameFormatError(
                f"basis needed correction {correction:.2e} > {READ_CORRECTION_TOL}"
            )
        entries.append((sub, weight))
    return WeightedFrame(d, tuple(entries))


def save_frame(frame: WeightedFrame, path) -> None:
    with open(path, "w") as fh:
        json.dump(frame_to_dict(frame), fh, indent=2)
        fh.write("\n")


def load_frame(path) -> WeightedFrame:
    with open(path) as fh:
        return frame_from_dict(json.load(fh))
