"""Linear subspaces of R^d: orthonormal bases, projectors, principal angles,
Haar-random sampling, and orthogonal complements.

A subspace is stored by a d x k matrix with orthonormal columns.  Bases are
not canonical (any rotation of the columns spans the same space), so equality
is always tested through projectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, RankDeficient

# Orthonormality of stored bases; looser thresholds derive from this one.
ORTHO_TOL = 1e-12
# Smallest singular value accepted as "full column rank".
RANK_TOL = 1e-10
# Two subspaces are considered equal when projectors agree to this max-norm.
EQUALITY_TOL = 1e-8


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional linear subspace of R^d, 1 <= k <= d-1.

    Attributes
    ----------
    ambient_dim : int
        The dimension d of the surrounding space.
    basis : ndarray of shape (d, k)
        Orthonormal columns spanning the subspace.
    """

    ambient_dim: int
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2 or b.shape[0] != self.ambient_dim:
            raise DimensionError(
                f"basis shape {b.shape} does not match ambient dim {self.ambient_dim}"
            )
        k = b.shape[1]
        if not 1 <= k <= self.ambient_dim - 1:
            raise DimensionError(f"subspace dimension {k} not in [1, {self.ambient_dim - 1}]")
        gram_err = np.abs(b.T @ b - np.eye(k)).max()
        if gram_err > ORTHO_TOL:
            raise RankDeficient(f"basis columns not orthonormal (deviation {gram_err:.2e})")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def _orthonormalize(raw: np.ndarray) -> np.ndarray:
    """QR with the diagonal of R forced positive; deterministic sign convention."""
    q, r = np.linalg.qr(raw)
    signs = np.sign(np.diagonal(r)).copy()
    signs[signs == 0] = 1.0
    return q * signs


def make_subspace(raw) -> Subspace:
    """Build a Subspace from any full-column-rank d x k matrix.

    The column space is preserved; the stored basis is the sign-fixed QR
    orthonormalization of ``raw``.
    """
    a = np.atleast_2d(np.asarray(raw, dtype=float))
    d, k = a.shape
    if not 1 <= k <= d - 1:
        raise DimensionError(f"subspace dimension {k} not in [1, {d - 1}]")
    smin = np.linalg.svd(a, compute_uv=False)[-1]
    if smin <= RANK_TOL:
        raise RankDeficient(f"smallest singular value {smin:.2e} <= {RANK_TOL}")
    return Subspace(d, _orthonormalize(a))


def projector(s: Subspace) -> np.ndarray:
    """Orthogonal projection matrix B B^T onto the subspace."""
    return s.basis @ s.basis.T


def hs_inner(s1: Subspace, s2: Subspace) -> float:
    """trace(P1 P2), computed as the squared Frobenius norm of B1^T B2."""
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    m = s1.basis.T @ s2.basis
    return float((m * m).sum())


def principal_angles(s1: Subspace, s2: Subspace) -> np.ndarray:
    """Squared cosines of the principal angles, descending, clamped to [0, 1].

    These are the squared singular values of B1^T B2, equivalently the
    nonzero eigenvalues of P1 P2; their sum equals hs_inner(s1, s2).
    """
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    sv = np.linalg.svd(s1.basis.T @ s2.basis, compute_uv=False)
    return np.clip(sv * sv, 0.0, 1.0)


def chordal_distance_sq(s1: Subspace, s2: Subspace) -> float:
    """k - trace(P1 P2) for two subspaces of equal dimension k."""
    if s1.dim != s2.dim:
        raise DimensionError("chordal distance requires equal dimensions")
    return float(s1.dim - hs_inner(s1, s2))


def haar_random(d: int, k: int, rng: np.random.Generator) -> Subspace:
    """Draw a uniformly distributed k-dimensional subspace of R^d.

    A d x k standard Gaussian matrix is orthonormalized with the sign-fixed
    QR factorization; the sign convention makes the column frame exactly
    Haar-distributed rather than merely Haar up to signs.
    """
    if not 1 <= k <= d - 1:
        raise DimensionError(f"k={k} not in [1, {d - 1}]")
    return Subspace(d, _orthonormalize(rng.standard_normal((d, k))))


def haar_basis_batch(d: int, k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """(count, d, k) stack of independent Haar orthonormal bases; bulk sampler
    for Monte-Carlo estimates."""
    g = rng.standard_normal((count, d, k))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.einsum("nii->ni", r))
    signs[signs == 0] = 1.0
    return q * signs[:, None, :]


def complement(s: Subspace) -> Subspace:
    """Orthogonal complement, from the unused left-singular directions."""
    u = np.linalg.svd(s.basis, full_matrices=True)[0]
    return Subspace(s.ambient_dim, u[:, s.dim:])


def subspaces_equal(s1: Subspace, s2: Subspace, tol: float = EQUALITY_TOL) -> bool:
    """Projector comparison in max-norm; basis matrices are not canonical."""
    if s1.ambient_dim != s2.ambient_dim or s1.dim != s2.dim:
        return False
    return bool(np.abs(projector(s1) - projector(s2)).max() <= tol)
