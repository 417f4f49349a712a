"""Moments of the Haar measure on Grassmannians, and what they certify.

The central quantity is the average of trace(P_V P_W)^p over independent
uniformly random subspaces V, W of dimensions k and l in R^d.  Three methods
compute it, in decreasing order of exactness:

* closed form: p = 1 gives kl/d; k = 1 or l = 1 gives a ratio of Pochhammer
  symbols.  Both are exact rationals evaluated in floating point.
* quadrature: the joint density of the squared principal cosines is known in
  closed form up to normalization.  When the smaller dimension (after
  complement reduction) is at most 2, the moment is a 1- or 2-dimensional
  integral handled by Gauss-Jacobi rules.
* Monte-Carlo: sample Haar pairs, average, report the standard error.

Complement reduction: trace(P_V P_W) = l - trace(P_{V^c} P_W), so any
dimension above d/2 can be swapped for its complement at the cost of a
binomial expansion over lower powers.

Also here: the univariate orthogonal polynomial family attached to the
squared-cosine distribution of a line against a k-subspace (the per-degree
probes used by the design diagnostic), cubature certification through the
potential minimum, and the combinatorial size bounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.special import roots_jacobi

from .errors import (
    MixedDimensions,
    ParameterError,
    UnsupportedQuadratureDim,
)
from .frames import WeightedFrame, pochhammer_ratio
from .potential import ffp
from .subspaces import haar_basis_batch

DEFAULT_MC_BUDGET = 100_000
# Node counts for the coarse/fine quadrature pair; the difference between the
# two runs is the reported error estimate.
QUAD_NODES = (96, 160)


def t_one(k: int, d: int, p: int) -> float:
    """Mean of trace(P_x P_V)^p for a Haar line x against a Haar k-subspace:
    (k/2)_p / (d/2)_p, exact."""
    if not 1 <= k <= d - 1:
        raise ParameterError(f"k={k} not in [1, {d - 1}]")
    if p < 1:
        raise ParameterError("p must be >= 1")
    return float(pochhammer_ratio(k, d, p))


class MomentEstimate(NamedTuple):
    value: float
    error: float
    method: str  # closed-form | quadrature | monte-carlo


def _mc_moment(k: int, l: int, d: int, p: int, budget: int,
               rng: np.random.Generator) -> MomentEstimate:
    """Haar sampling with W frozen to the first-l coordinate span; the joint
    distribution of trace(P_V P_W) is unchanged by invariance."""
    bases = haar_basis_batch(d, k, budget, rng)
    s = (bases[:, :l, :] ** 2).sum(axis=(1, 2))
    vals = s ** p
    return MomentEstimate(float(vals.mean()),
                          float(vals.std(ddof=1) / np.sqrt(budget)),
                          "monte-carlo")


def _quad_m1(k: int, d: int, p: int, nodes: int) -> float:
    """1-D case: the squared cosine profile has a single entry with density
    proportional to y^((k-2)/2) (1-y)^((d-k-2)/2)."""
    alpha = (d - k - 2) / 2.0   # exponent on (1 - y)
    beta = (k - 2) / 2.0        # exponent on y
    x, w = roots_jacobi(nodes, alpha, beta)
    y = (x + 1.0) / 2.0
    return float((w * y ** p).sum() / w.sum())


def _quad_m2(k: int, d: int, p: int, nodes: int) -> float:
    """2-D case, reduced pair (l=2) <= k <= d/2.

    Density on [0,1]^2 is proportional to |y1 - y2| y_i^a (1-y_i)^b with
    a = (k-3)/2, b = (d-k-3)/2.  The integrand is symmetric, so restrict to
    the ordered region y1 > y2 (dropping the absolute value, factor 2) and
    substitute y2 = t y1.  Both integrals then carry pure Jacobi weights:

        2 * int y1^(2a+2) (1-y1)^b [ int t^a (1-t) (1-t y1)^b f dt ] dy1

    with f = (y1 + y2)^p.  The leftover factor (1 - t y1)^b is smooth except
    at the far corner; the normalization integral (f = 1) goes through the
    same rule, so the shared error largely cancels in the ratio.
    """
    a = (k - 3) / 2.0
    b = (d - k - 3) / 2.0
    x_out, w_out = roots_jacobi(nodes, b, 2 * a + 2)
    y1 = (x_out + 1.0) / 2.0
    x_in, w_in = roots_jacobi(nodes, 1.0, a)
    t = (x_in + 1.0) / 2.0

    yy = y1[:, None]
    tt = t[None, :]
    smooth = (1.0 - yy * tt) ** b
    f = (yy * (1.0 + tt)) ** p
    inner_f = (smooth * f * w_in[None, :]).sum(axis=1)
    inner_1 = (smooth * w_in[None, :]).sum(axis=1)
    return float((w_out * inner_f).sum() / (w_out * inner_1).sum())


def _quad_moment(k: int, l: int, d: int, p: int) -> MomentEstimate:
    """Quadrature at two node counts; the difference is the error estimate."""
    lo, hi = QUAD_NODES
    if l == 1:
        coarse, fine = _quad_m1(k, d, p, lo), _quad_m1(k, d, p, hi)
    else:
        coarse, fine = _quad_m2(k, d, p, lo), _quad_m2(k, d, p, hi)
    return MomentEstimate(fine, abs(fine - coarse) + 1e-14, "quadrature")


def t_moment(k: int, l: int, d: int, p: int, method: str = "auto",
             budget: int = DEFAULT_MC_BUDGET,
             rng: np.random.Generator | None = None) -> MomentEstimate:
    """Mean of trace(P_V P_W)^p over independent Haar subspaces.

    method "auto" prefers closed form, then quadrature (valid when the
    smaller dimension after complement reduction is <= 2), then Monte-Carlo
    with the given sample budget.  Explicit "closed"/"quadrature"/"mc"
    force one method and raise if it cannot apply.
    """
    if not (1 <= k <= d - 1 and 1 <= l <= d - 1):
        raise ParameterError(f"dimensions ({k},{l}) not in [1, {d - 1}]")
    if p < 1:
        raise ParameterError("p must be >= 1")
    if method not in ("auto", "closed", "quadrature", "mc"):
        raise ParameterError(f"unknown method {method!r}")
    if rng is None:
        rng = np.random.default_rng(0)
    if method == "mc":
        return _mc_moment(k, l, d, p, budget, rng)
    res = _resolve(k, l, d, p, method)
    if res is not None:
        return res
    if method == "auto":
        return _mc_moment(k, l, d, p, budget, rng)
    raise UnsupportedQuadratureDim(
        f"reduced pair of ({k},{l}) in d={d} has min dimension >= 3"
    )


def _resolve(k: int, l: int, d: int, p: int, method: str) -> MomentEstimate | None:
    """Closed form / quadrature ladder with complement reduction.  Returns
    None when only Monte-Carlo can handle the entry."""
    if p == 0:
        return MomentEstimate(1.0, 0.0, "closed-form")
    if p == 1:
        return MomentEstimate(float(Fraction(k * l, d)), 0.0, "closed-form")
    if min(k, l) == 1:
        return MomentEstimate(t_one(max(k, l), d, p), 0.0, "closed-form")

    # complement reduction: swap the larger index for d - itself
    if k > d - k or l > d - l:
        if k > d - k:
            kr, fixed = d - k, l
            sub = lambda q: _resolve(kr, fixed, d, q, method)  # noqa: E731
        else:
            kr, fixed = d - l, k
            sub = lambda q: _resolve(fixed, kr, d, q, method)  # noqa: E731
        value, error = 0.0, 0.0
        worst = "closed-form"
        for q in range(p + 1):
            part = sub(q)
            if part is None:
                return None
            c = comb(p, q) * fixed ** (p - q)
            value += c * (-1.0) ** q * part.value
            error += c * part.error
            if part.method == "quadrature":
                worst = "quadrature"
        return MomentEstimate(value, error, worst)

    if method == "closed":
        raise ParameterError(f"no closed form for (k,l,d,p)=({k},{l},{d},{p})")
    small, large = sorted((k, l))
    if small <= 2:
        return _quad_moment(large, small, d, p)
    return None


@dataclass(frozen=True)
class TMatrix:
    """Symmetric (d-1) x (d-1) table of pairwise moments at a fixed power."""

    d: int
    p: int
    values: np.ndarray
    errors: np.ndarray
    methods: tuple  # of tuples of str

    def entry(self, k: int, l: int) -> MomentEstimate:
        return MomentEstimate(float(self.values[k - 1, l - 1]),
                              float(self.errors[k - 1, l - 1]),
                              self.methods[k - 1][l - 1])

    def rows(self) -> list:
        """(k, l, p, value, error, method) for k <= l; CSV-ready."""
        out = []
        for k in range(1, self.d):
            for l in range(k, self.d):
                e = self.entry(k, l)
                out.append((k, l, self.p, e.value, e.error, e.method))
        return out


def t_matrix(d: int, p: int, budget: int = DEFAULT_MC_BUDGET,
             rng: np.random.Generator | None = None) -> TMatrix:
    """Fill the full moment table, best method per entry."""
    if d < 2:
        raise ParameterError("d must be >= 2")
    if rng is None:
        rng = np.random.default_rng(0)
    values = np.zeros((d - 1, d - 1))
    errors = np.zeros((d - 1, d - 1))
    methods = [[""] * (d - 1) for _ in range(d - 1)]
    for k in range(1, d):
        for l in range(k, d):
            est = t_moment(k, l, d, p, budget=budget, rng=rng)
            for (i, j) in ((k - 1, l - 1), (l - 1, k - 1)):
                values[i, j] = est.value
                errors[i, j] = est.error
                methods[i][j] = est.method
    return TMatrix(d=d, p=p, values=values, errors=errors,
                   methods=tuple(tuple(row) for row in methods))


# ---------------------------------------------------------------------------
# orthogonal polynomial probes

@dataclass(frozen=True)
class JacobiFamily:
    """Polynomials orthogonal for the weight y^((k-2)/2) (1-y)^((d-2-k)/2)
    on [0,1], normalized to take the value 1 at y = 1.

    ``exact_polys`` holds ascending Fraction coefficients (the normalization
    P(1) = 1 is exact at that level); ``polys`` are float copies for
    evaluation.  ``recurrence`` holds (a, b, c) with
    y P_l = a P_{l+1} + b P_l + c P_{l-1}.
    """

    k: int
    d: int
    exact_polys: tuple
    recurrence: tuple

    @property
    def polys(self) -> list:
        return [np.array([float(c) for c in cs]) for cs in self.exact_polys]

    def evaluate(self, ell: int, y) -> np.ndarray:
        coeffs = [float(c) for c in self.exact_polys[ell]]
        return npoly.polyval(np.asarray(y, dtype=float), coeffs)


def _beta_moments(k: int, d: int, count: int) -> list:
    """E[y^m] for the normalized weight: the Pochhammer ratio (k/2)_m/(d/2)_m."""
    return [pochhammer_ratio(k, d, m) for m in range(count)]


def jacobi_family(k: int, d: int, p_max: int) -> JacobiFamily:
    """Gram-Schmidt on monomials under the exact moment inner product,
    rescaled to P(1) = 1, with the three-term recurrence extracted by exact
    coefficient matching."""
    if not 1 <= k <= d - 1:
        raise ParameterError(f"weight exponents <= -1 for k={k}, d={d}")
    if p_max > 10:
        raise ParameterError("p_max above 10 is not supported")
    moms = _beta_moments(k, d, 2 * p_max + 2)

    def inner(c1, c2):
        return sum(a * b * moms[i + j]
                   for i, a in enumerate(c1) for j, b in enumerate(c2))

    ortho: list = []
    for deg in range(p_max + 1):
        c = [Fraction(0)] * (deg + 1)
        c[deg] = Fraction(1)
        for q in ortho:
            coef = inner(c, q) / inner(q, q)
            for i, qi in enumerate(q):
                c[i] -= coef * qi
        ortho.append(c)
    polys = []
    for c in ortho:
        s = sum(c)
        polys.append(tuple(ci / s for ci in c))

    trips = []
    for ell in range(p_max):
        shifted = (Fraction(0),) + polys[ell]          # y * P_ell
        coefs = [Fraction(0)] * (ell + 2)
        rem = list(shifted)
        for j in range(ell + 1, -1, -1):               # triangular elimination
            pj = polys[j]
            cj = rem[j] / pj[j]
            coefs[j] = cj
            for i, pi in enumerate(pj):
                rem[i] -= cj * pi
        a, b = coefs[ell + 1], coefs[ell]
        c = coefs[ell - 1] if ell >= 1 else Fraction(0)
        trips.append((float(a), float(b), float(c)))
    return JacobiFamily(k=k, d=d, exact_polys=tuple(polys), recurrence=tuple(trips))


def design_diagnostic(frame: WeightedFrame, p: int, n_probes: int = 64,
                      rng: np.random.Generator | None = None,
                      normalize: bool = True) -> list:
    """Per-degree residuals of the zero-sum conditions a tight order-p frame
    must satisfy.

    For each degree ell = 1..p the probe function x -> P_ell(||P_V x||^2) is
    averaged over the frame; at a tight frame the weighted sum vanishes for
    every unit x.  Returns the max |sum| over Haar-random probe directions,
    one residual per degree.  Small residuals are necessary (not sufficient)
    for tightness, and locate the failing degree otherwise.

    Weights are normalized to sum 1 unless ``normalize`` is false, in which
    case residuals scale linearly with a common weight factor.
    """
    if not frame.equal_dims():
        raise MixedDimensions("design diagnostic requires one common dimension")
    if rng is None:
        rng = np.random.default_rng(0)
    k, d = int(frame.dims[0]), frame.ambient_dim
    fam = jacobi_family(k, d, p)
    w = frame.weights
    if normalize:
        w = w / w.sum()
    xs = haar_basis_batch(d, 1, n_probes, rng)[:, :, 0]     # (n_probes, d)
    y = np.stack([((xs @ s.basis) ** 2).sum(axis=1) for s in frame.subspaces],
                 axis=1)                                    # (n_probes, n)
    residuals = []
    for ell in range(1, p + 1):
        sums = fam.evaluate(ell, y) @ w
        residuals.append(float(np.abs(sums).max()))
    return residuals


# ---------------------------------------------------------------------------
# cubature certification

@dataclass(frozen=True)
class CubatureCertificate:
    """Potential-based strength-2p cubature check at unit total weight."""

    p: int
    ffp_value: float
    t_value: float
    t_error: float
    t_method: str
    margin: float            # ffp_value - t_value; >= -(tol+error) always
    verdict: str             # cubature | not-cubature | inconclusive
    probe_spread: float      # advisory: max-min of the probe averages
    tol: float


def certify_cubature(frame: WeightedFrame, p: int, tol: float = 1e-9,
                     budget: int = DEFAULT_MC_BUDGET,
                     rng: np.random.Generator | None = None,
                     n_probes: int = 1000) -> CubatureCertificate:
    """Compare the potential of the weight-normalized frame against the Haar
    moment; equality (margin within tol plus the moment's own error)
    certifies a cubature of strength 2p.

    The verdict degrades to "inconclusive" when the moment error exceeds tol,
    since equality can then neither be confirmed nor refuted at the requested
    tolerance.  A constancy probe over random subspaces W (the averaged
    p-th power of trace(P_W P_j) should be flat) is attached as a
    corroborating statistic, not part of the verdict.
    """
    if not frame.equal_dims():
        raise MixedDimensions("cubature certification requires one common dimension")
    if rng is None:
        rng = np.random.default_rng(0)
    k, d = int(frame.dims[0]), frame.ambient_dim
    normalized = frame.normalized()
    value = ffp(normalized, p)
    est = t_moment(k, k, d, p, budget=budget, rng=rng)
    margin = value - est.value
    if margin > tol + est.error:
        verdict = "not-cubature"
    elif est.error <= tol:
        verdict = "cubature"
    else:
        verdict = "inconclusive"

    probes = haar_basis_batch(d, k, n_probes, rng)
    w = normalized.weights
    avgs = np.zeros(n_probes)
    for sub, weight in zip(normalized.subspaces, w):
        m = probes.transpose(0, 2, 1) @ sub.basis       # (n_probes, k, k)
        avgs += weight * ((m * m).sum(axis=(1, 2))) ** p
    spread = float(avgs.max() - avgs.min())

    return CubatureCertificate(p=p, ffp_value=value, t_value=est.value,
                               t_error=est.error, t_method=est.method,
                               margin=margin, verdict=verdict,
                               probe_spread=spread, tol=tol)


def size_bounds(d: int, p: int) -> dict:
    """Combinatorial counts: the guaranteed-existence size for strength-2p
    cubatures (hence tight order-p frames), the per-degree harmonic space
    dimensions, and the cap on pairwise-distinct equiangular subspaces."""
    return {
        "tight_p_existence_bound": comb(2 * p + d - 1, d - 1) - 1,
        "harmonic_dim_2l": {
            ell: comb(d + 2 * ell - 1, d - 1) - comb(d + 2 * ell - 3, d - 1)
            for ell in range(1, p + 1)
        },
        "max_equiangular": comb(d + 1, 2),
    }
