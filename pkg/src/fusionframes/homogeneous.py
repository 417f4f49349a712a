"""Sparse homogeneous polynomials in d real variables.

Coefficients are stored in a dict keyed by exponent tuples.  Only the small
set of operations needed for exact tightness certificates is provided:
products, linear combinations, evaluation, and the expansion of
(x_1^2 + ... + x_d^2)^p.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb, factorial

import numpy as np

from .errors import DimensionError, SizeGuardExceeded


def monomial_count(d: int, degree: int) -> int:
    """Number of monomials of the given total degree in d variables."""
    return comb(d + degree - 1, degree)


def check_size_guard(d: int, degree: int, limit: int) -> None:
    n = monomial_count(d, degree)
    if n > limit:
        raise SizeGuardExceeded(
            f"degree-{degree} expansion in {d} variables has {n} monomials > limit {limit}"
        )


@dataclass(frozen=True)
class HomogeneousPoly:
    """Homogeneous polynomial; every exponent tuple has length d and the
    common total degree."""

    ambient_dim: int
    degree: int
    coeffs: dict

    def __post_init__(self):
        for e in self.coeffs:
            if len(e) != self.ambient_dim or sum(e) != self.degree:
                raise DimensionError(f"bad exponent vector {e} for (d={self.ambient_dim}, "
                                     f"degree={self.degree})")

    def __mul__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("variable counts differ")
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0.0) + c1 * c2
        return HomogeneousPoly(self.ambient_dim, self.degree + other.degree, out)

    def scaled(self, a: float) -> "HomogeneousPoly":
        return HomogeneousPoly(self.ambient_dim, self.degree,
                               {e: a * c for e, c in self.coeffs.items()})

    def add(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if (self.ambient_dim, self.degree) != (other.ambient_dim, other.degree):
            raise DimensionError("cannot add polynomials of different shape")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0.0) + c
        return HomogeneousPoly(self.ambient_dim, self.degree, out)

    def power(self, p: int) -> "HomogeneousPoly":
        if p < 1:
            raise DimensionError("power must be >= 1")
        out = self
        for _ in range(p - 1):
            out = out * self
        return out

    def max_coeff_diff(self, other: "HomogeneousPoly") -> float:
        """Max-norm of the coefficient difference, over the union of supports."""
        keys = set(self.coeffs) | set(other.coeffs)
        if not keys:
            return 0.0
        return max(abs(self.coeffs.get(e, 0.0) - other.coeffs.get(e, 0.0)) for e in keys)

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        total = 0.0
        for e, c in self.coeffs.items():
            total += c * np.prod([xi ** ei for xi, ei in zip(x, e) if ei])
        return float(total)


def quadratic_form(mat: np.ndarray) -> HomogeneousPoly:
    """x^T M x as a degree-2 polynomial, for symmetric M."""
    m = np.asarray(mat, dtype=float)
    d = m.shape[0]
    coeffs: dict = {}
    for i in range(d):
        e = [0] * d
        e[i] = 2
        coeffs[tuple(e)] = float(m[i, i])
        for j in range(i + 1, d):
            e = [0] * d
            e[i] = 1
            e[j] = 1
            coeffs[tuple(e)] = float(m[i, j] + m[j, i])
    return HomogeneousPoly(d, 2, {e: c for e, c in coeffs.items() if c != 0.0})


def sum_of_squares_power(d: int, p: int) -> HomogeneousPoly:
    """Multinomial expansion of (x_1^2 + ... + x_d^2)^p."""
    coeffs: dict = {}
    for alpha in combinations_with_replacement(range(d), p):
        counts = [0] * d
        for i in alpha:
            counts[i] += 1
        c = factorial(p)
        for ci in counts:
            c //= factorial(ci)
        coeffs[tuple(2 * ci for ci in counts)] = float(c)
    return HomogeneousPoly(d, 2 * p, coeffs)
