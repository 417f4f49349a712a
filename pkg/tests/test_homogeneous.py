import numpy as np
import pytest

from fusionframes import (
    DimensionError,
    HomogeneousPoly,
    SizeGuardExceeded,
    monomial_count,
    quadratic_form,
    sum_of_squares_power,
)
from fusionframes.homogeneous import check_size_guard


def test_monomial_count():
    assert monomial_count(2, 2) == 3
    assert monomial_count(2, 4) == 5
    assert monomial_count(3, 2) == 6
    assert monomial_count(4, 4) == 35


def test_size_guard():
    check_size_guard(3, 4, 100)
    with pytest.raises(SizeGuardExceeded):
        check_size_guard(12, 10, 10 ** 5)


def test_exponent_validation():
    with pytest.raises(DimensionError):
        HomogeneousPoly(2, 2, {(1, 0): 1.0})        # degree mismatch
    with pytest.raises(DimensionError):
        HomogeneousPoly(2, 2, {(1, 1, 0): 1.0})     # wrong length


def test_quadratic_form_matches_matrix(rng):
    for _ in range(10):
        d = int(rng.integers(2, 6))
        m = rng.standard_normal((d, d))
        m = (m + m.T) / 2
        q = quadratic_form(m)
        assert q.degree == 2
        for _ in range(5):
            x = rng.standard_normal(d)
            assert abs(q(x) - x @ m @ x) < 1e-10


def test_product_and_power(rng):
    d = 3
    m = np.eye(d)
    q = quadratic_form(m)                 # x1^2 + x2^2 + x3^2
    q2 = q * q
    assert q2.degree == 4
    x = rng.standard_normal(d)
    assert abs(q2(x) - (x @ x) ** 2) < 1e-10
    assert abs(q.power(3)(x) - (x @ x) ** 3) < 1e-9


def test_sum_of_squares_power_coefficients():
    p = sum_of_squares_power(2, 2)        # (x^2 + y^2)^2 = x^4 + 2x^2y^2 + y^4
    assert p.coeffs == {(4, 0): 1.0, (2, 2): 2.0, (0, 4): 1.0}
    q = sum_of_squares_power(3, 1)
    assert q.coeffs == {(2, 0, 0): 1.0, (0, 2, 0): 1.0, (0, 0, 2): 1.0}


def test_sum_of_squares_power_evaluates(rng):
    for d, p in [(2, 3), (4, 2), (5, 4)]:
        poly = sum_of_squares_power(d, p)
        assert len(poly.coeffs) == monomial_count(d, p)
        x = rng.standard_normal(d)
        assert abs(poly(x) - (x @ x) ** p) < 1e-8 * max(1.0, (x @ x) ** p)


def test_max_coeff_diff_over_support_union():
    a = HomogeneousPoly(2, 2, {(2, 0): 1.0})
    b = HomogeneousPoly(2, 2, {(0, 2): 2.0})
    assert a.max_coeff_diff(b) == 2.0
    assert a.max_coeff_diff(a) == 0.0


def test_add_and_scale():
    a = HomogeneousPoly(2, 2, {(2, 0): 1.0, (1, 1): 2.0})
    b = a.scaled(-1.0).add(a)
    assert b.max_coeff_diff(HomogeneousPoly(2, 2, {})) == 0.0
    with pytest.raises(DimensionError):
        a.add(HomogeneousPoly(2, 4, {}))
