from math import comb

import pytest

from qunimodal import QPolynomial, gaussian, gaussian_by_enumeration


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _divide_by_one_minus_qk(num, k):
    """Exact division by (1 - q^k); raises if the division leaves a remainder."""
    quot = [0] * (len(num) - k)
    for d in range(len(quot)):
        quot[d] = num[d] + (quot[d - k] if d >= k else 0)
    check = [0] * len(num)
    for d, c in enumerate(quot):
        check[d] += c
        check[d + k] -= c
    if check != num:
        raise AssertionError(f"(1 - q^{k}) does not divide the numerator")
    return quot


def product_formula(ell: int, m: int) -> tuple:
    """Oracle: expand prod (1 - q^{m+i}) / (1 - q^i) for i = 1..ell exactly."""
    num = [1]
    for i in range(1, ell + 1):
        factor = [0] * (m + i + 1)
        factor[0], factor[m + i] = 1, -1
        num = _polymul(num, factor)
    for i in range(1, ell + 1):
        num = _divide_by_one_minus_qk(num, i)
    return tuple(num)


def test_frozen_small_expansions():
    assert gaussian(2, 2).coeffs == (1, 1, 2, 1, 1)
    assert gaussian(2, 3).coeffs == (1, 1, 2, 2, 2, 1, 1)
    assert gaussian(1, 4).coeffs == (1, 1, 1, 1, 1)
    assert gaussian(0, 7).coeffs == (1,)
    assert gaussian(3, 0).coeffs == (1,)


@pytest.mark.parametrize("ell,m", [(1, 1), (2, 5), (3, 3), (4, 6), (5, 5), (6, 6), (7, 4)])
def test_matches_product_formula(ell, m):
    assert gaussian(ell, m).coeffs == product_formula(ell, m)


def test_matches_enumeration_oracle():
    for ell in range(0, 7):
        for m in range(0, 7):
            assert gaussian(ell, m).coeffs == gaussian_by_enumeration(ell, m).coeffs
    assert gaussian(8, 8).coeffs == gaussian_by_enumeration(8, 8).coeffs


def test_enumeration_oracle_guard():
    with pytest.raises(ValueError):
        gaussian_by_enumeration(9, 9)


def test_degree_and_sum():
    for ell in range(0, 9):
        for m in range(0, 9):
            poly = gaussian(ell, m)
            assert poly.degree == ell * m
            assert sum(poly.coeffs) == comb(ell + m, ell)


def test_palindromic():
    for ell in range(0, 10):
        for m in range(0, 10):
            coeffs = gaussian(ell, m).coeffs
            assert coeffs == coeffs[::-1]


def test_symmetry_in_arguments():
    for ell in range(0, 13):
        for m in range(ell, 13):
            assert gaussian(ell, m).coeffs == gaussian(m, ell).coeffs


def test_pascal_recurrence():
    # G(i, j) = G(i, j-1) + q^j G(i-1, j), checked on a grid
    for i in range(1, 7):
        for j in range(1, 7):
            big = gaussian(i, j)
            left = gaussian(i, j - 1)
            up = gaussian(i - 1, j)
            for k in range(big.degree + 1):
                expected = left.coefficient(k) + up.coefficient(k - j)
                assert big.coefficient(k) == expected, (i, j, k)


def test_coefficient_out_of_range_is_zero():
    poly = gaussian(2, 2)
    assert poly.coefficient(-1) == 0
    assert poly.coefficient(5) == 0
    assert poly.coefficient(10**9) == 0


def test_rejects_negative_arguments():
    with pytest.raises(ValueError):
        gaussian(-1, 3)
    with pytest.raises(ValueError):
        gaussian(3, -2)


def test_difference_profile_frozen():
    assert gaussian(2, 2).difference_profile() == (1, 0, 1, -1, 0)
    assert gaussian(2, 3).difference_profile() == (1, 0, 1, 0, 0, -1, 0)
    assert QPolynomial((1,)).difference_profile() == (1,)


def test_difference_profile_telescopes():
    poly = gaussian(4, 5)
    prof = poly.difference_profile()
    assert len(prof) == poly.degree + 1
    running = 0
    for k, d in enumerate(prof):
        running += d
        assert running == poly.coefficient(k)


def test_qpolynomial_validation():
    with pytest.raises(ValueError):
        QPolynomial((1, 2, 0))
    with pytest.raises(ValueError):
        QPolynomial((1, -1, 1))
    with pytest.raises(ValueError):
        QPolynomial(())


def test_big_expansion_against_oracle():
    # one medium-large spot check of the packed evaluation
    assert gaussian(12, 17).coeffs == product_formula(12, 17)
