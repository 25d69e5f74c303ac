from fractions import Fraction

import pytest

from qwperiod.poly import (
    IntPolynomial,
    NonMonicInput,
    candidate_cyclotomic_indices,
    cyclotomic,
    divisors,
    euler_phi,
    format_poly,
    poly_div_exact,
    strip_cyclotomic_factors,
)

sympy = pytest.importorskip("sympy")
lam = sympy.Symbol("x")


def _to_int_coeffs(expr):
    return [int(c) for c in reversed(sympy.Poly(expr, lam).all_coeffs())]


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_matches_sympy(n):
    assert list(cyclotomic(n).coeffs) == _to_int_coeffs(sympy.cyclotomic_poly(n, lam))
    assert cyclotomic(n).degree == euler_phi(n)


def test_small_cyclotomics():
    assert cyclotomic(1) == IntPolynomial([-1, 1])
    assert cyclotomic(2) == IntPolynomial([1, 1])
    assert cyclotomic(8) == IntPolynomial([1, 0, 0, 0, 1])
    assert cyclotomic(12) == IntPolynomial([1, 0, -1, 0, 1])


def test_degree_four_indices():
    assert [d for d in candidate_cyclotomic_indices(4) if euler_phi(d) == 4] == [5, 8, 10, 12]


def test_x_power_minus_one_is_product_over_divisors():
    for n in (6, 12, 30):
        prod = IntPolynomial([1])
        for d in divisors(n):
            prod = prod * cyclotomic(d)
        assert prod == IntPolynomial.x_power_minus_one(n)


def test_dyadic_coefficients_roundtrip():
    p = IntPolynomial.from_fractions([1, 0, Fraction(-1, 2), 0, 1])
    assert p.coefficient(2) == Fraction(-1, 2)
    assert not p.is_integral() and p.is_monic()
    assert IntPolynomial.from_json(p.to_json()) == p
    assert format_poly(p) == "λ^4 - 1/2*λ^2 + 1"


def test_exact_division():
    a = cyclotomic(8) * cyclotomic(3)
    assert poly_div_exact(a, cyclotomic(3)) == cyclotomic(8)
    assert poly_div_exact(a, cyclotomic(5)) is None


def test_strip_recovers_factorisation():
    g = IntPolynomial.from_fractions([1, 0, Fraction(-1, 2), 0, 1])
    p = cyclotomic(1) ** 2 * cyclotomic(12) * g
    fac = strip_cyclotomic_factors(p)
    assert dict(fac.factors) == {1: 2, 12: 1}
    assert fac.remainder == g and not fac.is_complete
    assert fac.product() == p


def test_strip_complete():
    p = cyclotomic(1) * cyclotomic(2) ** 3 * cyclotomic(9)
    fac = strip_cyclotomic_factors(p)
    assert fac.is_complete and fac.indices == [1, 2, 9]


def test_integer_non_cyclotomic_remainder():
    # x^2 - 3x + 1 has real roots off the unit circle
    fac = strip_cyclotomic_factors(IntPolynomial([1, -3, 1]))
    assert not fac.factors and not fac.is_complete


def test_non_monic_rejected():
    with pytest.raises(NonMonicInput):
        strip_cyclotomic_factors(IntPolynomial([1, 2]) * IntPolynomial([0, 2]))


def test_exact_evaluation():
    p = IntPolynomial([1, 0, 1])
    assert p(Fraction(1, 2)) == Fraction(5, 4)
