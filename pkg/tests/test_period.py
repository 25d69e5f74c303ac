import json
import math
from fractions import Fraction

import numpy as np
import pytest

from qwperiod.period import (
    ClassicalWalkSpec,
    char_poly,
    char_poly_numeric_check,
    classical_period,
    classify_all,
    period_brute_force,
    period_spectral,
    product_formula,
)
from qwperiod.poly import IntPolynomial, cyclotomic, poly_div_exact
from qwperiod.walk import hadamard_walk


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7, 8, 10, 12])
def test_charpoly_against_eigenvalues(N):
    want = np.poly(np.linalg.eigvals(hadamard_walk(N).matrix.to_complex()))
    got = [float(c) for c in reversed([char_poly(N).coefficient(j) for j in range(2 * N + 1)])]
    np.testing.assert_allclose(got, want.real, atol=1e-8)
    assert np.abs(want.imag).max() < 1e-8


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 8])
def test_two_routes_agree(N):
    assert char_poly(N, "modular") == char_poly(N, "leverrier")


def test_known_small_charpolys():
    F = cyclotomic
    assert char_poly(2) == F(1) ** 2 * F(2) ** 2
    assert char_poly(4) == F(1) ** 2 * F(2) ** 2 * F(8)
    g = IntPolynomial.from_fractions([1, 0, Fraction(-1, 2), 0, 1])
    assert char_poly(3) == F(1) * F(2) * g


def test_sixteen_has_a_non_cyclotomic_factor():
    # derived from the product formula: pairs (k, k+8) of the sine set give
    # λ^8 - 2λ^6 + 5/2 λ^4 - 2λ^2 + 1, squared
    F = cyclotomic
    h = IntPolynomial.from_fractions([1, 0, -2, 0, Fraction(5, 2), 0, -2, 0, 1])
    assert char_poly(16) == F(1) ** 2 * F(2) ** 2 * F(8) * F(12) ** 2 * h**2
    assert period_spectral(16).verdict == "infinite"


def test_divisibility():
    assert poly_div_exact(char_poly(6), char_poly(3)) is not None
    assert poly_div_exact(char_poly(32), char_poly(16)) is not None
    assert poly_div_exact(char_poly(7), char_poly(3)) is None


@pytest.mark.parametrize("N", range(2, 17))
def test_product_formula(N):
    assert char_poly_numeric_check(N) < 1e-9


def test_product_formula_value():
    # N=4: λ^8 - 2λ^6 + 2λ^4 - 2λ^2 + 1 at λ = 1 is 0
    assert abs(product_formula(4, 1.0)) < 1e-12


def test_spectral_periods():
    assert period_spectral(2).period == 2
    assert period_spectral(4).period == 8
    r = period_spectral(8)
    assert r.period == 24 and r.summary() == "Finite T=24, factors F1^2 F2^2 F8 F12^2"
    assert period_spectral(3).verdict == "infinite"


def test_brute_force():
    assert period_brute_force(8).period == 24
    r = period_brute_force(5, 50)
    assert r.verdict == "unknown" and r.bound == 50


def test_classify_table_ordered_and_json():
    rows = classify_all(12, workers=3)
    assert [r.N for r in rows] == list(range(2, 13))
    assert {r.N: r.period for r in rows if r.is_finite} == {2: 2, 4: 8, 8: 24}
    blob = json.dumps([r.to_json() for r in rows])
    assert json.loads(blob)[0]["schema"] == 1


def test_odd_rows_carry_parity_witness():
    row = {r.N: r for r in classify_all(7)}[5]
    assert row.parity_witness is not None


@pytest.mark.parametrize("N", range(2, 17))
def test_classical(N):
    for p in (0, 1):
        r = classical_period(ClassicalWalkSpec(N, Fraction(p)))
        assert r.verdict == "finite" and r.period == N
    r = classical_period(ClassicalWalkSpec(N, Fraction(1, 2)))
    if N == 2:
        # the lazy-free transition matrix on C_2 is the swap for every p
        assert r.period == 2
    else:
        assert r.verdict == "infinite"


def test_classical_eigenvalues_float():
    spec = ClassicalWalkSpec(7, Fraction(1, 3))
    ev = np.array([complex(x) for x in spec.eigenvalues()])
    m = np.zeros((7, 7))
    for x in range(7):
        m[x, (x + 1) % 7] += 1 / 3
        m[x, (x - 1) % 7] += 2 / 3
    want = np.linalg.eigvals(m)
    assert all(np.min(np.abs(want - e)) < 1e-9 for e in ev)
