import numpy as np
import pytest

from qwperiod.exact import INV_SQRT2, ExactScalar
from qwperiod.parity import adjacency_power
from qwperiod.pqrs import (
    SYMBOLS,
    BudgetExceeded,
    IndexOutOfRange,
    PqrsCombo,
    combo_from_words,
    decompose_block,
    enumerate_words,
    format_combo,
    path_count,
    pqrs_product,
    reduce_word,
    symbol_matrix,
)
from qwperiod.walk import InvalidN, hadamard_coin, hadamard_walk, matrix_power


def combo(m, p, q, r, s):
    unit = ExactScalar(1, 0, 0, 0, m)
    return PqrsCombo(*(unit * v for v in (p, q, r, s)))


def test_product_table_against_matrices():
    coin = hadamard_coin()
    for x in SYMBOLS:
        for y in SYMBOLS:
            s, z = pqrs_product(x, y, coin)
            assert symbol_matrix(x, coin) @ symbol_matrix(y, coin) == symbol_matrix(z, coin).scale(s)


def test_hadamard_spot_entries():
    assert pqrs_product("P", "Q") == (INV_SQRT2, "R")
    assert pqrs_product("Q", "Q") == (-INV_SQRT2, "Q")
    assert pqrs_product("R", "S") == (-INV_SQRT2, "P")


def test_reduce_word():
    s, sym = reduce_word("QPQQ")
    # Q P = c S, S Q = b Q, Q Q = d Q
    assert (s, sym) == (-ExactScalar(1, 0, 0, 0, 3), "Q")
    with pytest.raises(ValueError):
        reduce_word("PRQ")


def test_u3_blocks():
    assert decompose_block(3, 3, 1, 2) == combo(2, 1, 0, 1, 1)
    # direct matrix power gives P - 2Q + R + S at n = 4
    assert decompose_block(3, 4, 1, 2) == combo(3, 1, -2, 1, 1)
    assert format_combo(decompose_block(3, 4, 1, 2)) == "(1/√2)^3 (P - 2Q + R + S)"


@pytest.mark.parametrize("N", [3, 4, 5])
def test_three_routes_agree(N):
    coin = hadamard_coin()
    op = hadamard_walk(N)
    power = op.matrix
    for n in range(1, 9):
        for k in range(1, N + 1):
            for l in range(1, N + 1):
                words = enumerate_words(N, n, k, l)
                via_words = combo_from_words(words)
                assert via_words == decompose_block(N, n, k, l)
                assert via_words.to_matrix(coin) == power.block(k - 1, l - 1)
        power = power @ op.matrix


def test_path_counts():
    assert [path_count(3, n, 1, 2) for n in (2, 3, 4)] == [1, 3, 5]
    for N in (3, 6, 9):
        for n in range(1, 10):
            a = adjacency_power(N, n)
            assert all(path_count(N, n, 1, l) == a[0, l - 1] for l in range(1, N + 1))


def test_limits():
    with pytest.raises(BudgetExceeded):
        enumerate_words(3, 25, 1, 1, cap=20)
    with pytest.raises(IndexOutOfRange):
        decompose_block(3, 2, 0, 1)
    with pytest.raises(InvalidN):
        decompose_block(2, 2, 1, 1)


def test_to_matrix_float():
    c = decompose_block(5, 6, 2, 4)
    want = np.linalg.matrix_power(hadamard_walk(5).matrix.to_complex(), 6)[2:4, 6:8]
    np.testing.assert_allclose(c.to_matrix().to_complex(), want, atol=1e-12)
    assert matrix_power(hadamard_walk(5), 6).block(1, 3) == c.to_matrix()
