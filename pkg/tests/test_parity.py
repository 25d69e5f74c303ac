import numpy as np
import pytest

from qwperiod.parity import (
    ObstructionFailed,
    adjacency,
    adjacency_power,
    b_matrix,
    compress_row,
    expand_row,
    gf2_rank,
    parity_update,
    periodicity_obstruction,
    update_matrix,
    verify_path_symmetry,
)
from qwperiod.walk import InvalidN


def test_adjacency_powers_of_c3():
    assert np.array_equal(adjacency_power(3, 2).astype(int), [[2, 1, 1], [1, 2, 1], [1, 1, 2]])
    assert np.array_equal(adjacency_power(3, 3).astype(int), [[2, 3, 3], [3, 2, 3], [3, 3, 2]])


@pytest.mark.parametrize("N", range(3, 13))
def test_b_matrix_is_power_mod_two(N):
    for n in (1, 2, 5, 17, 30):
        want = (adjacency_power(N, n) % 2).astype(np.uint8)
        assert np.array_equal(b_matrix(N, n), want)


def test_b3_is_constant():
    for n in range(1, 40):
        assert np.array_equal(b_matrix(3, n), 1 - np.eye(3, dtype=np.uint8))


def test_row_compression_roundtrip():
    row = adjacency(9)[0]
    c = compress_row(row)
    assert np.array_equal(c, [1, 0, 0, 0])
    assert np.array_equal(expand_row(c), row)
    with pytest.raises(ValueError):
        compress_row([0, 1, 0, 0, 0])


@pytest.mark.parametrize("N", [5, 7, 11, 13])
def test_update_tracks_matrix_rows(N):
    c = compress_row(adjacency(N)[0])
    for n in range(1, 25):
        assert np.array_equal(expand_row(c), b_matrix(N, n)[0])
        c = parity_update(c)


@pytest.mark.parametrize("M", range(1, 100))
def test_update_matrix_full_rank(M):
    t = update_matrix(M)
    assert gf2_rank(t) == M
    c = np.random.default_rng(M).integers(0, 2, M).astype(np.uint8)
    assert np.array_equal((t.astype(int) @ c) % 2, parity_update(c))


def test_gf2_rank():
    assert gf2_rank(np.array([[1, 1], [1, 1]], dtype=np.uint8)) == 1
    assert gf2_rank(np.eye(5, dtype=np.uint8)) == 5


def test_obstruction_small():
    rep = periodicity_obstruction(7)
    assert rep.injective and not rep.zero_reached
    assert rep.orbit_length == 7
    assert rep.witnesses[:3] == [(1, 1, 2), (2, 1, 3), (3, 1, 2)]
    for n, k, l in rep.witnesses:
        assert b_matrix(7, n)[k - 1, l - 1] == 1


def test_obstruction_orbit_lengths():
    # frozen from a direct walk of the update map
    want = {3: 1, 5: 3, 7: 7, 9: 7, 11: 31, 13: 63, 15: 15, 17: 15, 19: 511, 21: 63}
    for N, length in want.items():
        assert periodicity_obstruction(N).orbit_length == length


def test_obstruction_capped_orbit_is_null():
    rep = periodicity_obstruction(37, orbit_cap=1000)
    assert rep.orbit_length is None and rep.injective
    assert rep.to_json()["orbitLength"] is None


def test_obstruction_rejects_even():
    with pytest.raises(InvalidN):
        periodicity_obstruction(8)


def test_path_symmetry():
    for N in range(3, 16):
        assert verify_path_symmetry(N, 30).ok


def test_obstruction_failed_is_exported():
    assert issubclass(ObstructionFailed, RuntimeError)
