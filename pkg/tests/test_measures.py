from fractions import Fraction

import numpy as np
import pytest

from qwperiod.exact import INV_SQRT2, ExactScalar
from qwperiod.measures import (
    NotPeriodic,
    float_measures,
    period_average,
    time_averaged_measure,
    time_averaged_series,
    tv_distance_to_uniform,
)
from qwperiod.walk import WalkState, hadamard_walk, measure, trajectory


def test_c2_period_average():
    m = period_average(2, WalkState.localized(2))
    assert m.values == (Fraction(1, 2), Fraction(1, 2))


def test_c8_period_average():
    m = period_average(8, WalkState.localized(8))
    assert m.values[:4] == (Fraction(7, 48), Fraction(7, 48), Fraction(5, 48), Fraction(5, 48))
    assert m.total() == 1
    assert tv_distance_to_uniform(m) == Fraction(1, 12)


def test_not_periodic():
    with pytest.raises(NotPeriodic):
        period_average(5, WalkState.localized(5))


@pytest.mark.parametrize("N,T", [(2, 2), (4, 8), (8, 24)])
def test_multiples_of_period_match(N, T):
    st = WalkState.localized(N, INV_SQRT2, ExactScalar(0, 0, 1, 0, 1))
    base = period_average(N, st)
    series = time_averaged_series(N, st, [m * T for m in range(1, 6)])
    assert all(s.values == base.values for s in series.values())


def test_series_matches_single():
    st = WalkState.localized(5)
    series = time_averaged_series(5, st, [3, 10])
    assert series[10] == time_averaged_measure(5, st, 10)


@pytest.mark.parametrize("N", [3, 6, 9])
def test_float_kernel_matches_exact(N):
    st = WalkState.localized(N, INV_SQRT2, -INV_SQRT2)
    want = [[float(x) for x in measure(s)] for s in trajectory(hadamard_walk(N), st, 40)]
    got = float_measures(N, 1 / np.sqrt(2), -1 / np.sqrt(2), 40)
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_tv_trend_n3():
    ser = time_averaged_series(3, WalkState.localized(3), [100, 400])
    assert tv_distance_to_uniform(ser[400]) < tv_distance_to_uniform(ser[100])
    assert float(tv_distance_to_uniform(ser[100])) == pytest.approx(0.004482, abs=5e-6)
