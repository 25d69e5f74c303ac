"""Time-averaged measures and their distance to uniform."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .exact import DyadicRational
from .walk import EvolutionOperator, WalkState, hadamard_walk, measure, trajectory


class NotPeriodic(ValueError):
    pass


@dataclass(frozen=True)
class AveragedMeasure:
    N: int
    horizon: int
    values: tuple[Fraction, ...]

    def floats(self) -> list[float]:
        return [float(v) for v in self.values]

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def to_csv_rows(self) -> list[tuple[int, str, float]]:
        return [(x, str(v), float(v)) for x, v in enumerate(self.values)]


def _measure_sums(op: EvolutionOperator, initial: WalkState, n: int) -> list[DyadicRational]:
    sums = [DyadicRational(0)] * op.N
    for state in trajectory(op, initial, n - 1):
        sums = [s + m for s, m in zip(sums, measure(state))]
    return sums


def time_averaged_measure(N: int, initial: WalkState, n: int, op: EvolutionOperator | None = None) -> AveragedMeasure:
    """(1/n) * sum_{t<n} mu_t, exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    op = op or hadamard_walk(N)
    sums = _measure_sums(op, initial, n)
    return AveragedMeasure(N, n, tuple(s.to_fraction() / n for s in sums))


def time_averaged_series(N: int, initial: WalkState, horizons, op: EvolutionOperator | None = None) -> dict[int, AveragedMeasure]:
    """Averages at several horizons from a single pass over the trajectory."""
    horizons = sorted(set(horizons))
    if not horizons or horizons[0] < 1:
        raise ValueError("horizons must be >= 1")
    op = op or hadamard_walk(N)
    wanted = set(horizons)
    sums = [DyadicRational(0)] * N
    out = {}
    for t, state in enumerate(trajectory(op, initial, horizons[-1] - 1), start=1):
        sums = [s + m for s, m in zip(sums, measure(state))]
        if t in wanted:
            out[t] = AveragedMeasure(N, t, tuple(s.to_fraction() / t for s in sums))
    return out


def period_average(N: int, initial: WalkState) -> AveragedMeasure:
    """Average of mu_0..mu_{T-1} over one full period T_N."""
    from .period import period_spectral

    res = period_spectral(N)
    if not res.is_finite:
        raise NotPeriodic(f"the walk on C_{N} has no finite period")
    return time_averaged_measure(N, initial, res.period)


def tv_distance_to_uniform(m: AveragedMeasure) -> Fraction:
    u = Fraction(1, m.N)
    return sum((abs(v - u) for v in m.values), Fraction(0)) / 2


def float_measures(N: int, alpha: complex, beta: complex, steps: int) -> np.ndarray:
    """Per-step measures in floating point (compiled kernel), N >= 3."""
    psi0 = np.zeros((N, 2), dtype=complex)
    psi0[0] = (alpha, beta)
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    return kernels.walk_measures(psi0, h, steps)
