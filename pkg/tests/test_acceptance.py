"""The thirteen acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed in the terminal
summary (see conftest.py) and by ``python tests/test_acceptance.py``.
Tolerances are the stated ones. Nothing here is marked xfail.
"""

import time
from fractions import Fraction

import numpy as np

from qwperiod.cli import main as cli_main
from qwperiod.exact import DyadicRational
from qwperiod.measures import period_average, time_averaged_series, tv_distance_to_uniform
from qwperiod.parity import b_matrix, periodicity_obstruction, verify_path_symmetry
from qwperiod.period import (
    ClassicalWalkSpec,
    char_poly,
    char_poly_numeric_check,
    classical_period,
    classify_all,
    period_brute_force,
    period_spectral,
)
from qwperiod.poly import format_poly, poly_div_exact
from qwperiod.pqrs import SYMBOLS, combo_from_words, decompose_block, enumerate_words, format_combo, pqrs_product
from qwperiod.reproduce import PUBLISHED_CHARPOLYS, PUBLISHED_HADAMARD_TABLE, _combo
from qwperiod.walk import WalkState, hadamard_coin, hadamard_walk, measure, trajectory

RESULTS: dict[int, str] = {}

# recorded from the exact trajectory before the threshold was frozen
TV_ORACLE = {3: (0.004482, 1.6958e-4), 5: (0.008072, 2.7952e-4), 7: (0.008060, 7.4193e-4)}
TV_THRESHOLD = 0.05


def record(n: int, ok: bool, detail: str):
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    assert ok, detail


def test_criterion_01_classification():
    t = time.perf_counter()
    code = cli_main(["period", "--max-n", "64", "--all", "--format", "json"])
    rows = classify_all(64)
    elapsed = time.perf_counter() - t
    finite = {r.N: r.period for r in rows if r.is_finite}
    infinite = sorted(r.N for r in rows if r.verdict == "infinite")
    ok = code == 0 and finite == {2: 2, 4: 8, 8: 24} and infinite == [n for n in range(2, 65) if n not in finite]
    record(1, ok and elapsed < 300, f"finite {finite}, {len(infinite)} infinite, {elapsed:.1f}s")


def test_criterion_02_charpoly_goldens():
    bad = []
    for N, want in PUBLISHED_CHARPOLYS.items():
        if char_poly(N) != want:
            bad.append(N)
    detail = "all match" if not bad else f"mismatch at N={bad}; computed N=16: {format_poly(char_poly(16))}"
    record(2, not bad, detail)


def test_criterion_03_divisibility():
    pairs = [(6, 3), (10, 5), (12, 3), (20, 5), (32, 16)]
    bad = [p for p in pairs if poly_div_exact(char_poly(p[0]), char_poly(p[1])) is None]
    record(3, not bad, f"{len(pairs) - len(bad)}/{len(pairs)} exact divisions")


def test_criterion_04_cross_oracle():
    bad = []
    for N in range(2, 33):
        spec = period_spectral(N)
        bf = period_brute_force(N, 200)
        if spec.is_finite != bf.is_finite or (spec.is_finite and spec.period != bf.period):
            bad.append(N)
    record(4, not bad, "N <= 32 agree" if not bad else f"disagree at {bad}")


def test_criterion_05_pqrs():
    coin = hadamard_coin()
    bad = []
    for N in (3, 4, 5):
        op = hadamard_walk(N)
        power = op.matrix
        for n in range(1, 13):
            for k in range(1, N + 1):
                for l in range(1, N + 1):
                    via_words = combo_from_words(enumerate_words(N, n, k, l), coin)
                    via_decomp = decompose_block(N, n, k, l, coin)
                    if not (via_words == via_decomp and via_words.to_matrix(coin) == power.block(k - 1, l - 1)):
                        bad.append((N, n, k, l))
            power = power @ op.matrix
    table_hits = sum(
        pqrs_product(x, y, coin) == (coin.a * sign, sym)
        for x in SYMBOLS
        for y, (sign, sym) in zip(SYMBOLS, PUBLISHED_HADAMARD_TABLE[x])
    )
    cubed = decompose_block(3, 3, 1, 2) == _combo(2, 1, 0, 1, 1)
    fourth = decompose_block(3, 4, 1, 2)
    fourth_ok = fourth == _combo(3, 1, 0, 1, -1)
    ok = not bad and table_hits == 16 and cubed and fourth_ok
    detail = f"{len(bad)} block mismatches, table {table_hits}/16, U_3^3(1,2) {'ok' if cubed else 'bad'}"
    if not fourth_ok:
        detail += f", U_3^4(1,2) printed (1/√2)^3 (P + R - S) but computed {format_combo(fourth)}"
    record(5, ok, detail)


def test_criterion_06_path_counts():
    golden = [len(enumerate_words(3, n, 1, 2)) for n in (2, 3, 4)]
    bad = []
    for N in range(3, 10):
        for n in range(1, 13):
            b = b_matrix(N, n)
            for k in range(1, N + 1):
                for l in range(1, N + 1):
                    if len(enumerate_words(N, n, k, l)) % 2 != b[k - 1, l - 1]:
                        bad.append((N, n, k, l))
    record(6, golden == [1, 3, 5] and not bad, f"w(3,n;(1,2)) = {golden}, {len(bad)} parity mismatches")


def test_criterion_07_parity_obstruction():
    t = time.perf_counter()
    reps = [periodicity_obstruction(N) for N in range(3, 200, 2)]
    elapsed = time.perf_counter() - t
    ok = all(r.injective and not r.zero_reached for r in reps)
    record(7, ok and elapsed < 10, f"{len(reps)} odd N, zero never reached, {elapsed:.2f}s")


def test_criterion_08_path_symmetry():
    bad = [N for N in range(3, 16) if not verify_path_symmetry(N, 30).ok]
    record(8, not bad, "N 3..15, n <= 30" if not bad else f"fails at {bad}")


def test_criterion_09_unitarity():
    bad_u = [N for N in range(2, 33) if not (hadamard_walk(N).matrix.H @ hadamard_walk(N).matrix).is_identity()]
    bad_m = []
    one = DyadicRational(1)
    for N in range(2, 17):
        for s in trajectory(hadamard_walk(N), WalkState.localized(N), 200):
            if sum(measure(s), DyadicRational(0)) != one:
                bad_m.append(N)
                break
    record(9, not bad_u and not bad_m, "unitary N <= 32, normalised to n=200 for N <= 16")


def test_criterion_10_corollary():
    bad = []
    for N, T in ((2, 2), (4, 8), (8, 24)):
        st = WalkState.localized(N)
        base = period_average(N, st)
        series = time_averaged_series(N, st, [m * T for m in range(1, 11)])
        bad += [(N, h) for h, s in series.items() if s.values != base.values]
    record(10, not bad, "m*T_N for m <= 10 equal the period average")


def test_criterion_11_numeric():
    worst = max(char_poly_numeric_check(N) for N in range(2, 17))
    record(11, worst < 1e-9, f"max deviation {worst:.2e}")


def test_criterion_12_uniformity_trend():
    parts, ok = [], True
    for N in (3, 5, 7):
        ser = time_averaged_series(N, WalkState.localized(N), [100, 2000])
        tv100, tv2000 = (float(tv_distance_to_uniform(ser[h])) for h in (100, 2000))
        ok &= tv2000 < tv100 and tv2000 < TV_THRESHOLD
        ok &= abs(tv100 - TV_ORACLE[N][0]) < 1e-5 and abs(tv2000 - TV_ORACLE[N][1]) < 1e-7
        parts.append(f"N={N}: {tv100:.3g} -> {tv2000:.3g}")
    record(12, ok, "; ".join(parts))


def test_criterion_13_classical():
    bad = []
    for N in range(2, 17):
        for p in (Fraction(0), Fraction(1)):
            r = classical_period(ClassicalWalkSpec(N, p))
            if not (r.is_finite and r.period == N):
                bad.append((N, p))
        if classical_period(ClassicalWalkSpec(N, Fraction(1, 2))).verdict != "infinite":
            bad.append((N, Fraction(1, 2)))
    detail = "N 2..16" if not bad else f"fails at {[(n, str(p)) for n, p in bad]} (on C_2 both steps reach the same vertex)"
    record(13, not bad, detail)


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
