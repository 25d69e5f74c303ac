"""Golden checks against the published values, runnable one by one."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .exact import INV_SQRT2, ExactScalar
from .parity import adjacency_power, b_matrix, periodicity_obstruction
from .period import ClassicalWalkSpec, char_poly, classical_period, classify_all, period_brute_force, period_spectral
from .poly import IntPolynomial, candidate_cyclotomic_indices, cyclotomic, euler_phi, strip_cyclotomic_factors
from .pqrs import SYMBOLS, PqrsCombo, decompose_block, format_combo, path_count, pqrs_product
from .walk import WalkState, evolve, hadamard_coin, hadamard_walk

G = IntPolynomial.from_fractions([1, 0, Fraction(-1, 2), 0, 1])
G2 = IntPolynomial.from_fractions([1, 0, Fraction(-3, 2), 0, 1])


def F(d: int) -> IntPolynomial:
    return cyclotomic(d)


def product_of(*factors: tuple[IntPolynomial, int]) -> IntPolynomial:
    out = IntPolynomial([1])
    for p, m in factors:
        out = out * p**m
    return out


# published factorisations of det(λI - U_N)
PUBLISHED_CHARPOLYS = {
    2: product_of((F(1), 2), (F(2), 2)),
    3: product_of((F(1), 1), (F(2), 1), (G, 1)),
    4: product_of((F(1), 2), (F(2), 2), (F(8), 1)),
    8: product_of((F(1), 2), (F(2), 2), (F(8), 1), (F(12), 2)),
    16: product_of((F(1), 2), (F(2), 2), (F(8), 1), (F(12), 2), (G, 2), (G2, 2)),
}

PUBLISHED_PERIODS = {2: 2, 4: 8, 8: 24}

# Hadamard product table as printed: entry = sign/√2 times symbol
PUBLISHED_HADAMARD_TABLE = {
    "P": [(1, "P"), (1, "R"), (1, "R"), (1, "P")],
    "Q": [(1, "S"), (-1, "Q"), (1, "Q"), (-1, "S")],
    "R": [(1, "P"), (-1, "R"), (1, "R"), (-1, "P")],
    "S": [(1, "S"), (1, "Q"), (1, "Q"), (1, "S")],
}


@dataclass
class Check:
    id: str
    description: str
    run: Callable[[], tuple[bool, str]]


def _combo(m: int, p: int, q: int, r: int, s: int) -> PqrsCombo:
    """(1/√2)^m (pP + qQ + rR + sS)."""
    unit = ExactScalar(1, 0, 0, 0, m)
    return PqrsCombo(*(unit * v for v in (p, q, r, s)))


def _cyclo():
    ok = (
        F(1) == IntPolynomial([-1, 1])
        and F(5) == IntPolynomial([1, 1, 1, 1, 1])
        and F(8) == IntPolynomial([1, 0, 0, 0, 1])
        and F(10) == IntPolynomial([1, -1, 1, -1, 1])
        and F(12) == IntPolynomial([1, 0, -1, 0, 1])
    )
    return ok, "F1, F5, F8, F10, F12"


def _degree4():
    deg4 = [d for d in candidate_cyclotomic_indices(4) if euler_phi(d) == 4]
    return deg4 == [5, 8, 10, 12], f"degree-4 cyclotomic indices {deg4}"


def _charpoly(N):
    def run():
        got = char_poly(N)
        return got == PUBLISHED_CHARPOLYS[N], str(got)

    return run


def _g_not_cyclotomic():
    fac = strip_cyclotomic_factors(G)
    return not fac.factors and fac.remainder == G, fac.describe()


def _spectral(N):
    def run():
        res = period_spectral(N)
        want = PUBLISHED_PERIODS.get(N)
        if want is None:
            return res.verdict == "infinite", res.summary()
        return res.period == want, res.summary()

    return run


def _brute(N):
    def run():
        res = period_brute_force(N, 100)
        want = PUBLISHED_PERIODS.get(N)
        if want is None:
            return res.verdict == "unknown", res.summary()
        return res.period == want, res.summary()

    return run


def _classification():
    rows = classify_all(16)
    finite = {r.N: r.period for r in rows if r.is_finite}
    return finite == PUBLISHED_PERIODS, f"finite rows {finite}"


def _table():
    coin = hadamard_coin()
    bad = []
    for x in SYMBOLS:
        for y, (sign, sym) in zip(SYMBOLS, PUBLISHED_HADAMARD_TABLE[x]):
            s, got = pqrs_product(x, y, coin)
            if got != sym or s != INV_SQRT2 * sign:
                bad.append(x + y)
    return not bad, "16 entries" if not bad else f"mismatch {bad}"


def _u3(n, want):
    def run():
        got = decompose_block(3, n, 1, 2)
        return got == want, f"computed {format_combo(got)}, printed {format_combo(want)}"

    return run


def _paths():
    got = [path_count(3, n, 1, 2) for n in (2, 3, 4)]
    return got == [1, 3, 5], f"w(3,n;(1,2)) for n=2,3,4: {got}"


def _a3():
    sq = adjacency_power(3, 2).astype(np.int64)
    cu = adjacency_power(3, 3).astype(np.int64)
    ok = np.array_equal(sq, [[2, 1, 1], [1, 2, 1], [1, 1, 2]]) and np.array_equal(cu, [[2, 3, 3], [3, 2, 3], [3, 3, 2]])
    return ok, "(A_3)^2 and (A_3)^3"


def _b3():
    want = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    ok = all(np.array_equal(b_matrix(3, n), want) for n in range(1, 51))
    return ok, "B_3^(n) for n <= 50"


def _b5():
    b = b_matrix(5, 1)
    want = np.array([[0, 1, 0, 0, 1], [1, 0, 1, 0, 0], [0, 1, 0, 1, 0], [0, 0, 1, 0, 1], [1, 0, 0, 1, 0]])
    return np.array_equal(b, want), "B_5^(1)"


def _parity5():
    rep = periodicity_obstruction(5)
    return not rep.zero_reached and rep.injective, f"orbit length {rep.orbit_length}"


def _evolve4():
    st = WalkState.localized(4)
    return evolve(hadamard_walk(4), st, 8) == st, "Psi_8 = Psi_0 on C_4"


def _power8():
    from .walk import matrix_power

    return matrix_power(hadamard_walk(8), 24).is_identity(), "(U_8)^24 = I_16"


def _classical():
    got = [classical_period(ClassicalWalkSpec(7, p)).summary() for p in (0, 1, Fraction(1, 2))]
    return got == ["Finite T=7", "Finite T=7", "Infinite"], ", ".join(got)


def _hadamard():
    h = hadamard_coin()
    m = h.matrix
    return h.a == h.b == h.c == INV_SQRT2 and h.d == -INV_SQRT2 and (m @ m).is_identity() and h.is_unitary(), "H = [[1,1],[1,-1]]/√2"


CHECKS = [
    Check("coin-hadamard", "Hadamard coin entries and H^2 = I", _hadamard),
    Check("cyclotomics", "F1, F5, F8, F10, F12 as printed", _cyclo),
    Check("cyclotomic-degree-4", "exactly four cyclotomics of degree 4", _degree4),
    *(Check(f"charpoly-{N}", f"det(λI - U_{N}) factorisation", _charpoly(N)) for N in (2, 3, 4, 8, 16)),
    Check("g-not-cyclotomic", "λ^4 - λ^2/2 + 1 has no cyclotomic factor", _g_not_cyclotomic),
    *(Check(f"spectral-{N}", f"spectral verdict for N={N}", _spectral(N)) for N in (2, 3, 4, 6, 8)),
    *(Check(f"brute-{N}", f"brute-force period for N={N} (cap 100)", _brute(N)) for N in (2, 3, 8)),
    Check("classification-16", "finite periods only at N = 2, 4, 8 for N <= 16", _classification),
    Check("evolve-4", "state returns after 8 steps on C_4", _evolve4),
    Check("power-8", "(U_8)^24 is the identity", _power8),
    Check("pqrs-table", "Hadamard PQRS product table", _table),
    Check("pqrs-u3-cubed", "(U_3)^3(1,2) = (1/√2)^2 (P + R + S)", _u3(3, _combo(2, 1, 0, 1, 1))),
    Check("pqrs-u3-fourth", "(U_3)^4(1,2) = (1/√2)^3 (P + R - S)", _u3(4, _combo(3, 1, 0, 1, -1))),
    Check("path-counts", "w(3,2)=1, w(3,3)=3, w(3,4)=5", _paths),
    Check("adjacency-3", "(A_3)^2 and (A_3)^3 displays", _a3),
    Check("b-matrix-3", "B_3^(n) constant", _b3),
    Check("b-matrix-5", "B_5^(1) display", _b5),
    Check("parity-5", "N=5 parity orbit avoids zero", _parity5),
    Check("classical-7", "classical walk periods on C_7", _classical),
]

CHECK_IDS = [c.id for c in CHECKS]


def run_checks(ids: list[str] | None = None) -> list[tuple[Check, bool, str]]:
    selected = CHECKS if not ids else [c for c in CHECKS if c.id in ids]
    unknown = set(ids or []) - set(CHECK_IDS)
    if unknown:
        raise KeyError(f"unknown check id(s): {', '.join(sorted(unknown))}")
    out = []
    for c in selected:
        try:
            ok, detail = c.run()
        except Exception as exc:  # report, don't abort the run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((c, ok, detail))
    return out
