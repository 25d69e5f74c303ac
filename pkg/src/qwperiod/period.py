"""Period of the walk: brute-force powers versus cyclotomic factorisation."""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Literal

import numpy as np

from . import kernels
from .exact import ExactMatrix, ExactScalar
from .poly import CyclotomicFactorization, IntPolynomial, format_poly, strip_cyclotomic_factors
from .walk import EvolutionOperator, hadamard_walk, powers

DEFAULT_MAX_STEPS = 200


class IrrationalCharPoly(ArithmeticError):
    pass


class InconsistentVerdict(RuntimeError):
    pass


Verdict = Literal["finite", "infinite", "unknown"]


@dataclass
class PeriodResult:
    N: int
    verdict: Verdict
    period: int | None = None
    bound: int | None = None
    method: str = "spectral"
    factorization: CyclotomicFactorization | None = None
    parity_witness: dict | None = None
    checked: list[str] = field(default_factory=list)

    @property
    def is_finite(self) -> bool:
        return self.verdict == "finite"

    def summary(self) -> str:
        if self.verdict == "finite":
            text = f"Finite T={self.period}"
        elif self.verdict == "infinite":
            text = "Infinite"
        else:
            text = f"Unknown up to {self.bound}"
        if self.factorization is not None:
            text += f", factors {self.factorization.describe()}"
        return text

    def to_json(self) -> dict:
        out: dict = {"schema": 1, "N": self.N, "verdict": self.verdict, "method": self.method}
        if self.period is not None:
            out["T"] = self.period
        if self.bound is not None:
            out["bound"] = self.bound
        if self.factorization is not None:
            fj = self.factorization.to_json()
            out["factors"] = fj["factors"]
            if not self.factorization.is_complete:
                out["remainder"] = fj["remainder"]
                out["remainder_text"] = format_poly(self.factorization.remainder)
        if self.parity_witness is not None:
            out["parity"] = self.parity_witness
        if self.checked:
            out["checked"] = list(self.checked)
        return out


def period_brute_force(N: int, max_steps: int = DEFAULT_MAX_STEPS, op: EvolutionOperator | None = None) -> PeriodResult:
    """Least n <= max_steps with U**n = I, found by exact incremental powers."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    op = op or hadamard_walk(N)
    for n, m in powers(op):
        if m.is_identity():
            return PeriodResult(N, "finite", period=n, method="brute-force")
        if n >= max_steps:
            return PeriodResult(N, "unknown", bound=max_steps, method="brute-force")
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# characteristic polynomial


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _primes_below(limit: int, count: int) -> tuple[int, ...]:
    out = []
    n = limit - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 1
    return tuple(out)


def _coefficient_bound(a: np.ndarray) -> int:
    """Bound on |coefficients| of det(xI - A) from Hadamard's inequality."""
    n = a.shape[0]
    row_sq = max(sum(int(v) * int(v) for v in row) for row in a) if n else 0
    rn = math.isqrt(row_sq) + 1
    return max(math.comb(n, j) * rn ** (n - j) for j in range(n + 1))


def integer_charpoly(a: np.ndarray) -> list[int]:
    """Exact det(xI - A) for an integer matrix, lowest degree first.

    Computed modulo enough 31-bit primes to exceed twice the Hadamard
    coefficient bound, then lifted by CRT to the symmetric range.
    """
    n = a.shape[0]
    bound = _coefficient_bound(a)
    primes: list[int] = []
    modulus = 1
    count = 4
    while modulus <= 2 * bound:
        primes = list(_primes_below(2**31, count))
        modulus = math.prod(primes)
        count *= 2
    residues = []
    for p in primes:
        ap = np.array([[int(v) % p for v in row] for row in a], dtype=np.int64).reshape(n, n)
        residues.append(kernels.charpoly_mod(ap, p))
    coeffs = []
    for j in range(n + 1):
        x = 0
        for p, r in zip(primes, residues):
            mp = modulus // p
            x += int(r[j]) * mp * pow(mp, -1, p)
        x %= modulus
        if x > modulus // 2:
            x -= modulus
        coeffs.append(x)
    return coeffs


def _dyadic_coefficients(coeffs: list[ExactScalar]) -> IntPolynomial:
    fr = []
    for j, c in enumerate(coeffs):
        if not c.is_rational():
            raise IrrationalCharPoly(f"coefficient of λ^{j} is {c}")
        fr.append(c.to_dyadic().to_fraction())
    return IntPolynomial.from_fractions(fr)


def charpoly_modular(m: ExactMatrix) -> IntPolynomial:
    """det(λI - M) for M = A / sqrt2**k with A an integer matrix."""
    a, k = m.integer_form()
    n = m.shape[0]
    ints = integer_charpoly(a)
    # det(λI - A/s) = s**-n det(sλ I - A), s = sqrt2**k
    return _dyadic_coefficients([ExactScalar(c, 0, 0, 0, k * (n - j)) for j, c in enumerate(ints)])


def charpoly_leverrier(m: ExactMatrix) -> IntPolynomial:
    """Faddeev-LeVerrier over the exact ring; divisions by k are exact."""
    n = m.shape[0]
    coeffs = [ExactScalar()] * (n + 1)
    coeffs[n] = ExactScalar(1)
    eye = ExactMatrix.identity(n)
    mk = ExactMatrix.zeros(n)
    for k in range(1, n + 1):
        mk = m @ mk + eye.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ mk).trace().div_int(k)
    return _dyadic_coefficients(coeffs)


def char_poly_matrix(m: ExactMatrix, method: str = "auto") -> IntPolynomial:
    if method == "auto":
        method = "modular" if m.is_real_integer_scaled() else "leverrier"
    if method == "modular":
        return charpoly_modular(m)
    if method == "leverrier":
        return charpoly_leverrier(m)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=256)
def char_poly(N: int, method: str = "auto") -> IntPolynomial:
    """det(λ I_2N - U_N) of the Hadamard walk, exactly."""
    return char_poly_matrix(hadamard_walk(N).matrix, method)


def product_formula(N: int, lam: complex) -> complex:
    """prod_k (λ^2 + i sqrt2 sin(2πk/N) λ - 1) in floating point."""
    out = 1 + 0j
    for k in range(N):
        out *= lam * lam + 1j * math.sqrt(2) * math.sin(2 * math.pi * k / N) * lam - 1
    return out


def unit_circle_points(count: int = 16, offset: float = 0.1234) -> list[complex]:
    return [cmath.exp(1j * (2 * math.pi * j / count + offset)) for j in range(count)]


def char_poly_numeric_check(N: int, sample_points=None) -> float:
    """max |charpoly(λ) - product formula(λ)| over the sample points."""
    pts = unit_circle_points() if sample_points is None else list(sample_points)
    p = char_poly(N)
    return max(abs(p.eval_complex_exact(complex(z)) - product_formula(N, complex(z))) for z in pts)


# ---------------------------------------------------------------------------
# verdicts


def period_spectral(N: int) -> PeriodResult:
    fac = strip_cyclotomic_factors(char_poly(N))
    if fac.is_complete:
        return PeriodResult(N, "finite", period=math.lcm(*fac.indices), factorization=fac)
    return PeriodResult(N, "infinite", factorization=fac)


def _classify_one(N: int, max_steps: int) -> PeriodResult:
    from .parity import periodicity_obstruction

    res = period_spectral(N)
    if res.is_finite:
        bf = period_brute_force(N, max(max_steps, res.period))
        if bf.period != res.period:
            raise InconsistentVerdict(f"N={N}: spectral T={res.period}, brute force {bf.summary()}")
        res.checked.append("brute-force")
    elif N % 2 == 1:
        witness = periodicity_obstruction(N)
        if witness.zero_reached:
            raise InconsistentVerdict(f"N={N}: parity obstruction failed")
        res.parity_witness = witness.to_json(max_witnesses=1)
        res.checked.append("parity")
    return res


def classify_all(max_n: int, max_steps: int = DEFAULT_MAX_STEPS, workers: int | None = None) -> list[PeriodResult]:
    """Spectral verdict for N = 2..max_n with the cross-checks applied.

    ``workers`` defaults to the QWPERIOD_WORKERS environment variable (1).
    """
    if max_n < 2:
        raise ValueError("max_n must be >= 2")
    if workers is None:
        workers = int(os.environ.get("QWPERIOD_WORKERS", "1"))
    ns = range(2, max_n + 1)
    if workers <= 1:
        return [_classify_one(N, max_steps) for N in ns]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda N: _classify_one(N, max_steps), ns))


# ---------------------------------------------------------------------------
# classical random walk


@dataclass(frozen=True)
class ClassicalWalkSpec:
    N: int
    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")
        if self.N < 2:
            raise ValueError("N must be >= 2")

    @property
    def q(self) -> Fraction:
        return 1 - self.p

    def eigenvalues(self) -> list[complex]:
        w = float(self.q - self.p)
        return [complex(math.cos(2 * k * math.pi / self.N), w * math.sin(2 * k * math.pi / self.N)) for k in range(self.N)]


def classical_period(spec: ClassicalWalkSpec) -> PeriodResult:
    """Period of the transition matrix of the p/q walk on C_N.

    |λ_k|^2 = 1 - (1 - (q-p)^2) sin^2(2πk/N), so some |λ_k| < 1 unless
    p is 0 or 1 (a rotation, period N) or every sine vanishes (N = 2, where
    both steps reach the other vertex and the period is 2 for any p).
    """
    if spec.p in (0, 1) or spec.N == 2:
        return PeriodResult(spec.N, "finite", period=spec.N, method="classical")
    return PeriodResult(spec.N, "infinite", method="classical")
