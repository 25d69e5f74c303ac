"""Polynomials with dyadic-rational coefficients and cyclotomic stripping."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm

import numpy as np

from . import kernels
from .exact import DyadicRational


class NonMonicInput(ValueError):
    pass


class IntPolynomial:
    """Polynomial sum(coeffs[j] * x**j) / 2**exponent with integer ``coeffs``.

    The name follows the common case: cyclotomics and scaled characteristic
    polynomials are integral, and every other coefficient the walk produces
    has a power-of-two denominator.
    """

    __slots__ = ("coeffs", "exponent")

    def __init__(self, coeffs, exponent: int = 0):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        e = int(exponent)
        if not cs:
            e = 0
        while e > 0 and all(c % 2 == 0 for c in cs):
            cs = [c // 2 for c in cs]
            e -= 1
        while e < 0:
            cs = [2 * c for c in cs]
            e += 1
        self.coeffs = tuple(cs)
        self.exponent = e

    @classmethod
    def from_fractions(cls, coeffs) -> "IntPolynomial":
        fr = [Fraction(c) for c in coeffs]
        den = lcm(1, *(f.denominator for f in fr))
        e = den.bit_length() - 1
        if den != 1 << e:
            raise ValueError("coefficients are not dyadic rationals")
        return cls([f.numerator * (den // f.denominator) for f in fr], e)

    @classmethod
    def from_dyadics(cls, coeffs) -> "IntPolynomial":
        return cls.from_fractions([c.to_fraction() for c in coeffs])

    @classmethod
    def x_power_minus_one(cls, n: int) -> "IntPolynomial":
        return cls([-1] + [0] * (n - 1) + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, j: int) -> Fraction:
        if j < 0 or j > self.degree:
            return Fraction(0)
        return Fraction(self.coeffs[j], 1 << self.exponent)

    def dyadic_coefficients(self) -> list[DyadicRational]:
        return [DyadicRational(c, self.exponent) for c in self.coeffs]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1 << self.exponent

    def is_one(self) -> bool:
        return self.coeffs == (1,) and self.exponent == 0

    def is_integral(self) -> bool:
        return self.exponent == 0

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs and self.exponent == other.exponent

    def __hash__(self):
        return hash((self.coeffs, self.exponent))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out, self.exponent + other.exponent)

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        e = max(self.exponent, other.exponent)
        a = [c << (e - self.exponent) for c in self.coeffs]
        b = [c << (e - other.exponent) for c in other.coeffs]
        n = max(len(a), len(b))
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        return IntPolynomial([x + y for x, y in zip(a, b)], e)

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs], self.exponent)

    def __sub__(self, other):
        return self + (-other)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if isinstance(x, (int, Fraction)):
            return Fraction(acc, 1 << self.exponent)
        return acc / (1 << self.exponent)

    def eval_complex_exact(self, z: complex) -> complex:
        """Evaluate at a float complex point with exact rational arithmetic."""
        xr, xi = Fraction(z.real), Fraction(z.imag)
        ar, ai = Fraction(0), Fraction(0)
        for c in reversed(self.coeffs):
            ar, ai = ar * xr - ai * xi + c, ar * xi + ai * xr
        scale = 1 << self.exponent
        return complex(float(ar / scale), float(ai / scale))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)}, exponent={self.exponent})"

    def __str__(self):
        return format_poly(self)

    def to_json(self) -> list[dict]:
        out = []
        for j in range(self.degree, -1, -1):
            c = DyadicRational(self.coeffs[j], self.exponent)
            if c.numerator:
                out.append({"degree": j, **c.to_json()})
        return out

    @classmethod
    def from_json(cls, items) -> "IntPolynomial":
        deg = max((int(t["degree"]) for t in items), default=-1)
        fr = [Fraction(0)] * (deg + 1)
        for t in items:
            fr[int(t["degree"])] = Fraction(int(t["numerator"]), 1 << int(t["exponent"]))
        return cls.from_fractions(fr)


def format_poly(p: IntPolynomial, var: str = "λ") -> str:
    """Render as e.g. ``λ^4 - 1/2*λ^2 + 1``."""
    if not p.coeffs:
        return "0"
    terms = []
    for j in range(p.degree, -1, -1):
        c = p.coefficient(j)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_div_exact(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial | None:
    """p / q when the division leaves no remainder, else None. ``q`` monic."""
    if not q.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    if not q.is_monic():
        raise NonMonicInput("divisor must be monic")
    if not p.coeffs:
        return IntPolynomial([])
    if q.exponent:
        return _poly_div_fraction(p, q)
    dq = q.degree
    if p.degree < dq:
        return None
    rem = list(p.coeffs)
    quot = [0] * (p.degree - dq + 1)
    qc = q.coeffs
    for i in range(p.degree, dq - 1, -1):
        t = rem[i]
        if t:
            quot[i - dq] = t
            base = i - dq
            for j in range(dq + 1):
                rem[base + j] -= t * qc[j]
    if any(rem[:dq]):
        return None
    return IntPolynomial(quot, p.exponent)


def _poly_div_fraction(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial | None:
    rem = [p.coefficient(j) for j in range(p.degree + 1)]
    qc = [q.coefficient(j) for j in range(q.degree + 1)]
    dq = q.degree
    if p.degree < dq:
        return None
    quot = [Fraction(0)] * (p.degree - dq + 1)
    for i in range(p.degree, dq - 1, -1):
        t = rem[i]
        if t:
            quot[i - dq] = t
            for j in range(dq + 1):
                rem[i - dq + j] -= t * qc[j]
    if any(rem[:dq]):
        return None
    return IntPolynomial.from_fractions(quot)


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    result = n
    for prime in _factorize(n):
        result -= result // prime
    return result


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by exact division of x**n - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    p = IntPolynomial.x_power_minus_one(n)
    for d in divisors(n)[:-1]:
        p = poly_div_exact(p, cyclotomic(d))
        assert p is not None
    return p


@lru_cache(maxsize=None)
def _candidates(max_degree: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, 2 * max_degree * max_degree + 1) if euler_phi(d) <= max_degree)


def candidate_cyclotomic_indices(max_degree: int) -> list[int]:
    """All d with phi(d) <= max_degree.

    phi(d) >= sqrt(d/2) bounds the scan at d <= 2*max_degree**2.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be positive")
    return list(_candidates(max_degree))


@dataclass
class CyclotomicFactorization:
    factors: list[tuple[int, int]] = field(default_factory=list)
    remainder: IntPolynomial = field(default_factory=lambda: IntPolynomial([1]))

    @property
    def is_complete(self) -> bool:
        return self.remainder.is_one()

    @property
    def indices(self) -> list[int]:
        return [d for d, _ in self.factors]

    def product(self) -> IntPolynomial:
        out = self.remainder
        for d, mult in self.factors:
            out = out * cyclotomic(d) ** mult
        return out

    def describe(self) -> str:
        parts = [f"F{d}" + (f"^{m}" if m > 1 else "") for d, m in self.factors]
        if not self.is_complete:
            parts.append(f"({format_poly(self.remainder)})")
        return " ".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {
            "factors": [{"d": d, "mult": m} for d, m in self.factors],
            "remainder": self.remainder.to_json(),
        }


# 31-bit prime; residues multiply inside int64
_FILTER_PRIME = 2147483629


def _residues(p: IntPolynomial, prime: int) -> np.ndarray:
    inv = pow(1 << p.exponent, -1, prime)
    return np.array([c % prime * inv % prime for c in p.coeffs], dtype=np.int64)


def strip_cyclotomic_factors(p: IntPolynomial) -> CyclotomicFactorization:
    """Divide out every cyclotomic factor of a monic polynomial.

    A modular divisibility test (compiled kernel) screens each candidate
    before the exact integer division confirms it.
    """
    if not p.is_monic():
        raise NonMonicInput("polynomial must be monic")
    rest = p
    found: list[tuple[int, int]] = []
    if rest.degree < 1:
        return CyclotomicFactorization(found, rest)
    for d in candidate_cyclotomic_indices(rest.degree):
        phi = cyclotomic(d)
        mult = 0
        while rest.degree >= phi.degree:
            if not kernels.monic_divides_mod(_residues(rest, _FILTER_PRIME), np.array(phi.coeffs, dtype=np.int64), _FILTER_PRIME):
                break
            q = poly_div_exact(rest, phi)
            if q is None:
                break
            rest, mult = q, mult + 1
        if mult:
            found.append((d, mult))
        if rest.degree < 1:
            break
    return CyclotomicFactorization(found, rest)

