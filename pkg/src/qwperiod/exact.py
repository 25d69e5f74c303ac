"""Exact arithmetic for Hadamard-walk amplitudes.

Scalars live in the ring Z[sqrt2, i] localised at sqrt2: every value is
``(a + b*sqrt2 + i*(c + d*sqrt2)) / sqrt2**k`` with integer a, b, c, d and
k >= 0.  Matrices share a single exponent across all entries and keep the
four integer components as numpy object arrays so Python ints never overflow.
"""

from __future__ import annotations

from fractions import Fraction
from math import sqrt

import numpy as np

SQRT2 = sqrt(2.0)


class ExactArithmeticError(ArithmeticError):
    pass


class NonDyadicNorm(ExactArithmeticError):
    """|x|^2 has a nonzero sqrt2 component."""


class InexactDivision(ExactArithmeticError):
    pass


def _canon(a: int, b: int, c: int, d: int, k: int):
    if a == 0 and b == 0 and c == 0 and d == 0:
        return 0, 0, 0, 0, 0
    # numerator / sqrt2 = b + (a/2) sqrt2 + i (d + (c/2) sqrt2)
    while k > 0 and a % 2 == 0 and c % 2 == 0:
        a, b, c, d, k = b, a // 2, d, c // 2, k - 1
    return a, b, c, d, k


def _raise_to(a: int, b: int, c: int, d: int, k: int, target: int):
    # multiplying the numerator by sqrt2 maps (a, b, c, d) -> (2b, a, 2d, c)
    for _ in range(target - k):
        a, b, c, d = 2 * b, a, 2 * d, c
    return a, b, c, d


class ExactScalar:
    """Immutable element of Z[sqrt2, i][1/sqrt2] in canonical form."""

    __slots__ = ("a", "b", "c", "d", "k")

    def __init__(self, a: int = 0, b: int = 0, c: int = 0, d: int = 0, k: int = 0):
        if k < 0:
            raise ValueError("exponent k must be non-negative")
        a, b, c, d, k = _canon(int(a), int(b), int(c), int(d), int(k))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "k", k)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, np.integer)):
            return cls(int(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactScalar")

    def components(self) -> tuple[int, int, int, int, int]:
        return self.a, self.b, self.c, self.d, self.k

    def at_exponent(self, k: int) -> tuple[int, int, int, int]:
        """Numerator components when written over sqrt2**k (k >= self.k)."""
        if k < self.k:
            raise ValueError("cannot lower exponent below canonical")
        return _raise_to(self.a, self.b, self.c, self.d, self.k, k)

    # ring operations

    def __add__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        k = max(self.k, other.k)
        x = self.at_exponent(k)
        y = other.at_exponent(k)
        return ExactScalar(x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3], k)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a, -self.b, -self.c, -self.d, self.k)

    def __sub__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            y = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        x = self
        # (X1 + i Y1)(X2 + i Y2) with X = a + b sqrt2, Y = c + d sqrt2
        re_a = x.a * y.a + 2 * x.b * y.b - x.c * y.c - 2 * x.d * y.d
        re_b = x.a * y.b + x.b * y.a - x.c * y.d - x.d * y.c
        im_a = x.a * y.c + 2 * x.b * y.d + x.c * y.a + 2 * x.d * y.b
        im_b = x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a
        return ExactScalar(re_a, re_b, im_a, im_b, x.k + y.k)

    __rmul__ = __mul__

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.a, self.b, -self.c, -self.d, self.k)

    def div_int(self, m: int) -> "ExactScalar":
        """Exact division by a nonzero integer; raises InexactDivision otherwise."""
        if m == 0:
            raise ZeroDivisionError("division by zero")
        if self.is_zero():
            return self
        a, b, c, d, k = self.components()
        if m < 0:
            a, b, c, d, m = -a, -b, -c, -d, -m
        while m % 2 == 0:
            m //= 2
            k += 2
        if any(v % m for v in (a, b, c, d)):
            raise InexactDivision(f"{self} is not divisible by {m}")
        return ExactScalar(a // m, b // m, c // m, d // m, k)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        """True when the value is a (dyadic) rational number."""
        if self.c or self.d:
            return False
        return (self.b == 0) if self.k % 2 == 0 else (self.a == 0)

    def to_dyadic(self) -> "DyadicRational":
        if not self.is_rational():
            raise ExactArithmeticError(f"{self} is not rational")
        if self.k % 2 == 0:
            return DyadicRational(self.a, self.k // 2)
        # b sqrt2 / sqrt2**k = b / 2**((k-1)/2)
        return DyadicRational(self.b, (self.k - 1) // 2)

    def norm_sq(self) -> "DyadicRational":
        """|x|^2 as a dyadic rational."""
        a, b, c, d, k = self.components()
        rational = a * a + 2 * b * b + c * c + 2 * d * d
        irrational = 2 * (a * b + c * d)
        val = ExactScalar(rational, irrational, 0, 0, 2 * k)
        if not val.is_rational():
            raise NonDyadicNorm(f"|{self}|^2 has a sqrt2 component")
        return val.to_dyadic()

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = ExactScalar(int(other))
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.components() == other.components()

    def __hash__(self):
        return hash(self.components())

    def __complex__(self):
        scale = SQRT2 ** (-self.k)
        return complex((self.a + self.b * SQRT2) * scale, (self.c + self.d * SQRT2) * scale)

    def __float__(self):
        if self.c or self.d:
            raise TypeError("complex value has no float conversion")
        return complex(self).real

    def __repr__(self):
        return f"ExactScalar({self.a}, {self.b}, {self.c}, {self.d}, k={self.k})"

    def __str__(self):
        body = f"({self.a} + {self.b}√2 + ({self.c} + {self.d}√2)i)"
        return body if self.k == 0 else f"{body}/√2^{self.k}"

    def to_json(self) -> dict:
        return {n: str(v) for n, v in zip("abcdk", self.components())}

    @classmethod
    def from_json(cls, obj: dict) -> "ExactScalar":
        return cls(*(int(obj[n]) for n in "abcdk"))


ZERO = ExactScalar()
ONE = ExactScalar(1)
I = ExactScalar(0, 0, 1)
INV_SQRT2 = ExactScalar(1, 0, 0, 0, 1)


class DyadicRational:
    """numerator / 2**exponent, canonical (odd numerator or exponent 0)."""

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int, exponent: int = 0):
        numerator, exponent = int(numerator), int(exponent)
        if numerator == 0:
            exponent = 0
        while exponent < 0:
            numerator, exponent = numerator * 2, exponent + 1
        while exponent > 0 and numerator % 2 == 0:
            numerator, exponent = numerator // 2, exponent - 1
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("DyadicRational is immutable")

    @classmethod
    def from_fraction(cls, q: Fraction) -> "DyadicRational":
        q = Fraction(q)
        den = q.denominator
        e = den.bit_length() - 1
        if den != 1 << e:
            raise ValueError(f"{q} is not dyadic")
        return cls(q.numerator, e)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def _coerce(self, other):
        if isinstance(other, DyadicRational):
            return other
        if isinstance(other, int):
            return DyadicRational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        e = max(self.exponent, other.exponent)
        return DyadicRational(
            (self.numerator << (e - self.exponent)) + (other.numerator << (e - other.exponent)), e
        )

    __radd__ = __add__

    def __neg__(self):
        return DyadicRational(-self.numerator, self.exponent)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return DyadicRational(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, DyadicRational):
            return (self.numerator, self.exponent) == (other.numerator, other.exponent)
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, DyadicRational):
            other = other.to_fraction()
        return self.to_fraction() < other

    def __hash__(self):
        return hash(self.to_fraction())

    def __float__(self):
        return self.numerator / (1 << self.exponent) if self.exponent < 1000 else float(self.to_fraction())

    def __repr__(self):
        return f"DyadicRational({self.numerator}, {self.exponent})"

    def __str__(self):
        return str(self.numerator) if self.exponent == 0 else f"{self.numerator}/2^{self.exponent}"

    def to_json(self) -> dict:
        return {"numerator": str(self.numerator), "exponent": self.exponent}


def _obj_zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def _is_zero(arr) -> bool:
    return arr is None or not np.any(arr != 0)


def _dot(x, y):
    """Integer object-array product that exploits row sparsity of ``x``."""
    if x is None or y is None:
        return None
    nz_rows = [np.flatnonzero(row) for row in x]
    width = max((len(r) for r in nz_rows), default=0)
    if width == 0:
        return None
    if width * 4 > x.shape[1]:
        return x.dot(y)
    out = _obj_zeros((x.shape[0], y.shape[1]))
    for i, cols in enumerate(nz_rows):
        acc = 0
        for j in cols:
            acc = acc + x[i, j] * y[j]
        out[i] = acc
    return out


def _add(x, y, sign=1):
    if x is None:
        return None if y is None else (y if sign == 1 else -y)
    if y is None:
        return x
    return x + y if sign == 1 else x - y


def _scale(x, s: int):
    return None if x is None else x * s


class ExactMatrix:
    """Dense matrix over the exact ring with one shared sqrt2 exponent.

    ``value = (A + B*sqrt2 + i*(C + D*sqrt2)) / sqrt2**k`` where A..D are
    object arrays of Python ints (``None`` stands for an all-zero component).
    """

    __slots__ = ("parts", "k", "shape")

    def __init__(self, parts, k: int = 0, shape=None):
        parts = [None if _is_zero(p) else np.asarray(p, dtype=object) for p in parts]
        if shape is None:
            shape = next(p.shape for p in parts if p is not None)
        self.shape = tuple(shape)
        self.parts, self.k = self._canon(parts, k)

    @staticmethod
    def _canon(parts, k):
        if all(p is None for p in parts):
            return [None] * 4, 0
        while k > 0:
            a, b, c, d = parts
            if (a is not None and np.any(a % 2 != 0)) or (c is not None and np.any(c % 2 != 0)):
                break
            parts = [b, None if a is None else a // 2, d, None if c is None else c // 2]
            parts = [None if _is_zero(p) else p for p in parts]
            k -= 1
        return parts, k

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "ExactMatrix":
        return cls([None] * 4, 0, shape=(n, n if m is None else m))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        eye = _obj_zeros((n, n))
        for i in range(n):
            eye[i, i] = 1
        return cls([eye, None, None, None], 0)

    @classmethod
    def from_scalars(cls, rows) -> "ExactMatrix":
        rows = [[ExactScalar.coerce(x) for x in row] for row in rows]
        n, m = len(rows), len(rows[0])
        k = max(x.k for row in rows for x in row)
        parts = [_obj_zeros((n, m)) for _ in range(4)]
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                for p, v in zip(parts, x.at_exponent(k)):
                    p[i, j] = v
        return cls(parts, k, shape=(n, m))

    def _at(self, k: int):
        parts = list(self.parts)
        for _ in range(k - self.k):
            a, b, c, d = parts
            parts = [_scale(b, 2), a, _scale(d, 2), c]
        return parts

    def __getitem__(self, idx) -> ExactScalar:
        i, j = idx
        vals = [0 if p is None else p[i, j] for p in self.parts]
        return ExactScalar(*vals, self.k)

    def block(self, i: int, j: int, size: int = 2) -> "ExactMatrix":
        """0-based block (i, j) of a matrix partitioned into size x size blocks."""
        sl = (slice(size * i, size * i + size), slice(size * j, size * j + size))
        return ExactMatrix([None if p is None else p[sl] for p in self.parts], self.k, shape=(size, size))

    def to_scalars(self) -> list[list[ExactScalar]]:
        return [[self[i, j] for j in range(self.shape[1])] for i in range(self.shape[0])]

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._addsub(other, 1)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._addsub(other, -1)

    def _addsub(self, other, sign):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        k = max(self.k, other.k)
        x, y = self._at(k), other._at(k)
        return ExactMatrix([_add(p, q, sign) for p, q in zip(x, y)], k, shape=self.shape)

    def __neg__(self):
        return ExactMatrix([None if p is None else -p for p in self.parts], self.k, shape=self.shape)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch")
        a1, b1, c1, d1 = self.parts
        a2, b2, c2, d2 = other.parts

        # (X1 + i Y1)(X2 + i Y2), X = a + b sqrt2, Y = c + d sqrt2
        def zmul(p, q, r, s):
            # (p + q sqrt2)(r + s sqrt2) -> (rational, sqrt2) parts
            rat = _add(_dot(p, r), _scale(_dot(q, s), 2))
            irr = _add(_dot(p, s), _dot(q, r))
            return rat, irr

        xx = zmul(a1, b1, a2, b2)
        yy = zmul(c1, d1, c2, d2)
        xy = zmul(a1, b1, c2, d2)
        yx = zmul(c1, d1, a2, b2)
        parts = [
            _add(xx[0], yy[0], -1),
            _add(xx[1], yy[1], -1),
            _add(xy[0], yx[0]),
            _add(xy[1], yx[1]),
        ]
        return ExactMatrix(parts, self.k + other.k, shape=(self.shape[0], other.shape[1]))

    def scale(self, s) -> "ExactMatrix":
        """Multiply every entry by the scalar ``s``."""
        s = ExactScalar.coerce(s)
        sa, sb, sc, sd = s.a, s.b, s.c, s.d
        a, b, c, d = self.parts

        def lin(*terms):
            out = None
            for coef, arr in terms:
                if coef and arr is not None:
                    out = _add(out, arr * coef)
            return out

        parts = [
            lin((sa, a), (2 * sb, b), (-sc, c), (-2 * sd, d)),
            lin((sb, a), (sa, b), (-sd, c), (-sc, d)),
            lin((sc, a), (2 * sd, b), (sa, c), (2 * sb, d)),
            lin((sd, a), (sc, b), (sb, c), (sa, d)),
        ]
        return ExactMatrix(parts, self.k + s.k, shape=self.shape)

    def conj_transpose(self) -> "ExactMatrix":
        a, b, c, d = self.parts
        t = lambda p, s=1: None if p is None else (p.T * s if s != 1 else p.T.copy())
        return ExactMatrix([t(a), t(b), t(c, -1), t(d, -1)], self.k, shape=self.shape[::-1])

    @property
    def H(self) -> "ExactMatrix":
        return self.conj_transpose()

    def trace(self) -> ExactScalar:
        vals = [0 if p is None else sum(p[i, i] for i in range(min(self.shape))) for p in self.parts]
        return ExactScalar(*vals, self.k)

    def is_real_integer_scaled(self) -> bool:
        """True when only the rational-real component is present."""
        return all(p is None for p in self.parts[1:])

    def integer_form(self):
        """(A, k) with self = A / sqrt2**k; requires is_real_integer_scaled()."""
        if not self.is_real_integer_scaled():
            raise ValueError("matrix has sqrt2 or imaginary components")
        a = self.parts[0]
        return (_obj_zeros(self.shape) if a is None else a), self.k

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape or self.k != other.k:
            return False
        for p, q in zip(self.parts, other.parts):
            if (p is None) != (q is None):
                return False
            if p is not None and np.any(p != q):
                return False
        return True

    __hash__ = None

    def is_identity(self) -> bool:
        n = self.shape[0]
        return self.shape[0] == self.shape[1] and self == ExactMatrix.identity(n)

    def to_complex(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=complex)
        weights = (1.0, SQRT2, 1j, 1j * SQRT2)
        for p, w in zip(self.parts, weights):
            if p is not None:
                out += w * np.array([[float(v) for v in row] for row in p])
        return out * SQRT2 ** (-self.k)

    def __repr__(self):
        return f"ExactMatrix(shape={self.shape}, k={self.k})"
