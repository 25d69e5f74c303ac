"""P, Q, R, S word algebra for the blocks of U_N**n.

P and Q are the upper and lower rows of the coin; R and S are the same rows
placed in the other position.  Products of these four matrices are always a
scalar times one of them, which turns a block of U_N**n (a sum over P/Q
words) into four scalar coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .exact import ONE, ZERO, ExactMatrix, ExactScalar
from .walk import Coin, InvalidN, build_evolution, hadamard_coin, matrix_power

SYMBOLS = ("P", "Q", "R", "S")
DEFAULT_WORD_CAP = 20


class BudgetExceeded(RuntimeError):
    pass


class IndexOutOfRange(IndexError):
    pass


def symbol_matrix(sym: str, coin: Coin) -> ExactMatrix:
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    rows = {
        "P": [[a, b], [ZERO, ZERO]],
        "Q": [[ZERO, ZERO], [c, d]],
        "R": [[c, d], [ZERO, ZERO]],
        "S": [[ZERO, ZERO], [a, b]],
    }[sym]
    return ExactMatrix.from_scalars(rows)


# (row symbol, column symbol) -> (coin entry name, result symbol)
_TABLE = {
    ("P", "P"): ("a", "P"), ("P", "Q"): ("b", "R"), ("P", "R"): ("a", "R"), ("P", "S"): ("b", "P"),
    ("Q", "P"): ("c", "S"), ("Q", "Q"): ("d", "Q"), ("Q", "R"): ("c", "Q"), ("Q", "S"): ("d", "S"),
    ("R", "P"): ("c", "P"), ("R", "Q"): ("d", "R"), ("R", "R"): ("c", "R"), ("R", "S"): ("d", "P"),
    ("S", "P"): ("a", "S"), ("S", "Q"): ("b", "Q"), ("S", "R"): ("a", "Q"), ("S", "S"): ("b", "S"),
}  # fmt: skip


def pqrs_product(x: str, y: str, coin: Coin | None = None) -> tuple[ExactScalar, str]:
    """x * y = scalar * symbol, e.g. P*Q = b R."""
    coin = coin or hadamard_coin()
    entry, sym = _TABLE[(x, y)]
    return getattr(coin, entry), sym


def reduce_word(word: str, coin: Coin | None = None) -> tuple[ExactScalar, str]:
    if not word:
        raise ValueError("empty word")
    if any(ch not in "PQ" for ch in word):
        raise ValueError(f"words are built from P and Q, got {word!r}")
    coin = coin or hadamard_coin()
    scalar, sym = ONE, word[0]
    for ch in word[1:]:
        s, sym = pqrs_product(sym, ch, coin)
        scalar = scalar * s
    return scalar, sym


@dataclass(frozen=True)
class PqrsCombo:
    cP: ExactScalar = ZERO
    cQ: ExactScalar = ZERO
    cR: ExactScalar = ZERO
    cS: ExactScalar = ZERO

    def coefficients(self) -> tuple[ExactScalar, ...]:
        return self.cP, self.cQ, self.cR, self.cS

    def __add__(self, other: "PqrsCombo") -> "PqrsCombo":
        return PqrsCombo(*(x + y for x, y in zip(self.coefficients(), other.coefficients())))

    @classmethod
    def single(cls, scalar: ExactScalar, sym: str) -> "PqrsCombo":
        coeffs = [ZERO] * 4
        coeffs[SYMBOLS.index(sym)] = scalar
        return cls(*coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients())

    def to_matrix(self, coin: Coin | None = None) -> ExactMatrix:
        coin = coin or hadamard_coin()
        out = ExactMatrix.zeros(2)
        for c, sym in zip(self.coefficients(), SYMBOLS):
            if not c.is_zero():
                out = out + symbol_matrix(sym, coin).scale(c)
        return out

    def __str__(self) -> str:
        return format_combo(self)


def format_combo(combo: PqrsCombo) -> str:
    """``(1/√2)^m (αP + βQ + γR + δS)`` with integer α..δ when possible."""
    coeffs = combo.coefficients()
    m = max(c.k for c in coeffs)
    nums = [c.at_exponent(m) for c in coeffs]
    if all(b == 0 and cc == 0 and d == 0 for _, b, cc, d in nums):
        ints = [a for a, *_ in nums]
        terms = [(v, s) for v, s in zip(ints, SYMBOLS) if v]
        if not terms:
            return "0"
        body = ""
        for i, (v, s) in enumerate(terms):
            mag = "" if abs(v) == 1 else str(abs(v))
            if i == 0:
                body += ("-" if v < 0 else "") + mag + s
            else:
                body += (" - " if v < 0 else " + ") + mag + s
        return body if m == 0 else f"(1/√2)^{m} ({body})"
    return " + ".join(f"({c}){s}" for c, s in zip(coeffs, SYMBOLS) if not c.is_zero()) or "0"


def _check_block_args(N: int, n: int, k: int, l: int):
    if N < 3:
        raise InvalidN("PQRS decomposition needs N >= 3")
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (1 <= k <= N and 1 <= l <= N):
        raise IndexOutOfRange(f"block ({k},{l}) outside 1..{N}")


def decompose_matrix(block: ExactMatrix, coin: Coin | None = None) -> PqrsCombo:
    """Expand a 2x2 matrix in the P, Q, R, S basis via tr(X* B)."""
    coin = coin or hadamard_coin()
    coeffs = []
    for sym in SYMBOLS:
        x = symbol_matrix(sym, coin)
        if (x.H @ x).trace() != ONE:
            raise ValueError("coin is not unitary; basis is not orthonormal")
        coeffs.append((x.H @ block).trace())
    return PqrsCombo(*coeffs)


def decompose_block(N: int, n: int, k: int, l: int, coin: Coin | None = None) -> PqrsCombo:
    """Block (k, l) of U_N**n (1-based) in the P, Q, R, S basis."""
    _check_block_args(N, n, k, l)
    coin = coin or hadamard_coin()
    power = matrix_power(build_evolution(coin, N), n)
    return decompose_matrix(power.block(k - 1, l - 1), coin)


def enumerate_words(N: int, n: int, k: int, l: int, cap: int = DEFAULT_WORD_CAP) -> list[str]:
    """All P/Q words of length n contributing to block (k, l) of U_N**n.

    Letters read left to right in matrix-product order; P steps the block
    column index up by one, Q steps it down, starting from row k.
    """
    _check_block_args(N, n, k, l)
    if n > cap:
        raise BudgetExceeded(f"2**{n} words exceeds the cap 2**{cap}")
    target = (l - k) % N
    out = []
    for letters in product("PQ", repeat=n):
        shift = sum(1 if ch == "P" else -1 for ch in letters)
        if shift % N == target:
            out.append("".join(letters))
    return out


def path_count(N: int, n: int, k: int, l: int, cap: int = DEFAULT_WORD_CAP) -> int:
    """w(N, n; (k, l)) by explicit enumeration."""
    return len(enumerate_words(N, n, k, l, cap))


def combo_from_words(words: Iterable[str], coin: Coin | None = None) -> PqrsCombo:
    coin = coin or hadamard_coin()
    total = PqrsCombo()
    for w in words:
        total = total + PqrsCombo.single(*reduce_word(w, coin))
    return total
