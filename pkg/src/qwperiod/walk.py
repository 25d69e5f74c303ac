"""Two-state coined walk on the cycle C_N with exact amplitudes."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .exact import INV_SQRT2, ONE, ZERO, DyadicRational, ExactMatrix, ExactScalar, _obj_zeros


class InvalidN(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Coin:
    a: ExactScalar
    b: ExactScalar
    c: ExactScalar
    d: ExactScalar

    @property
    def matrix(self) -> ExactMatrix:
        return ExactMatrix.from_scalars([[self.a, self.b], [self.c, self.d]])

    @property
    def P(self) -> ExactMatrix:
        """Upper row of the coin: the left-moving part."""
        return ExactMatrix.from_scalars([[self.a, self.b], [ZERO, ZERO]])

    @property
    def Q(self) -> ExactMatrix:
        """Lower row of the coin: the right-moving part."""
        return ExactMatrix.from_scalars([[ZERO, ZERO], [self.c, self.d]])

    def is_unitary(self) -> bool:
        u = self.matrix
        return (u.H @ u).is_identity()


def hadamard_coin() -> Coin:
    h = INV_SQRT2
    return Coin(h, h, h, -h)


def _place(parts, block, i, j):
    for dst, src in zip(parts, block):
        if src is not None:
            dst[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] += src


@dataclass(frozen=True)
class EvolutionOperator:
    N: int
    coin: Coin
    matrix: ExactMatrix

    @property
    def dim(self) -> int:
        return 2 * self.N

    def sparse_rows(self) -> list[list[tuple[int, ExactScalar]]]:
        rows = []
        for r in range(self.dim):
            entries = []
            for c in range(self.dim):
                v = self.matrix[r, c]
                if not v.is_zero():
                    entries.append((c, v))
            rows.append(entries)
        return rows


def build_evolution(coin: Coin, N: int) -> EvolutionOperator:
    """The 2N x 2N operator: block row k holds P at column k+1 and Q at k-1.

    For N = 2 both off-diagonal blocks are the full coin U.
    """
    if N < 2:
        raise InvalidN(f"N must be >= 2, got {N}")

    k = max(x.k for x in (coin.a, coin.b, coin.c, coin.d))
    n = 2 * N
    parts = [_obj_zeros((n, n)) for _ in range(4)]
    P, Q = coin.P, coin.Q
    Pp, Qp = P._at(k), Q._at(k)
    if N == 2:
        U = coin.matrix._at(k)
        _place(parts, U, 0, 1)
        _place(parts, U, 1, 0)
    else:
        for row in range(N):
            _place(parts, Pp, row, (row + 1) % N)
            _place(parts, Qp, row, (row - 1) % N)
    return EvolutionOperator(N, coin, ExactMatrix(parts, k, shape=(n, n)))


def hadamard_walk(N: int) -> EvolutionOperator:
    return build_evolution(hadamard_coin(), N)


@dataclass(frozen=True)
class WalkState:
    N: int
    amplitudes: tuple[ExactScalar, ...]

    def __post_init__(self):
        if len(self.amplitudes) != 2 * self.N:
            raise DimensionMismatch(f"expected {2 * self.N} amplitudes, got {len(self.amplitudes)}")

    @classmethod
    def localized(cls, N: int, alpha=ONE, beta=ZERO, vertex: int = 0) -> "WalkState":
        """Walker at ``vertex`` with chirality state [alpha, beta]."""
        amps = [ZERO] * (2 * N)
        amps[2 * vertex] = ExactScalar.coerce(alpha)
        amps[2 * vertex + 1] = ExactScalar.coerce(beta)
        return cls(N, tuple(amps))

    def chirality(self, x: int) -> tuple[ExactScalar, ExactScalar]:
        return self.amplitudes[2 * x], self.amplitudes[2 * x + 1]

    def norm_sq(self) -> DyadicRational:
        total = DyadicRational(0)
        for amp in self.amplitudes:
            total = total + amp.norm_sq()
        return total

    def to_json(self) -> dict:
        return {"N": self.N, "amplitudes": [a.to_json() for a in self.amplitudes]}

    @classmethod
    def from_json(cls, obj) -> "WalkState":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["N"]), tuple(ExactScalar.from_json(a) for a in obj["amplitudes"]))


def _step(rows, amps: Sequence[ExactScalar]) -> tuple[ExactScalar, ...]:
    out = []
    for entries in rows:
        acc = ZERO
        for c, v in entries:
            if not amps[c].is_zero():
                acc = acc + v * amps[c]
        out.append(acc)
    return tuple(out)


def trajectory(op: EvolutionOperator, state: WalkState, steps: int) -> Iterator[WalkState]:
    """Yield Psi_0, Psi_1, ..., Psi_steps."""
    if state.N != op.N:
        raise DimensionMismatch(f"state has N={state.N}, operator N={op.N}")
    rows = op.sparse_rows()
    amps = state.amplitudes
    yield state
    for _ in range(steps):
        amps = _step(rows, amps)
        yield WalkState(op.N, amps)


def evolve(op: EvolutionOperator, state: WalkState, steps: int) -> WalkState:
    if steps < 0:
        raise ValueError("steps must be non-negative")
    for s in trajectory(op, state, steps):
        pass
    return s


def measure(state: WalkState) -> list[DyadicRational]:
    """phi(Psi)(x) = |Psi^L(x)|^2 + |Psi^R(x)|^2."""
    return [left.norm_sq() + right.norm_sq() for left, right in map(state.chirality, range(state.N))]


def matrix_power(op: EvolutionOperator, n: int) -> ExactMatrix:
    """Exact n-th power by square-and-multiply."""
    if n < 0:
        raise ValueError("n must be non-negative")
    result = ExactMatrix.identity(op.dim)
    base = op.matrix
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def powers(op: EvolutionOperator) -> Iterator[tuple[int, ExactMatrix]]:
    """Yield (n, U**n) for n = 1, 2, ... reusing the previous power."""
    cur = op.matrix
    n = 1
    while True:
        yield n, cur
        cur = op.matrix @ cur
        n += 1
