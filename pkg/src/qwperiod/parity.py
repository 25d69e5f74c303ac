"""Mod-2 path counting on C_N and the parity obstruction to periodicity.

If U_N**n = I then every block path count w(N, n; (k, l)) must be even, i.e.
(A_N)**n vanishes mod 2.  For odd N the first row of (A_N)**n mod 2 is
``[0, c_1, ..., c_M, c_M, ..., c_1]`` (M = (N-1)/2) and moves by the linear
map  c_j <- c_{j-1} + c_{j+1}  (c_0 = 0, c_{M+1} = c_M).  That map has trivial
kernel, so the zero row is unreachable from the nonzero row at n = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .walk import InvalidN

DEFAULT_ORBIT_CAP = 1 << 16


class ObstructionFailed(RuntimeError):
    pass


def adjacency(N: int) -> np.ndarray:
    """Integer adjacency matrix of the cycle C_N (N >= 3)."""
    if N < 3:
        raise InvalidN(f"adjacency needs N >= 3, got {N}")
    a = np.zeros((N, N), dtype=np.int64)
    for k in range(N):
        a[k, (k + 1) % N] = 1
        a[k, (k - 1) % N] = 1
    return a


def adjacency_power(N: int, n: int) -> np.ndarray:
    """(A_N)**n with Python-int entries (they grow like 2**n)."""
    a = adjacency(N).astype(object)
    out = np.identity(N, dtype=np.int64).astype(object)
    for _ in range(n):
        out = out.dot(a)
    return out


def adjacency_powers(N: int, n_max: int):
    """Yield (n, (A_N)**n) for n = 1..n_max."""
    a = adjacency(N).astype(object)
    cur = a
    for n in range(1, n_max + 1):
        yield n, cur
        cur = cur.dot(a)


def b_matrix(N: int, n: int) -> np.ndarray:
    """(A_N)**n mod 2 computed over GF(2) with packed rows."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = kernels.pack_rows(adjacency(N))
    result = None
    while n:
        if n & 1:
            result = base if result is None else kernels.gf2_matmul(result, base, N)
        n >>= 1
        if n:
            base = kernels.gf2_matmul(base, base, N)
    return kernels.unpack_rows(result, N)


def compress_row(row) -> np.ndarray:
    """[0, c_1..c_M, c_M..c_1] -> (c_1..c_M); checks the symmetric shape."""
    row = np.asarray(row, dtype=np.uint8) & 1
    N = row.size
    if N % 2 == 0 or N < 3:
        raise InvalidN("compressed rows exist for odd N >= 3")
    M = (N - 1) // 2
    c = row[1 : M + 1]
    if row[0] != 0 or not np.array_equal(c, row[M + 1 :][::-1]):
        raise ValueError("row is not of the form [0, c, reversed(c)]")
    return c.copy()


def expand_row(c) -> np.ndarray:
    c = np.asarray(c, dtype=np.uint8)
    return np.concatenate(([0], c, c[::-1])).astype(np.uint8)


def parity_update(c) -> np.ndarray:
    c = np.asarray(c, dtype=np.uint8)
    ext = np.concatenate(([0], c, c[-1:])).astype(np.uint8)
    return ext[:-2] ^ ext[2:]


def update_matrix(M: int) -> np.ndarray:
    t = np.zeros((M, M), dtype=np.uint8)
    for j in range(M):
        if j > 0:
            t[j, j - 1] ^= 1
        t[j, j + 1 if j + 1 < M else M - 1] ^= 1
    return t


def gf2_rank(mat: np.ndarray) -> int:
    rows = [int("".join(str(int(b)) for b in r[::-1]), 2) if r.size else 0 for r in np.asarray(mat) & 1]
    rank = 0
    for bit in range(mat.shape[1]):
        pivot = next((i for i in range(rank, len(rows)) if rows[i] >> bit & 1), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] >> bit & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


@dataclass
class ObstructionReport:
    N: int
    injective: bool
    orbit_length: int | None
    orbit_cap: int
    zero_reached: bool
    witnesses: list[tuple[int, int, int]] = field(default_factory=list)

    def to_json(self, max_witnesses: int | None = None) -> dict:
        ws = self.witnesses if max_witnesses is None else self.witnesses[:max_witnesses]
        return {
            "N": self.N,
            "orbitLength": self.orbit_length,
            "orbitCap": self.orbit_cap,
            "updateInjective": self.injective,
            "zeroReached": self.zero_reached,
            "witnesses": [{"n": n, "k": k, "l": l} for n, k, l in ws],
        }


def periodicity_obstruction(N: int, steps: int | None = None, orbit_cap: int = DEFAULT_ORBIT_CAP) -> ObstructionReport:
    """Show (A_N)**n mod 2 has an off-diagonal 1 in row 1 for every n >= 1.

    Decided by the rank of the update map (trivial kernel means the zero
    vector never follows a nonzero one).  The orbit is also walked until it
    returns to its start or ``orbit_cap`` steps pass; ``orbit_length`` is
    None in the latter case.  Witnesses (n, 1, l) use 1-based block indices
    and cover n = 1..steps (default: the orbit, at most 64 entries).
    """
    if N < 3 or N % 2 == 0:
        raise InvalidN(f"parity obstruction applies to odd N >= 3, got {N}")
    M = (N - 1) // 2
    start = compress_row(adjacency(N)[0])
    injective = gf2_rank(update_matrix(M)) == M
    ret, zero = kernels.parity_orbit(start, orbit_cap)
    if zero != -1 or not injective and ret == -1:
        # without injectivity a capped walk proves nothing
        raise ObstructionFailed(f"N={N}: zero parity row reached (step {zero}) or undecided")
    orbit_length = ret if ret != -1 else None
    if steps is None:
        steps = min(orbit_length or 64, 64)
    witnesses = []
    c = start
    for n in range(1, steps + 1):
        j = int(np.flatnonzero(c)[0])
        witnesses.append((n, 1, j + 2))
        c = parity_update(c)
    return ObstructionReport(N, injective, orbit_length, orbit_cap, False, witnesses)


@dataclass
class PathSymmetryReport:
    N: int
    n_max: int
    diagonal_even: bool
    row_symmetric: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.diagonal_even and self.row_symmetric


def verify_path_symmetry(N: int, n_max: int) -> PathSymmetryReport:
    """Diagonal evenness and first-row mirror symmetry of (A_N)**n, n <= n_max."""
    diag_ok = sym_ok = True
    failures = []
    for n, a in adjacency_powers(N, n_max):
        if any(a[k, k] % 2 for k in range(N)):
            diag_ok = False
            failures.append(f"n={n}: odd diagonal entry")
        # 1-based (1, l) vs (1, N - (l - 2)) for l = 2 .. floor(N/2) + 1
        for l in range(2, N // 2 + 2):
            if a[0, l - 1] != a[0, N - (l - 2) - 1]:
                sym_ok = False
                failures.append(f"n={n}: w(1,{l}) != w(1,{N - l + 2})")
    return PathSymmetryReport(N, n_max, diag_ok, sym_ok, failures)
