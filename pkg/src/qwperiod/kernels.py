"""Hot numeric kernels.

Each kernel exists twice: an ``@njit`` loop version and a vectorised numpy
version.  The numba path is used when numba imports cleanly and the
environment variable ``QWPERIOD_DISABLE_NUMBA`` is unset (or "0").  Both
paths return identical results; tests run them against each other.

All modular kernels assume a prime modulus below 2**31 so that a product of
two residues fits in int64.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("QWPERIOD_DISABLE_NUMBA", "0").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    from numba import njit
except ImportError:  # pragma: no cover - depends on environment
    njit = None

USE_NUMBA = njit is not None


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _maybe_njit(**kw):
    def wrap(fn):
        return njit(**kw)(fn) if njit is not None else fn

    return wrap


# ---------------------------------------------------------------------------
# characteristic polynomial modulo a prime (Hessenberg reduction)


@_maybe_njit(cache=True, nogil=True)
def _charpoly_mod_numba(a, p):
    n = a.shape[0]
    h = a.copy()
    for m in range(1, n - 1):
        piv = -1
        for i in range(m, n):
            if h[i, m - 1] != 0:
                piv = i
                break
        if piv == -1:
            continue
        if piv != m:
            for j in range(n):
                t = h[piv, j]
                h[piv, j] = h[m, j]
                h[m, j] = t
            for i in range(n):
                t = h[i, piv]
                h[i, piv] = h[i, m]
                h[i, m] = t
        # modular inverse by Fermat
        base = h[m, m - 1]
        e = p - 2
        inv = 1
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for i in range(m + 1, n):
            u = h[i, m - 1] * inv % p
            if u == 0:
                continue
            for j in range(n):
                h[i, j] = (h[i, j] - u * h[m, j]) % p
            for j in range(n):
                h[j, m] = (h[j, m] + u * h[j, i]) % p
    return _hessenberg_poly_numba(h, p)


@_maybe_njit(cache=True, nogil=True)
def _hessenberg_poly_numba(h, p):
    n = h.shape[0]
    # polys[m] holds the char poly of the leading m x m block, low degree first
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for m in range(1, n + 1):
        diag = h[m - 1, m - 1]
        for j in range(m + 1):
            v = 0
            if j > 0:
                v = polys[m - 1, j - 1]
            v = (v - diag * polys[m - 1, j]) % p
            polys[m, j] = v
        t = 1
        for i in range(1, m):
            t = t * h[m - i, m - i - 1] % p
            coef = t * h[m - i - 1, m - 1] % p
            if coef == 0:
                continue
            for j in range(m - i):
                polys[m, j] = (polys[m, j] - coef * polys[m - i - 1, j]) % p
    return polys[n].copy()


def _charpoly_mod_numpy(a, p):
    n = a.shape[0]
    h = a.copy()
    for m in range(1, n - 1):
        nz = np.flatnonzero(h[m:, m - 1])
        if nz.size == 0:
            continue
        piv = m + int(nz[0])
        if piv != m:
            h[[piv, m], :] = h[[m, piv], :]
            h[:, [piv, m]] = h[:, [m, piv]]
        inv = pow(int(h[m, m - 1]), p - 2, p)
        u = h[m + 1 :, m - 1] * inv % p
        # the elementary similarities for rows m+1.. commute, so apply them at once
        h[m + 1 :, :] = (h[m + 1 :, :] - (u[:, None] * h[m, :][None, :]) % p) % p
        h[:, m] = (h[:, m] + ((h[:, m + 1 :] * u[None, :]) % p).sum(axis=1)) % p
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:-1] = (cur[:-1] - h[m - 1, m - 1] * prev) % p
        t = 1
        for i in range(1, m):
            t = t * int(h[m - i, m - i - 1]) % p
            coef = t * int(h[m - i - 1, m - 1]) % p
            if coef:
                q = polys[m - i - 1]
                cur[: q.size] = (cur[: q.size] - coef * q) % p
        polys.append(cur % p)
    return polys[n]


def charpoly_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Characteristic polynomial of an int64 matrix modulo prime ``p``.

    Returns coefficients, lowest degree first, reduced to [0, p).
    """
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    if a.shape[0] == 0:
        return np.array([1], dtype=np.int64)
    if USE_NUMBA:
        return _charpoly_mod_numba(a, np.int64(p))
    return _charpoly_mod_numpy(a, p)


# ---------------------------------------------------------------------------
# polynomial remainder modulo a prime


@_maybe_njit(cache=True, nogil=True)
def _divides_mod_numba(num, den, p):
    r = num.copy()
    dn = den.shape[0] - 1
    for i in range(r.shape[0] - 1, dn - 1, -1):
        q = r[i]
        if q == 0:
            continue
        for j in range(dn + 1):
            r[i - dn + j] = (r[i - dn + j] - q * den[j]) % p
    for i in range(min(dn, r.shape[0])):
        if r[i] != 0:
            return False
    return True


def _divides_mod_numpy(num, den, p):
    r = num.copy()
    dn = den.size - 1
    for i in range(r.size - 1, dn - 1, -1):
        q = r[i]
        if q:
            r[i - dn : i + 1] = (r[i - dn : i + 1] - q * den) % p
    return not np.any(r[:dn])


def monic_divides_mod(num: np.ndarray, den: np.ndarray, p: int) -> bool:
    """Whether monic ``den`` divides ``num`` over GF(p); coefficients low-first."""
    num = np.ascontiguousarray(np.asarray(num, dtype=np.int64) % p)
    den = np.ascontiguousarray(np.asarray(den, dtype=np.int64) % p)
    if den.size > num.size:
        return not np.any(num)
    if USE_NUMBA:
        return bool(_divides_mod_numba(num, den, np.int64(p)))
    return _divides_mod_numpy(num, den, p)


# ---------------------------------------------------------------------------
# GF(2) bit matrices, rows packed into uint64 words (bit j of word j//64)


def pack_rows(bits: np.ndarray) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8) & 1
    n, m = bits.shape
    words = (m + 63) // 64
    padded = np.zeros((n, words * 64), dtype=np.uint8)
    padded[:, :m] = bits
    packed = np.packbits(padded.reshape(n, words, 64), axis=2, bitorder="little")
    return packed.view(np.uint64).reshape(n, words).copy()


def unpack_rows(packed: np.ndarray, m: int) -> np.ndarray:
    n, words = packed.shape
    raw = np.ascontiguousarray(packed).view(np.uint8).reshape(n, words * 8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :m]


@_maybe_njit(cache=True, nogil=True)
def _gf2_matmul_numba(a, b, m):
    n = a.shape[0]
    words = b.shape[1]
    out = np.zeros((n, words), dtype=np.uint64)
    for i in range(n):
        for k in range(m):
            if (a[i, k >> 6] >> np.uint64(k & 63)) & np.uint64(1):
                for w in range(words):
                    out[i, w] ^= b[k, w]
    return out


def _gf2_matmul_numpy(a, b, m):
    ua = unpack_rows(a, m).astype(np.int64)
    ub = unpack_rows(b, b.shape[1] * 64).astype(np.int64)
    return pack_rows((ua @ ub[:m]) & 1)


def gf2_matmul(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    """Product of packed GF(2) matrices; ``m`` is the inner dimension in bits."""
    a = np.ascontiguousarray(a, dtype=np.uint64)
    b = np.ascontiguousarray(b, dtype=np.uint64)
    if USE_NUMBA:
        return _gf2_matmul_numba(a, b, m)
    return _gf2_matmul_numpy(a, b, m)


# ---------------------------------------------------------------------------
# first-row parity update for odd cycles


@_maybe_njit(cache=True, nogil=True)
def _parity_orbit_numba(start, max_steps):
    # c_j <- c_{j-1} + c_{j+1} with c_0 = 0 and c_{M+1} = c_M
    m = start.shape[0]
    cur = start.copy()
    nxt = np.empty_like(cur)
    zero_at = -1
    for step in range(1, max_steps + 1):
        for j in range(m):
            left = cur[j - 1] if j > 0 else np.uint8(0)
            right = cur[j + 1] if j + 1 < m else cur[m - 1]
            nxt[j] = left ^ right
        cur, nxt = nxt, cur
        allzero = True
        same = True
        for j in range(m):
            if cur[j] != 0:
                allzero = False
            if cur[j] != start[j]:
                same = False
        if allzero:
            zero_at = step
            return step, zero_at
        if same:
            return step, zero_at
    return -1, zero_at


def _parity_orbit_numpy(start, max_steps):
    cur = start.copy()
    for step in range(1, max_steps + 1):
        ext = np.concatenate(([0], cur, cur[-1:])).astype(np.uint8)
        cur = ext[:-2] ^ ext[2:]
        if not cur.any():
            return step, step
        if np.array_equal(cur, start):
            return step, -1
    return -1, -1


def parity_orbit(start: np.ndarray, max_steps: int) -> tuple[int, int]:
    """Iterate the compressed first-row update from ``start``.

    Returns ``(return_step, zero_step)``: the first step at which the orbit
    comes back to ``start`` (-1 if not within ``max_steps``) and the first
    step at which the all-zero vector appears (-1 if never).
    """
    start = np.ascontiguousarray(np.asarray(start, dtype=np.uint8) & 1)
    if USE_NUMBA:
        ret, zero = _parity_orbit_numba(start, np.int64(max_steps))
        return int(ret), int(zero)
    return _parity_orbit_numpy(start, max_steps)


# ---------------------------------------------------------------------------
# floating-point walk evolution (cross-check of the exact path)


@_maybe_njit(cache=True, nogil=True)
def _walk_measures_numba(psi0, coin, steps):
    n = psi0.shape[0]
    out = np.empty((steps + 1, n), dtype=np.float64)
    cur = psi0.copy()
    nxt = np.empty_like(cur)
    for t in range(steps + 1):
        for x in range(n):
            out[t, x] = abs(cur[x, 0]) ** 2 + abs(cur[x, 1]) ** 2
        if t == steps:
            break
        for x in range(n):
            r = cur[(x + 1) % n]
            l = cur[(x - 1) % n]
            # P row [a, b] acts on the right neighbour, Q row [c, d] on the left
            nxt[x, 0] = coin[0, 0] * r[0] + coin[0, 1] * r[1]
            nxt[x, 1] = coin[1, 0] * l[0] + coin[1, 1] * l[1]
        cur, nxt = nxt, cur
    return out


def _walk_measures_numpy(psi0, coin, steps):
    n = psi0.shape[0]
    out = np.empty((steps + 1, n))
    cur = psi0.copy()
    for t in range(steps + 1):
        out[t] = (np.abs(cur) ** 2).sum(axis=1)
        if t == steps:
            break
        r = np.roll(cur, -1, axis=0)
        l = np.roll(cur, 1, axis=0)
        nxt = np.empty_like(cur)
        nxt[:, 0] = r @ coin[0]
        nxt[:, 1] = l @ coin[1]
        cur = nxt
    return out


def walk_measures(psi0: np.ndarray, coin: np.ndarray, steps: int) -> np.ndarray:
    """Per-step vertex measures of a coined walk on a cycle with N >= 3.

    ``psi0`` has shape (N, 2) (complex), ``coin`` is the 2x2 coin matrix.
    Returns an array of shape (steps + 1, N).
    """
    psi0 = np.ascontiguousarray(psi0, dtype=np.complex128)
    coin = np.ascontiguousarray(coin, dtype=np.complex128)
    if USE_NUMBA:
        return _walk_measures_numba(psi0, coin, np.int64(steps))
    return _walk_measures_numpy(psi0, coin, steps)
