"""Dense mod-p row-reduction kernels.

Two interchangeable implementations of Gauss-Jordan elimination over
GF(p) on int64 arrays: a numba-jitted loop and a vectorized pure-numpy
fallback.  Which one runs is decided once at import time:

* ``MESHALG_NUMBA=0`` forces the numpy path,
* ``MESHALG_NUMBA=1`` requires numba (ImportError if missing),
* unset: numba when importable, numpy otherwise.

Entries must satisfy p*p < 2**63 so products never overflow, which holds
for every prime this package uses.  The rational lane does not go through
here at all: arbitrary-precision Fractions are not jittable, so QQ row
reduction lives in :mod:`meshalg.linalg`.
"""

from __future__ import annotations

import os

import numpy as np

_MODE = os.environ.get("MESHALG_NUMBA", "auto").strip().lower()


def _modinv(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def rref_modp_numpy(mat: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of ``mat`` over GF(p).

    Returns (rref matrix, pivot column indices).  Vectorized numpy;
    row operations are whole-array updates mod p.
    """
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * _modinv(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        a -= np.outer(col, a[r])
        a %= p
        pivots.append(c)
        r += 1
    return a, np.array(pivots, dtype=np.int64)


def _make_numba_kernel():
    from numba import njit

    @njit(cache=True)
    def _rref(a, p, pivots):  # pragma: no cover - exercised via wrapper
        rows, cols = a.shape
        r = 0
        npiv = 0
        for c in range(cols):
            if r >= rows:
                break
            pr = -1
            for i in range(r, rows):
                if a[i, c] % p != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(cols):
                    tmp = a[r, j]
                    a[r, j] = a[pr, j]
                    a[pr, j] = tmp
            # normalize pivot row: multiply by modular inverse of pivot
            piv = a[r, c] % p
            inv = 1
            e = p - 2
            b = piv
            while e > 0:
                if e & 1:
                    inv = (inv * b) % p
                b = (b * b) % p
                e >>= 1
            for j in range(cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(rows):
                if i != r and a[i, c] % p != 0:
                    f = a[i, c] % p
                    for j in range(cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[npiv] = c
            npiv += 1
            r += 1
        return npiv

    def rref_modp_numba(mat: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
        a = np.array(mat, dtype=np.int64) % p
        if a.size == 0:
            return a, np.zeros(0, dtype=np.int64)
        buf = np.empty(min(a.shape), dtype=np.int64)
        npiv = _rref(a, p, buf)
        return a, buf[:npiv].copy()

    return rref_modp_numba


def _select():
    if _MODE == "0":
        return rref_modp_numpy, "numpy"
    try:
        kern = _make_numba_kernel()
        return kern, "numba"
    except ImportError:
        if _MODE == "1":
            raise
        return rref_modp_numpy, "numpy"


rref_modp, ACTIVE_KERNEL = _select()
