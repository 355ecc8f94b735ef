"""Hot loops for linear algebra over GF(p).

Two interchangeable implementations live here: numba-compiled kernels and a
vectorised pure-numpy path.  The numpy path is used when numba is missing or
when ``NILCOMM_PURE_NUMPY=1`` is set in the environment.  Both operate on
``int64`` arrays whose entries lie in ``[0, p)``; ``p`` must be below 2**31 so
that a product of two residues fits in an int64.
"""

import os

import numpy as np

MAX_PRIME = 2**31 - 1

_want_numba = os.environ.get("NILCOMM_PURE_NUMPY", "").strip().lower() not in {"1", "true", "yes"}

try:
    if not _want_numba:
        raise ImportError("disabled by NILCOMM_PURE_NUMPY")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _inv_mod_py(a, p):
    return pow(int(a), p - 2, p)


# -- pure numpy ---------------------------------------------------------------

def rref_modp_numpy(a, p):
    """Reduced row echelon form of ``a`` mod ``p``.

    Returns ``(r, pivots)`` where ``r`` is a new array and ``pivots`` an int64
    array of pivot columns.  Pivot choice: first nonzero row in each column.
    """
    r = np.array(a, dtype=np.int64, copy=True) % p
    nrows, ncols = r.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = _inv_mod_py(r[row, col], p)
        r[row] = (r[row] * inv) % p
        factors = r[:, col].copy()
        factors[row] = 0
        nzr = np.nonzero(factors)[0]
        if nzr.size:
            r[nzr] = (r[nzr] - (factors[nzr, None] * r[row][None, :]) % p) % p
        pivots.append(col)
        row += 1
    return r, np.array(pivots, dtype=np.int64)


def matmul_modp_numpy(a, b, p):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        # one rank-1 update at a time keeps every intermediate below 2**62
        out = (out + (a[:, k, None] * b[None, k, :]) % p) % p
    return out


# -- numba --------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod_nb(a, p):
        result = 1
        base = a % p
        e = p - 2
        while e > 0:
            if e & 1:
                result = (result * base) % p
            base = (base * base) % p
            e >>= 1
        return result

    @njit(cache=True)
    def _rref_modp_nb(r, p):
        nrows, ncols = r.shape
        pivots = np.empty(min(nrows, ncols), dtype=np.int64)
        npiv = 0
        row = 0
        for col in range(ncols):
            if row >= nrows:
                break
            piv = -1
            for i in range(row, nrows):
                if r[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != row:
                for j in range(ncols):
                    tmp = r[row, j]
                    r[row, j] = r[piv, j]
                    r[piv, j] = tmp
            inv = _inv_mod_nb(r[row, col], p)
            for j in range(col, ncols):
                r[row, j] = (r[row, j] * inv) % p
            for i in range(nrows):
                if i == row:
                    continue
                f = r[i, col]
                if f == 0:
                    continue
                for j in range(col, ncols):
                    r[i, j] = (r[i, j] - f * r[row, j]) % p
            pivots[npiv] = col
            npiv += 1
            row += 1
        return pivots[:npiv]

    @njit(cache=True)
    def _matmul_modp_nb(a, b, p):
        n, m = a.shape
        q = b.shape[1]
        out = np.zeros((n, q), dtype=np.int64)
        for i in range(n):
            for k in range(m):
                aik = a[i, k]
                if aik == 0:
                    continue
                for j in range(q):
                    out[i, j] = (out[i, j] + aik * b[k, j]) % p
        return out

    def rref_modp_numba(a, p):
        r = np.array(a, dtype=np.int64, copy=True) % p
        pivots = _rref_modp_nb(r, p)
        return r, pivots

    def matmul_modp_numba(a, b, p):
        return _matmul_modp_nb(
            np.ascontiguousarray(a, dtype=np.int64), np.ascontiguousarray(b, dtype=np.int64), p
        )

    rref_modp = rref_modp_numba
    matmul_modp = matmul_modp_numba
else:
    rref_modp = rref_modp_numpy
    matmul_modp = matmul_modp_numpy
