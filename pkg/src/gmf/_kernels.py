"""Dense row-reduction kernels over F_p.

Two interchangeable implementations of in-place reduced row echelon form
on int64 arrays with entries in [0, p): a numba-jitted elimination loop
and a vectorized numpy twin.  Selection order: the GMF_PURE_NUMPY=1
environment flag forces the numpy path; otherwise numba is used when
importable.  Both produce identical output (exact arithmetic), which the
test suite and benchmarks/bench_kernels.py check side by side.

Overflow safety: p < 2^31, so products stay below 2^62 and every
accumulated value fits comfortably in int64.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - import probe
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def _rref_modp_py(a, p):
    """Reference elimination loop; jitted below when numba is present."""
    m, n = a.shape
    piv = np.empty(min(m, n) if m and n else 0, dtype=np.int64)
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if a[i, c] != 0:
                pr = i
                break
        if pr == -1:
            continue
        if pr != r:
            for j in range(n):
                t = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = t
        # modular inverse by Fermat; p is prime
        inv = 1
        base = a[r, c] % p
        e = p - 2
        while e:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for j in range(n):
            a[r, j] = a[r, j] * inv % p
        for i in range(m):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(n):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        piv[r] = c
        r += 1
        if r == m:
            break
    return r, piv


if HAVE_NUMBA:
    _rref_modp_numba = numba.njit("Tuple((int64, int64[:]))(int64[:, :], int64)", cache=True)(
        _rref_modp_py
    )
else:  # pragma: no cover
    _rref_modp_numba = None


def rref_modp_numpy(a: np.ndarray, p: int):
    """Vectorized in-place RREF over F_p; returns (rank, pivot columns)."""
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            a[rows] -= np.outer(a[rows, c], a[r])
            a[rows] %= p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return r, np.asarray(pivots, dtype=np.int64)


def use_numba() -> bool:
    if os.environ.get("GMF_PURE_NUMPY", "") == "1":
        return False
    return HAVE_NUMBA


def rref_modp(a: np.ndarray, p: int):
    """In-place RREF over F_p via the selected kernel; (rank, pivot cols)."""
    if a.size == 0:
        return 0, np.empty(0, dtype=np.int64)
    if use_numba():
        rank, piv = _rref_modp_numba(a, p)
        return int(rank), piv[:rank]
    rank, piv = rref_modp_numpy(a, p)
    return rank, piv[:rank]
