"""Exact dense linear algebra over the supported fields.

Matrices over a prime field are int64 numpy arrays reduced by the kernels
in _kernels; matrices over Q are lists of Fraction rows reduced by a plain
fraction-preserving elimination.  Everything downstream (slice ranks, Hom
systems, nullspaces) funnels through this module, so exactness here is
what makes every dimension in the package exact.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ._kernels import rref_modp
from .fields import Field


def as_matrix(field: Field, rows, ncols: int | None = None):
    """Normalize a list-of-rows into the field's dense representation."""
    if field.is_prime_field:
        if isinstance(rows, np.ndarray):
            return rows.astype(np.int64, copy=True) % field.p
        if not rows:
            return np.zeros((0, ncols or 0), dtype=np.int64)
        return np.array([[int(x) % field.p for x in row] for row in rows], dtype=np.int64)
    if isinstance(rows, np.ndarray):
        rows = rows.tolist()
    return [[Fraction(x) for x in row] for row in rows]


def zeros(field: Field, m: int, n: int):
    if field.is_prime_field:
        return np.zeros((m, n), dtype=np.int64)
    return [[Fraction(0)] * n for _ in range(m)]


def shape(field: Field, mat):
    if field.is_prime_field:
        return mat.shape
    return (len(mat), len(mat[0]) if mat else 0)


def _rref_qq(rows):
    """In-place RREF over Q; returns (rank, pivot column list)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if rows[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return r, pivots


def rref(field: Field, mat):
    """Reduced row echelon form; returns (reduced copy, pivot columns)."""
    if field.is_prime_field:
        a = mat.copy()
        rank, piv = rref_modp(a, field.p)
        return a[:rank], [int(c) for c in piv]
    rows = [row[:] for row in mat]
    rank, piv = _rref_qq(rows)
    return rows[:rank], piv


def _rank_int_bareiss(rows) -> int:
    """Fraction-free elimination on integer rows; entries stay exact minors."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if rows[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        row_r = rows[r]
        for i in range(r + 1, m):
            row_i = rows[i]
            ric = row_i[c]
            if ric:
                for j in range(c + 1, n):
                    row_i[j] = (piv * row_i[j] - ric * row_r[j]) // prev
                row_i[c] = 0
            elif prev != piv:
                for j in range(c + 1, n):
                    if row_i[j]:
                        row_i[j] = piv * row_i[j] // prev
        prev = piv
        r += 1
        if r == m:
            break
    return r


def rank(field: Field, mat) -> int:
    m, n = shape(field, mat)
    if m == 0 or n == 0:
        return 0
    if field.is_prime_field:
        return len(rref(field, mat)[1])
    # clear denominators row by row; integer elimination is far cheaper
    # than reduced echelon over Fraction
    rows = []
    for row in mat:
        scale = 1
        for x in row:
            d = x.denominator
            if d != 1:
                scale = scale * d // _gcd(scale, d)
        rows.append([int(x * scale) for x in row])
    return _rank_int_bareiss(rows)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def nullspace(field: Field, mat):
    """Basis of the right null space as a list of scalar vectors."""
    m, n = shape(field, mat)
    if n == 0:
        return []
    if m == 0:
        return [_unit_vector(field, n, j) for j in range(n)]
    red, pivots = rref(field, mat)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = []
    for j in free:
        v = [field.zero] * n
        v[j] = field.one
        for r, pc in enumerate(pivots):
            entry = red[r][j]
            if entry:
                v[pc] = field.neg(field.of(int(entry)) if field.is_prime_field else entry)
        basis.append(v)
    return basis


def _unit_vector(field: Field, n: int, j: int):
    v = [field.zero] * n
    v[j] = field.one
    return v


def solve(field: Field, mat, rhs):
    """One solution of mat @ x = rhs (free variables zero), or None."""
    m, n = shape(field, mat)
    if field.is_prime_field:
        aug = np.zeros((m, n + 1), dtype=np.int64)
        if m:
            aug[:, :n] = mat
            aug[:, n] = np.asarray(rhs, dtype=np.int64) % field.p
    else:
        aug = [row[:] + [Fraction(b)] for row, b in zip(mat, rhs)]
    if m == 0:
        return [field.zero] * n
    red, pivots = rref(field, aug)
    if pivots and pivots[-1] == n:
        return None
    x = [field.zero] * n
    for r, pc in enumerate(pivots):
        val = red[r][n]
        x[pc] = field.of(int(val)) if field.is_prime_field else val
    return x


def hstack(field: Field, left, right):
    m1, _ = shape(field, left)
    m2, _ = shape(field, right)
    if m1 != m2:
        raise ValueError("row count mismatch")
    if field.is_prime_field:
        return np.hstack([left, right])
    return [a + b for a, b in zip(left, right)]


def from_columns(field: Field, cols, nrows: int):
    """Assemble a dense matrix from a list of length-nrows column vectors."""
    if field.is_prime_field:
        a = np.zeros((nrows, len(cols)), dtype=np.int64)
        for j, col in enumerate(cols):
            for i, x in enumerate(col):
                a[i, j] = int(x) % field.p
        return a
    a = [[Fraction(0)] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, x in enumerate(col):
            a[i][j] = Fraction(x)
    return a


def column(field: Field, mat, j: int):
    if field.is_prime_field:
        return [int(x) for x in mat[:, j]]
    return [row[j] for row in mat]


def matvec(field: Field, mat, vec):
    m, n = shape(field, mat)
    if field.is_prime_field:
        if n == 0:
            return [0] * m
        out = mat @ np.asarray([int(x) % field.p for x in vec], dtype=np.int64)
        return [int(x) for x in out % field.p]
    out = []
    for row in mat:
        acc = Fraction(0)
        for a, x in zip(row, vec):
            acc += a * x
        out.append(acc)
    return out
