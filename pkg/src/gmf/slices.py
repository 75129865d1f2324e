"""Degreewise dense models of graded free modules and their maps.

Every graded dimension claim in the package bottoms out here: the degree-e
slice of a free module has the finite monomial basis {x^a e_j}, a graded
matrix restricts to an ordinary field matrix between slices, and quotient
constructions (cokernel bases, reduction mod a submodule slice) become
row reduction.  This is deliberately independent of the Groebner engine so
the two can cross-check each other.
"""

from __future__ import annotations

from . import linalg
from .freemod import FreeModule, GradedMatrix
from .rings import Polynomial


def slice_basis(module: FreeModule, e: int) -> list:
    """Monomial basis [(j, exps)] of the degree-e slice, generator-major."""
    out = []
    for j, g in enumerate(module.gen_degrees):
        for mono in module.ring.monomials_of_degree(e - g):
            out.append((j, mono))
    return out


def slice_dim(module: FreeModule, e: int) -> int:
    return len(slice_basis(module, e))


def _basis_index(basis: list) -> dict:
    return {key: i for i, key in enumerate(basis)}


def vector_slice(cols: list, module: FreeModule, e: int, basis_index=None):
    """Coordinates of a homogeneous degree-e element (list of Polynomials)."""
    if basis_index is None:
        basis_index = _basis_index(slice_basis(module, e))
    field = module.ring.field
    coords = [field.zero] * len(basis_index)
    for j, poly in enumerate(cols):
        for exps, c in poly.terms.items():
            coords[basis_index[(j, exps)]] = c
    return coords


def _scatter_matrix(field, nrows: int, entries_by_col: list):
    """Dense matrix from per-column sparse dicts index -> scalar."""
    ncols = len(entries_by_col)
    out = linalg.zeros(field, nrows, ncols)
    if field.is_prime_field:
        for j, cells in enumerate(entries_by_col):
            for i, c in cells.items():
                out[i, j] = c
    else:
        for j, cells in enumerate(entries_by_col):
            for i, c in cells.items():
                out[i][j] = c
    return out


def matrix_slice(f: GradedMatrix, e: int):
    """Dense matrix of (F_src)_e -> (F_tgt)_{e+deg f} in the monomial bases."""
    ring = f.ring
    field = ring.field
    src_basis = slice_basis(f.source, e)
    tgt_basis = slice_basis(f.target, e + f.degree)
    tgt_index = _basis_index(tgt_basis)
    cols = []
    for (j, mono) in src_basis:
        cells: dict = {}
        for i in range(f.target.rank):
            p = f.entries[i][j]
            if p.is_zero:
                continue
            for exps, c in p.terms.items():
                key = (i, tuple(a + b for a, b in zip(exps, mono)))
                idx = tgt_index[key]
                cells[idx] = field.add(cells.get(idx, field.zero), c)
        cols.append(cells)
    return _scatter_matrix(field, len(tgt_basis), cols)


def columns_slice(columns: list, col_degrees: list, module: FreeModule, e: int):
    """Dense matrix whose image is the degree-e slice of the span of columns.

    Column c (a homogeneous element of degree col_degrees[c]) contributes one
    dense column per monomial of degree e - col_degrees[c].
    """
    ring = module.ring
    field = ring.field
    tgt_basis = slice_basis(module, e)
    tgt_index = _basis_index(tgt_basis)
    cols = []
    for vec, d in zip(columns, col_degrees):
        for mono in ring.monomials_of_degree(e - d):
            cells: dict = {}
            for j, poly in enumerate(vec):
                if poly.is_zero:
                    continue
                for exps, c in poly.terms.items():
                    key = (j, tuple(a + b for a, b in zip(exps, mono)))
                    idx = tgt_index[key]
                    cells[idx] = field.add(cells.get(idx, field.zero), c)
            cols.append(cells)
    return _scatter_matrix(field, len(tgt_basis), cols)


class SliceQuotient:
    """Linear model of (F_e) / U for U the column space of a dense matrix.

    Built from the row echelon form of U^T: pivot coordinates get eliminated,
    the free coordinates index a basis of the quotient.
    """

    def __init__(self, field, dense_u, dim_ambient: int):
        self.field = field
        self.dim_ambient = dim_ambient
        rows, pivots = linalg.rref(field, _transpose(field, dense_u, dim_ambient))
        if field.is_prime_field:
            rows = [[int(x) for x in row] for row in rows]
        self.u_rows = rows
        self.pivots = pivots
        pset = set(pivots)
        self.free = [j for j in range(dim_ambient) if j not in pset]

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, vec):
        """Quotient coordinates of an ambient coordinate vector."""
        field = self.field
        v = list(vec)
        for row, pc in zip(self.u_rows, self.pivots):
            c = v[pc]
            if c:
                v = [field.sub(a, field.mul(c, b)) for a, b in zip(v, row)]
        return [v[j] for j in self.free]

    def lift(self, coords):
        """An ambient representative with the given quotient coordinates."""
        v = [self.field.zero] * self.dim_ambient
        for c, j in zip(coords, self.free):
            v[j] = c
        return v

    def contains(self, vec) -> bool:
        return all(not c for c in self.project(vec))


def _transpose(field, mat, ncols: int):
    m, n = linalg.shape(field, mat)
    if field.is_prime_field:
        return mat.T.copy() if m else linalg.zeros(field, 0, ncols)
    return [[mat[i][j] for i in range(m)] for j in range(n)]


def quotient_of_map(f: GradedMatrix, e: int) -> SliceQuotient:
    """Quotient of the degree-e slice of f.target by the image of f's slice."""
    dense = matrix_slice(f, e - f.degree)
    return SliceQuotient(f.ring.field, dense, slice_dim(f.target, e))


# --- slices over the hypersurface quotient A = B/W -------------------------


def afree_slice_dim(module: FreeModule, e: int, w: Polynomial) -> int:
    """dim of the degree-e slice of the A-free module on the same generators."""
    return slice_dim(module, e) - slice_dim(module, e - w.degree)


def _w_columns(module: FreeModule, e: int, w: Polynomial):
    """Dense columns spanning (W * F)_e inside F_e."""
    wmat = GradedMatrix.scalar(module, w)
    return matrix_slice(wmat, e - w.degree)


def afree_rank(f: GradedMatrix, e: int, w: Polynomial) -> int:
    """Rank of the degree-e slice of f as a map of A-free modules.

    Computed as rank([f_e | W-image]) - rank(W-image) in the target slice,
    the rank of f_e composed with the projection mod W.  Multiplication by
    the regular element W is injective, so the W-block has full column rank
    equal to the source slice dimension one potential-degree lower.
    """
    field = f.ring.field
    fe = matrix_slice(f, e)
    wcols = _w_columns(f.target, e + f.degree, w)
    stacked = linalg.hstack(field, fe, wcols)
    return linalg.rank(field, stacked) - slice_dim(f.target, e + f.degree - w.degree)
