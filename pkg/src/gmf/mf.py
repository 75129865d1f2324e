"""The category of graded matrix factorizations of a homogeneous potential.

An object is a pair of graded free modules of equal rank with a degree-0
map p1 and a degree-d map p0 whose composites are both multiplication by
the potential W.  Morphisms are pairs of degree-0 maps making both squares
commute; the homotopy relation quotients by pairs (s, t) as in the defining
identities f1 = p0' t + s p1 and f0 = t p0 + p1' s.  Hom spaces are finite
dimensional in each shift/twist sector and are computed by exact linear
algebra over the coefficient field.

Shift conventions: [1] swaps the two modules, twists the new degree-d half
by d and negates both maps; [2] equals the twist by d on the nose, so even
shifts are realized by pure twists and odd ones by a single application of
the shift.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import linalg
from .freemod import FreeModule, GradedMatrix, GradingError, block_matrix
from .groebner import kernel as groebner_kernel
from .rings import Polynomial


class MFError(ValueError):
    pass


class MatrixFactorization:
    """The pair (p1, p0) with p0 p1 = p1 p0 = W * Id."""

    __slots__ = ("ring", "potential", "p1", "p0")

    def __init__(self, potential: Polynomial, p1: GradedMatrix, p0: GradedMatrix, check: bool = True):
        ring = potential.ring
        if potential.is_zero or not potential.is_homogeneous or potential.degree <= 0:
            raise MFError("potential must be homogeneous of positive degree")
        if p1.ring != ring or p0.ring != ring:
            raise MFError("matrices over a different ring")
        if p1.degree != 0 or p0.degree != potential.degree:
            raise MFError("p1 must have degree 0 and p0 degree deg W")
        if p1.source != p0.target or p1.target != p0.source:
            raise MFError("p1 and p0 must connect the same pair of modules")
        if p1.source.rank != p1.target.rank:
            raise MFError("the two modules must have equal rank")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "potential", potential)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p0", p0)
        if check:
            report = mf_validate(self)
            if not report["valid"]:
                raise MFError("not a matrix factorization: " + report["failures"][0])

    def __setattr__(self, name, value):
        raise AttributeError("MatrixFactorization objects are immutable")

    @property
    def module1(self) -> FreeModule:
        return self.p1.source

    @property
    def module0(self) -> FreeModule:
        return self.p1.target

    @property
    def rank(self) -> int:
        return self.module1.rank

    @property
    def is_zero_object(self) -> bool:
        return self.rank == 0

    def __repr__(self):
        return (
            f"MF(W={self.potential}; p1={self.p1.entries}; p0={self.p0.entries}; "
            f"gens {list(self.module1.gen_degrees)}|{list(self.module0.gen_degrees)})"
        )

    # --- constructors -----------------------------------------------------

    @staticmethod
    def zero(potential: Polynomial) -> "MatrixFactorization":
        ring = potential.ring
        empty = FreeModule(ring, ())
        z = GradedMatrix.zero(empty, empty, 0)
        z0 = GradedMatrix.zero(empty, empty, potential.degree)
        return MatrixFactorization(potential, z, z0, check=False)

    @staticmethod
    def from_factor(potential: Polynomial, u: Polynomial, gen0: int = 0) -> "MatrixFactorization":
        """Rank-1 factorization (u, W/u) when u divides W exactly."""
        ring = potential.ring
        if u.is_zero or not u.is_homogeneous:
            raise MFError("factor must be nonzero homogeneous")
        v = _poly_divide(potential, u)
        if v is None:
            raise MFError("factor does not divide the potential")
        module0 = FreeModule(ring, (gen0,))
        module1 = FreeModule(ring, (gen0 + u.degree,))
        p1 = GradedMatrix(module1, module0, 0, ((u,),))
        p0 = GradedMatrix(module0, module1, potential.degree, ((v,),))
        return MatrixFactorization(potential, p1, p0)

    # --- functors on objects -------------------------------------------------

    def shift(self) -> "MatrixFactorization":
        """Translation [1]: swap components, twist, negate both maps."""
        d = self.potential.degree
        new1 = self.module0
        new0 = self.module1.twist(d)
        p1 = GradedMatrix(new1, new0, 0, (-self.p0).entries)
        p0 = GradedMatrix(new0, new1, d, (-self.p1).entries)
        return MatrixFactorization(self.potential, p1, p0, check=False)

    def shift_by(self, p: int) -> "MatrixFactorization":
        """[p], odd part by one shift, even part by the twist (p/2) * d."""
        m, r = divmod(p, 2)
        out = self.shift() if r else self
        return out.twist(m * self.potential.degree)

    def twist(self, q: int) -> "MatrixFactorization":
        if q == 0:
            return self
        return MatrixFactorization(
            self.potential, self.p1.twist(q), self.p0.twist(q), check=False
        )

    def dual(self) -> "MatrixFactorization":
        """Transpose factorization on the dual modules."""
        return MatrixFactorization(
            self.potential, self.p1.transpose_dual(), self.p0.transpose_dual(), check=False
        )

    def direct_sum(self, other: "MatrixFactorization") -> "MatrixFactorization":
        _check_same_potential(self, other)
        ring = self.ring
        m1 = FreeModule(ring, self.module1.gen_degrees + other.module1.gen_degrees)
        m0 = FreeModule(ring, self.module0.gen_degrees + other.module0.gen_degrees)
        d = self.potential.degree
        z01 = GradedMatrix.zero(other.module1, self.module0, 0)
        z10 = GradedMatrix.zero(self.module1, other.module0, 0)
        p1 = block_matrix([[self.p1, z01], [z10, other.p1]], m1, m0, 0)
        w01 = GradedMatrix.zero(other.module0, self.module1, d)
        w10 = GradedMatrix.zero(self.module0, other.module1, d)
        p0 = block_matrix([[self.p0, w01], [w10, other.p0]], m0, m1, d)
        return MatrixFactorization(self.potential, p1, p0, check=False)

    def minimize(self) -> tuple:
        """Split off contractible (unit-entry) summands.

        Returns (reduced factorization, number of rank-1 trivial summands
        removed).  A unit entry in p1 or p0 isolates a summand of the shape
        (1, W) or (W, 1), invisible in the homotopy category.
        """
        p1_rows = [list(row) for row in self.p1.entries]
        p0_rows = [list(row) for row in self.p0.entries]
        degs1 = list(self.module1.gen_degrees)
        degs0 = list(self.module0.gen_degrees)
        field = self.ring.field
        removed = 0

        def find_unit(rows):
            for i, row in enumerate(rows):
                for j, p in enumerate(row):
                    if p.is_unit_constant():
                        return i, j
            return None

        def pivot(rows, other_rows, i, j):
            # rows: the matrix with the unit at (i, j); clears row i and col j,
            # applying the inverse base changes to the complementary matrix.
            u = rows[i][j].constant_value()
            inv = field.inv(u)
            ncols = len(rows[i])
            nrows = len(rows)
            for jj in range(ncols):
                if jj == j or rows[i][jj].is_zero:
                    continue
                f = rows[i][jj].scale(inv)
                for r in range(nrows):
                    rows[r][jj] = rows[r][jj] - f * rows[r][j]
                # inverse column op on the other matrix: row j += f * row jj
                other_rows[j] = [a + f * b for a, b in zip(other_rows[j], other_rows[jj])]
            for ii in range(nrows):
                if ii == i or rows[ii][j].is_zero:
                    continue
                f = rows[ii][j].scale(inv)
                rows[ii] = [a - f * b for a, b in zip(rows[ii], rows[i])]
                # inverse row op on the other matrix: col i += f * col ii
                for r in range(len(other_rows)):
                    other_rows[r][i] = other_rows[r][i] + f * other_rows[r][ii]

        while True:
            hit = find_unit(p1_rows)
            if hit is not None:
                i, j = hit  # row i in module0, column j in module1
                pivot(p1_rows, p0_rows, i, j)
                for r in range(len(p1_rows)):
                    del p1_rows[r][j]
                del p1_rows[i]
                for r in range(len(p0_rows)):
                    del p0_rows[r][i]
                del p0_rows[j]
                del degs1[j]
                del degs0[i]
                removed += 1
                continue
            hit = find_unit(p0_rows)
            if hit is not None:
                i, j = hit  # row i in module1, column j in module0
                pivot(p0_rows, p1_rows, i, j)
                for r in range(len(p0_rows)):
                    del p0_rows[r][j]
                del p0_rows[i]
                for r in range(len(p1_rows)):
                    del p1_rows[r][i]
                del p1_rows[j]
                del degs0[j]
                del degs1[i]
                removed += 1
                continue
            break
        m1 = FreeModule(self.ring, degs1)
        m0 = FreeModule(self.ring, degs0)
        p1 = GradedMatrix(m1, m0, 0, p1_rows)
        p0 = GradedMatrix(m0, m1, self.potential.degree, p0_rows)
        return MatrixFactorization(self.potential, p1, p0), removed


def _poly_divide(num: Polynomial, den: Polynomial) -> Optional[Polynomial]:
    """Exact division of homogeneous polynomials, None if it fails."""
    ring = num.ring
    field = ring.field
    rem = num
    q_terms: dict = {}
    lead = den.leading_term()
    if lead is None:
        return None
    le, lc = lead
    while not rem.is_zero:
        re, rc = rem.leading_term()
        diff = tuple(a - b for a, b in zip(re, le))
        if any(e < 0 for e in diff):
            return None
        c = field.div(rc, lc)
        q_terms[diff] = c
        rem = rem - den.monomial_times(diff, c)
    return Polynomial(ring, q_terms)


def _check_same_potential(x: MatrixFactorization, y: MatrixFactorization):
    if x.ring != y.ring or x.potential != y.potential:
        raise MFError("objects over different potentials")


def mf_validate(x: MatrixFactorization) -> dict:
    """Report: both composites equal W * Id and all degree bookkeeping holds."""
    failures = []
    for name, mat in (("p1", x.p1), ("p0", x.p0)):
        for (i, j, want, got) in mat.violations():
            failures.append(f"{name} entry ({i},{j}) forced degree {want}, got {got}")
    try:
        c01 = x.p0.compose(x.p1)
        want01 = (
            GradedMatrix.scalar(x.module1, x.potential)
            if x.rank
            else GradedMatrix.zero(x.module1, x.module1, x.potential.degree)
        )
        if c01 != want01:
            failures.append("p0 p1 differs from W * Id on the degree-0 module")
        c10 = x.p1.compose(x.p0)
        want10 = (
            GradedMatrix.scalar(x.module0, x.potential)
            if x.rank
            else GradedMatrix.zero(x.module0, x.module0, x.potential.degree)
        )
        if c10 != want10:
            failures.append("p1 p0 differs from W * Id on the degree-0 module")
    except GradingError as exc:
        failures.append(f"composition failed: {exc}")
    return {"valid": not failures, "failures": failures}


@dataclass
class MFMorphism:
    """Pair of degree-0 maps intertwining both differentials."""

    source: MatrixFactorization
    target: MatrixFactorization
    f1: GradedMatrix
    f0: GradedMatrix

    def validate(self) -> bool:
        x, y = self.source, self.target
        return (
            y.p1.compose(self.f1) == self.f0.compose(x.p1)
            and self.f1.compose(x.p0) == y.p0.compose(self.f0)
        )

    @staticmethod
    def identity(x: MatrixFactorization) -> "MFMorphism":
        return MFMorphism(
            x, x, GradedMatrix.identity(x.module1), GradedMatrix.identity(x.module0)
        )

    @staticmethod
    def zero(x: MatrixFactorization, y: MatrixFactorization) -> "MFMorphism":
        return MFMorphism(
            x,
            y,
            GradedMatrix.zero(x.module1, y.module1, 0),
            GradedMatrix.zero(x.module0, y.module0, 0),
        )

    def compose(self, other: "MFMorphism") -> "MFMorphism":
        return MFMorphism(
            other.source,
            self.target,
            self.f1.compose(other.f1),
            self.f0.compose(other.f0),
        )

    def __add__(self, other: "MFMorphism") -> "MFMorphism":
        return MFMorphism(self.source, self.target, self.f1 + other.f1, self.f0 + other.f0)

    def scale(self, c) -> "MFMorphism":
        return MFMorphism(self.source, self.target, self.f1.scale(c), self.f0.scale(c))

    def shift(self) -> "MFMorphism":
        """The morphism [1] between shifted objects (same components, swapped)."""
        d = self.source.potential.degree
        return MFMorphism(
            self.source.shift(),
            self.target.shift(),
            self.f0.retarget(
                self.source.shift().module1, self.target.shift().module1, 0
            ),
            self.f1.twist(d).retarget(
                self.source.shift().module0, self.target.shift().module0, 0
            ),
        )

    def twist(self, q: int) -> "MFMorphism":
        return MFMorphism(
            self.source.twist(q), self.target.twist(q), self.f1.twist(q), self.f0.twist(q)
        )


def mf_cone(f: MFMorphism) -> tuple:
    """Mapping cone with its two canonical triangle maps.

    Returns (cone, incl: target -> cone, proj: cone -> source[1]).  Block
    shape: c = [[differential of target, f-component], [0, -shifted source
    differential]].
    """
    x, y = f.source, f.target
    _check_same_potential(x, y)
    ring = x.ring
    d = x.potential.degree
    xs = x.shift()
    c1 = FreeModule(ring, y.module1.gen_degrees + xs.module1.gen_degrees)
    c0 = FreeModule(ring, y.module0.gen_degrees + xs.module0.gen_degrees)
    z_bl = GradedMatrix.zero(y.module1, xs.module0, 0)
    p1 = block_matrix(
        [
            [y.p1, f.f0.retarget(xs.module1, y.module0, 0)],
            [z_bl, xs.p1],
        ],
        c1,
        c0,
        0,
    )
    z_bl0 = GradedMatrix.zero(y.module0, xs.module1, d)
    p0 = block_matrix(
        [
            [y.p0, f.f1.twist(d).retarget(xs.module0, y.module1, d)],
            [z_bl0, xs.p0],
        ],
        c0,
        c1,
        d,
    )
    cone = MatrixFactorization(x.potential, p1, p0)
    incl = MFMorphism(
        y,
        cone,
        block_matrix(
            [[GradedMatrix.identity(y.module1)], [GradedMatrix.zero(y.module1, xs.module1, 0)]],
            y.module1,
            c1,
            0,
        ),
        block_matrix(
            [[GradedMatrix.identity(y.module0)], [GradedMatrix.zero(y.module0, xs.module0, 0)]],
            y.module0,
            c0,
            0,
        ),
    )
    proj = MFMorphism(
        cone,
        xs,
        block_matrix(
            [[GradedMatrix.zero(y.module1, xs.module1, 0), -GradedMatrix.identity(xs.module1)]],
            c1,
            xs.module1,
            0,
        ),
        block_matrix(
            [[GradedMatrix.zero(y.module0, xs.module0, 0), -GradedMatrix.identity(xs.module0)]],
            c0,
            xs.module0,
            0,
        ),
    )
    return cone, incl, proj


# --- Hom spaces ------------------------------------------------------------------


def _entry_coords(kind: str, src: FreeModule, tgt: FreeModule, delta: int):
    """Coordinates (kind, i, j, mono) for a degree-delta matrix tgt x src."""
    ring = src.ring
    out = []
    for i, gi in enumerate(tgt.gen_degrees):
        for j, gj in enumerate(src.gen_degrees):
            for mono in ring.monomials_of_degree(gj - gi + delta):
                out.append((kind, i, j, mono))
    return out


class _CoordSpace:
    def __init__(self, coords):
        self.coords = coords
        self.index = {c: k for k, c in enumerate(coords)}

    def __len__(self):
        return len(self.coords)


def _expand_into(row: dict, space: _CoordSpace, kind: str, i: int, j: int, poly: Polynomial, field, sign=1):
    """row += sign * poly placed at matrix entry (kind, i, j), by monomial."""
    for exps, c in poly.terms.items():
        key = (kind, i, j, exps)
        idx = space.index.get(key)
        if idx is None:
            raise MFError("expansion outside the coordinate space (degree leak)")
        val = field.add(row.get(idx, field.zero), c if sign == 1 else field.neg(c))
        if val:
            row[idx] = val
        else:
            row.pop(idx, None)


class MFHomSpace:
    """Hom(X, Y[p](q)) in the homotopy category, with explicit machinery.

    ``dimension`` is the rank of the morphism solution space minus the rank
    of the null-homotopy image inside it; ``basis`` holds representative
    morphisms of a quotient basis.
    """

    def __init__(self, x: MatrixFactorization, y: MatrixFactorization, shift: int = 0, twist: int = 0, want_basis: bool = True):
        _check_same_potential(x, y)
        self.x = x
        self.y = y
        self.shift = shift
        self.twist = twist
        self.target = y.shift_by(shift).twist(twist)
        self._build(want_basis)

    def _build(self, want_basis: bool):
        x, t = self.x, self.target
        ring = x.ring
        field = ring.field
        d = x.potential.degree
        f_coords = _entry_coords("f1", x.module1, t.module1, 0) + _entry_coords(
            "f0", x.module0, t.module0, 0
        )
        self.space = _CoordSpace(f_coords)
        rows: list = []
        # commuting squares: t.p1 f1 = f0 x.p1 and f1 x.p0 = t.p0 f0
        for a in range(t.module0.rank):
            for b in range(x.module1.rank):
                forced = x.module1.gen_degrees[b] - t.module0.gen_degrees[a]
                for mono_out in ring.monomials_of_degree(forced):
                    rows.append(("C1", a, b, mono_out))
        for a in range(t.module1.rank):
            for b in range(x.module0.rank):
                forced = x.module0.gen_degrees[b] - t.module1.gen_degrees[a] + d
                for mono_out in ring.monomials_of_degree(forced):
                    rows.append(("C2", a, b, mono_out))
        row_index = {r: k for k, r in enumerate(rows)}
        dense_rows = [dict() for _ in rows]

        def add_block(cons: str, a: int, b: int, kind: str, i: int, j: int, mult: Polynomial, sign: int):
            if mult.is_zero:
                return
            src = x.module1 if kind == "f1" else x.module0
            tgt = t.module1 if kind == "f1" else t.module0
            for mono_u in ring.monomials_of_degree(
                src.gen_degrees[j] - tgt.gen_degrees[i]
            ):
                coord_idx = self.space.index[(kind, i, j, mono_u)]
                for exps, c in mult.terms.items():
                    total = tuple(p + q for p, q in zip(exps, mono_u))
                    ridx = row_index.get((cons, a, b, total))
                    if ridx is None:
                        raise MFError("constraint expansion out of window")
                    row = dense_rows[ridx]
                    val = field.add(
                        row.get(coord_idx, field.zero),
                        c if sign == 1 else field.neg(c),
                    )
                    if val:
                        row[coord_idx] = val
                    else:
                        row.pop(coord_idx, None)

        for a in range(t.module0.rank):
            for b in range(x.module1.rank):
                for k in range(t.module1.rank):
                    add_block("C1", a, b, "f1", k, b, t.p1.entries[a][k], 1)
                for k in range(x.module0.rank):
                    add_block("C1", a, b, "f0", a, k, x.p1.entries[k][b], -1)
        for a in range(t.module1.rank):
            for b in range(x.module0.rank):
                for k in range(x.module1.rank):
                    add_block("C2", a, b, "f1", a, k, x.p0.entries[k][b], 1)
                for k in range(t.module0.rank):
                    add_block("C2", a, b, "f0", k, b, t.p0.entries[a][k], -1)

        n = len(self.space)
        if n == 0:
            self.solutions = []
            self.h_columns = []
            self.dimension = 0
            self.basis = []
            self._quotient_cols = []
            return
        if not rows:
            self.solutions = [
                [field.one if i == j else field.zero for i in range(n)]
                for j in range(n)
            ]
        else:
            dense = linalg.zeros(field, len(rows), n)
            if field.is_prime_field:
                for r, row in enumerate(dense_rows):
                    for cidx, val in row.items():
                        dense[r, cidx] = val
            else:
                for r, row in enumerate(dense_rows):
                    for cidx, val in row.items():
                        dense[r][cidx] = val
            self.solutions = linalg.nullspace(field, dense)

        # homotopy operator (s, t) |-> (t.p0 t + s x.p1, t x.p0 + t.p1 s)
        s_coords = _entry_coords("s", x.module0, t.module1, 0)
        t_coords = _entry_coords("t", x.module1, t.module0, -d)
        h_cols = []
        for (kind, i, j, mono) in s_coords + t_coords:
            img: dict = {}
            if kind == "s":
                # f1 part: (s x.p1)[i][b] over b with multiplier x.p1[j][b]
                for b in range(x.module1.rank):
                    p = x.p1.entries[j][b]
                    if not p.is_zero:
                        _expand_into(img, self.space, "f1", i, b, p.monomial_times(mono, field.one), field)
                # f0 part: (t.p1 s)[a][j] over a with multiplier t.p1[a][i]
                for a in range(t.module0.rank):
                    p = t.p1.entries[a][i]
                    if not p.is_zero:
                        _expand_into(img, self.space, "f0", a, j, p.monomial_times(mono, field.one), field)
            else:
                # f1 part: (t.p0 t)[k][j] with multiplier t.p0[k][i]
                for k in range(t.module1.rank):
                    p = t.p0.entries[k][i]
                    if not p.is_zero:
                        _expand_into(img, self.space, "f1", k, j, p.monomial_times(mono, field.one), field)
                # f0 part: (t x.p0)[i][b] with multiplier x.p0[j][b]
                for b in range(x.module0.rank):
                    p = x.p0.entries[j][b]
                    if not p.is_zero:
                        _expand_into(img, self.space, "f0", i, b, p.monomial_times(mono, field.one), field)
            col = [field.zero] * n
            for idx, val in img.items():
                col[idx] = val
            h_cols.append(col)
        self.h_columns = h_cols

        h_mat = linalg.from_columns(field, h_cols, n)
        h_rank = linalg.rank(field, h_mat)
        self.dimension = len(self.solutions) - h_rank

        self._quotient_cols = []
        self.basis = []
        if want_basis and self.dimension:
            sol_mat = linalg.from_columns(field, self.solutions, n)
            stacked = linalg.hstack(field, h_mat, sol_mat)
            _, pivots = linalg.rref(field, stacked)
            chosen = [p - len(h_cols) for p in pivots if p >= len(h_cols)]
            self._quotient_cols = chosen
            for jsel in chosen:
                self.basis.append(self._coords_to_morphism(self.solutions[jsel]))

    # -- conversions ------------------------------------------------------------

    def _coords_to_morphism(self, vec) -> MFMorphism:
        x, t = self.x, self.target
        ring = x.ring
        grids = {
            "f1": [
                [dict() for _ in range(x.module1.rank)] for _ in range(t.module1.rank)
            ],
            "f0": [
                [dict() for _ in range(x.module0.rank)] for _ in range(t.module0.rank)
            ],
        }
        for val, (kind, i, j, mono) in zip(vec, self.space.coords):
            if val:
                grids[kind][i][j][mono] = val
        f1 = GradedMatrix(
            x.module1,
            t.module1,
            0,
            [[Polynomial(ring, cell) for cell in row] for row in grids["f1"]],
        )
        f0 = GradedMatrix(
            x.module0,
            t.module0,
            0,
            [[Polynomial(ring, cell) for cell in row] for row in grids["f0"]],
        )
        return MFMorphism(self.x, self.target, f1, f0)

    def morphism_coords(self, mor: MFMorphism):
        """Flatten a morphism into this space's coordinates."""
        field = self.x.ring.field
        vec = [field.zero] * len(self.space)
        for kind, mat in (("f1", mor.f1), ("f0", mor.f0)):
            for i, row in enumerate(mat.entries):
                for j, p in enumerate(row):
                    for exps, c in p.terms.items():
                        vec[self.space.index[(kind, i, j, exps)]] = c
        return vec

    def class_coords(self, mor: MFMorphism):
        """Coordinates of the homotopy class in the chosen quotient basis."""
        field = self.x.ring.field
        n = len(self.space)
        if self.dimension == 0:
            return []
        cols = list(self.h_columns) + [self.solutions[j] for j in self._quotient_cols]
        mat = linalg.from_columns(field, cols, n)
        sol = linalg.solve(field, mat, self.morphism_coords(mor))
        if sol is None:
            raise MFError("morphism does not lie in the cocycle space")
        return sol[len(self.h_columns):]

    def is_null_homotopic(self, mor: MFMorphism) -> bool:
        field = self.x.ring.field
        if not self.h_columns:
            return all(not c for c in self.morphism_coords(mor))
        mat = linalg.from_columns(field, self.h_columns, len(self.space))
        return linalg.solve(field, mat, self.morphism_coords(mor)) is not None


def mf_hom(x: MatrixFactorization, y: MatrixFactorization, shift: int = 0, twist: int = 0, want_basis: bool = True) -> MFHomSpace:
    """Morphisms X -> Y[shift](twist) modulo homotopy."""
    return MFHomSpace(x, y, shift, twist, want_basis=want_basis)


def mf_hom_dim(x, y, shift=0, twist=0) -> int:
    return MFHomSpace(x, y, shift, twist, want_basis=False).dimension


def is_contractible(x: MatrixFactorization) -> bool:
    """True when the identity is null-homotopic (the object is zero in DGrB)."""
    if x.is_zero_object:
        return True
    space = MFHomSpace(x, x, 0, 0, want_basis=False)
    return space.is_null_homotopic(MFMorphism.identity(x))


def null_homotopic(mor: MFMorphism) -> bool:
    space = MFHomSpace(mor.source, mor.target, 0, 0, want_basis=False)
    if mor.target is not space.target and mor.target != space.target:
        raise MFError("morphism target mismatch")
    return space.is_null_homotopic(mor)


# --- certified Hom tables ----------------------------------------------------------


def _morphism_operator(x: MatrixFactorization, t: MatrixFactorization):
    """The commuting-square conditions as one B-linear map of graded frees.

    Generators of the source track the matrix entries of (f1, f0) graded so
    that the degree-q slice is the morphism space into t twisted by q; the
    kernel is then the total module of morphisms over all twists.
    """
    ring = x.ring
    d = x.potential.degree
    u_degrees = []
    u_keys = []
    for i, gi in enumerate(t.module1.gen_degrees):
        for j, gj in enumerate(x.module1.gen_degrees):
            u_keys.append(("f1", i, j))
            u_degrees.append(gi - gj)
    for i, gi in enumerate(t.module0.gen_degrees):
        for j, gj in enumerate(x.module0.gen_degrees):
            u_keys.append(("f0", i, j))
            u_degrees.append(gi - gj)
    v_degrees = []
    v_keys = []
    for a, ga in enumerate(t.module0.gen_degrees):
        for b, gb in enumerate(x.module1.gen_degrees):
            v_keys.append(("C1", a, b))
            v_degrees.append(ga - gb)
    for a, ga in enumerate(t.module1.gen_degrees):
        for b, gb in enumerate(x.module0.gen_degrees):
            v_keys.append(("C2", a, b))
            v_degrees.append(ga - gb - d)
    u_index = {k: n for n, k in enumerate(u_keys)}
    zero = ring.zero()
    grid = [[zero] * len(u_keys) for _ in v_keys]
    for r, (cons, a, b) in enumerate(v_keys):
        if cons == "C1":
            for k in range(t.module1.rank):
                p = t.p1.entries[a][k]
                if not p.is_zero:
                    c = u_index[("f1", k, b)]
                    grid[r][c] = grid[r][c] + p
            for k in range(x.module0.rank):
                p = x.p1.entries[k][b]
                if not p.is_zero:
                    c = u_index[("f0", a, k)]
                    grid[r][c] = grid[r][c] - p
        else:
            for k in range(x.module1.rank):
                p = x.p0.entries[k][b]
                if not p.is_zero:
                    c = u_index[("f1", a, k)]
                    grid[r][c] = grid[r][c] + p
            for k in range(t.module0.rank):
                p = t.p0.entries[a][k]
                if not p.is_zero:
                    c = u_index[("f0", k, b)]
                    grid[r][c] = grid[r][c] - p
    u_mod = FreeModule(ring, u_degrees)
    v_mod = FreeModule(ring, v_degrees)
    return GradedMatrix(u_mod, v_mod, 0, grid)


def _sector_support(x: MatrixFactorization, y: MatrixFactorization, parity: int):
    """Twist-support certificate for Hom(X, Y[parity](q)) over all q.

    Returns (q_min, q_gen) where morphisms vanish for q < q_min by forced
    entry degrees, and the total morphism module is generated in twists
    <= q_gen (from a Groebner kernel), so that vanishing on the window
    (q_gen, q_gen + max weight] certifies vanishing for all larger twists.
    Either bound is None when the sector carries no coordinates at all.
    """
    t = y.shift_by(parity)
    bases = []
    for i, gi in enumerate(t.module1.gen_degrees):
        for j, gj in enumerate(x.module1.gen_degrees):
            bases.append(gi - gj)
    for i, gi in enumerate(t.module0.gen_degrees):
        for j, gj in enumerate(x.module0.gen_degrees):
            bases.append(gi - gj)
    if not bases:
        return None, None
    q_min = min(bases)
    op = _morphism_operator(x, t)
    ker = groebner_kernel(op)
    if ker.source.rank == 0:
        return q_min, None
    q_gen = max(ker.source.gen_degrees)
    return q_min, q_gen


def mf_hom_table(
    x: MatrixFactorization,
    y: MatrixFactorization,
    shifts: range,
    certify: bool = False,
    certify_budget: int | None = None,
) -> dict:
    """dim Hom(X, Y[p]) over the shift range, optionally with a two-sided
    vanishing certificate for all shifts beyond it.

    The certificate per parity sector: below, all forced entry degrees are
    negative outside the support; above, the total morphism module over all
    twists is finitely generated and killed by W, so once the Groebner bound
    on its generator twists is passed and a max-weight window of zero cells
    is verified, every higher cell vanishes.
    """
    _check_same_potential(x, y)
    d = x.potential.degree
    amax = max(x.ring.weights)
    dims = {p: mf_hom_dim(x, y, p) for p in shifts}
    out = {"dims": dims, "certified": False, "extra": {}, "support": {}}
    if not certify:
        return out
    certified = True
    extra = {}
    budget = certify_budget if certify_budget is not None else 8 * amax + d
    for parity in (0, 1):
        q_min, q_gen = _sector_support(x, y, parity)
        out["support"][parity] = (q_min, q_gen)
        if q_min is None or (x.is_zero_object or y.is_zero_object):
            continue
        if q_gen is None:
            continue  # no morphisms at any twist in this sector
        # scan upward for a max-weight window of zero cells: the total
        # morphism module is generated in twists <= q_gen, so such a window
        # certifies vanishing everywhere above it
        window_dims = {}
        run_start = None
        run = 0
        q = q_gen + 1
        while q <= q_gen + budget:
            dim_q = MFHomSpace(x, y, parity, q, want_basis=False).dimension
            window_dims[q] = dim_q
            if dim_q == 0:
                run += 1
                if run == amax:
                    run_start = q - amax + 1
                    break
            else:
                run = 0
            q += 1
        if run_start is None:
            certified = False
            break
        # all shifts of this parity with a twist inside the possibly-nonzero
        # support [q_min, run_start) are reported explicitly
        m_lo = -((-q_min) // d)  # ceil(q_min / d)
        m_hi = (run_start - 1) // d
        for m in range(m_lo, m_hi + 1):
            p = parity + 2 * m
            if p not in dims:
                q_cell = m * d
                cached = window_dims.get(q_cell)
                extra[p] = cached if cached is not None else mf_hom_dim(x, y, p)
    out["certified"] = certified
    out["extra"] = extra
    return out


# --- isomorphism testing --------------------------------------------------------------


def _hilbert_of_cok(x: MatrixFactorization, lo: int = 0, hi: int = 12) -> tuple:
    from . import slices

    field = x.ring.field
    out = []
    for e in range(lo, hi + 1):
        ambient = slices.slice_dim(x.module0, e)
        dense = slices.matrix_slice(x.p1, e)
        out.append(ambient - linalg.rank(field, dense))
    return tuple(out)


def mf_is_isomorphic(
    x: MatrixFactorization, y: MatrixFactorization, seed: int = 1, trials: int = 12
) -> dict:
    """Search for mutually inverse homotopy classes between X and Y.

    Returns a dict with ``isomorphic`` (True or "no witness found"), the
    witness pair when found, and discriminating invariants when not.  The
    search solves for a two-sided inverse of seeded random combinations of a
    Hom basis; failure is a semi-decision, so refutation data is attached.
    """
    _check_same_potential(x, y)
    if is_contractible(x) and is_contractible(y):
        return {"isomorphic": True, "witness": (MFMorphism.zero(x, y), MFMorphism.zero(y, x)), "trials": 0}
    hom_xy = mf_hom(x, y)
    hom_yx = mf_hom(y, x)
    end_x = mf_hom(x, x)
    end_y = mf_hom(y, y)
    report = {
        "hom_dims": (hom_xy.dimension, hom_yx.dimension),
        "end_dims": (end_x.dimension, end_y.dimension),
    }
    if hom_xy.dimension == 0 or hom_yx.dimension == 0:
        report["isomorphic"] = "no witness found"
        report["cok_hilbert"] = (_hilbert_of_cok(x), _hilbert_of_cok(y))
        return report
    field = x.ring.field
    id_x = end_x.class_coords(MFMorphism.identity(x))
    id_y = end_y.class_coords(MFMorphism.identity(y))
    rng = random.Random(seed)

    def random_coeff():
        if field.is_prime_field:
            return rng.randrange(field.p)
        return field.of(rng.randrange(-5, 6))

    for trial in range(trials):
        if trial == 0:
            coeffs = [field.one] * hom_xy.dimension
        else:
            coeffs = [random_coeff() for _ in range(hom_xy.dimension)]
        phi = None
        for c, b in zip(coeffs, hom_xy.basis):
            term = b.scale(c)
            phi = term if phi is None else phi + term
        # solve sum_j psi_j (v_j phi) = id_x in End(X) quotient coordinates
        cols = []
        for v in hom_yx.basis:
            cols.append(end_x.class_coords(v.compose(phi)))
        mat = linalg.from_columns(field, cols, len(id_x))
        sol = linalg.solve(field, mat, id_x)
        if sol is None:
            continue
        psi = None
        for c, v in zip(sol, hom_yx.basis):
            term = v.scale(c)
            psi = term if psi is None else psi + term
        other = end_y.class_coords(phi.compose(psi))
        if list(other) == list(id_y):
            report["isomorphic"] = True
            report["witness"] = (phi, psi)
            report["trials"] = trial + 1
            return report
        # phi has a left inverse but not a two-sided one; try solving the
        # right-inverse system too before moving on
        cols_r = [end_y.class_coords(phi.compose(v)) for v in hom_yx.basis]
        mat_r = linalg.from_columns(field, cols_r, len(id_y))
        sol_r = linalg.solve(field, mat_r, id_y)
        if sol_r is not None:
            psi_r = None
            for c, v in zip(sol_r, hom_yx.basis):
                term = v.scale(c)
                psi_r = term if psi_r is None else psi_r + term
            # left and right inverses coincide in any category
            if list(end_x.class_coords(psi_r.compose(phi))) == list(id_x):
                report["isomorphic"] = True
                report["witness"] = (phi, psi_r)
                report["trials"] = trial + 1
                return report
    report["isomorphic"] = "no witness found"
    report["cok_hilbert"] = (_hilbert_of_cok(x), _hilbert_of_cok(y))
    return report
