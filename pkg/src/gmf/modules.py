"""Finitely generated graded modules over B and over the hypersurface A = B/W.

A module is a presentation: generator degrees plus a degree-0 relation
matrix into the free cover.  Modules over A are carried as B-presentations
with an attached potential; W-multiples of the generators are appended
lazily wherever a computation needs the honest B-picture.  Dimension-level
facts (Hilbert functions, Hom spaces, Ext tables) are computed degreewise
with dense exact linear algebra, independently of the Groebner engine that
produces kernels and resolutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from . import linalg, slices
from .freemod import FreeModule, GradedMatrix
from .groebner import (
    column_vec,
    element_vec,
    groebner,
    kernel,
    minimal_generator_vecs,
    minimal_resolution,
    minimize_presentation,
    vecs_to_matrix,
)
from .rings import GradedRing, Polynomial


class ModuleError(ValueError):
    pass


class ModulePresentation:
    """Graded module presented by generator degrees and homogeneous relations.

    ``potential`` switches the base ring: None means a B-module, a nonzero
    homogeneous W means a module over A = B/W whose presentation implicitly
    contains the relations W * e_j.
    """

    __slots__ = ("ring", "potential", "gen_degrees", "relations", "mcm_certified")

    def __init__(
        self,
        ring: GradedRing,
        gen_degrees: Sequence[int],
        relations: Optional[GradedMatrix] = None,
        potential: Optional[Polynomial] = None,
        mcm_certified: bool = False,
    ):
        gen_degrees = tuple(int(g) for g in gen_degrees)
        cover = FreeModule(ring, gen_degrees)
        if relations is None:
            relations = GradedMatrix.zero(FreeModule(ring, ()), cover, 0)
        if relations.target != cover:
            raise ModuleError("relation matrix must land in the free cover")
        if relations.degree != 0:
            raise ModuleError("relation matrix must have degree 0")
        if potential is not None:
            if potential.is_zero or not potential.is_homogeneous:
                raise ModuleError("potential must be nonzero homogeneous")
            if potential.ring != ring:
                raise ModuleError("potential from a different ring")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "potential", potential)
        object.__setattr__(self, "gen_degrees", gen_degrees)
        object.__setattr__(self, "relations", relations)
        object.__setattr__(self, "mcm_certified", bool(mcm_certified))

    def __setattr__(self, name, value):
        raise AttributeError("ModulePresentation objects are immutable")

    @property
    def over_a(self) -> bool:
        return self.potential is not None

    @property
    def cover(self) -> FreeModule:
        return FreeModule(self.ring, self.gen_degrees)

    @property
    def rank(self) -> int:
        return len(self.gen_degrees)

    def __repr__(self):
        ring = "A" if self.over_a else "B"
        return f"Module[{ring}; gens {list(self.gen_degrees)}; {self.relations.source.rank} relations]"

    def b_matrix(self) -> GradedMatrix:
        """Relations as a B-module: explicit columns plus W * generators."""
        if not self.over_a or self.rank == 0:
            return self.relations
        w = self.potential
        cover = self.cover
        w_cols = [
            [w if i == j else self.ring.zero() for i in range(self.rank)]
            for j in range(self.rank)
        ]
        degrees = tuple(self.relations.source.gen_degrees) + tuple(
            g + w.degree for g in self.gen_degrees
        )
        src = FreeModule(self.ring, degrees)
        return GradedMatrix.from_columns(
            src, cover, 0, self.relations.columns() + w_cols
        )

    def twist(self, q: int) -> "ModulePresentation":
        return ModulePresentation(
            self.ring,
            tuple(g - q for g in self.gen_degrees),
            self.relations.twist(q),
            self.potential,
            mcm_certified=self.mcm_certified,
        )

    def minimize(self) -> "ModulePresentation":
        """Unit-pivot generators away, then prune the relation columns."""
        gens, rel = minimize_presentation(self.gen_degrees, self.relations)
        cover = FreeModule(self.ring, gens)
        vecs = [column_vec(rel, j) for j in range(rel.source.rank)]
        vecs = minimal_generator_vecs(vecs, cover, potential=self.potential)
        rel = vecs_to_matrix(vecs, cover)
        return ModulePresentation(
            self.ring, gens, rel, self.potential, mcm_certified=self.mcm_certified
        )

    def is_zero(self) -> bool:
        return self.minimize().rank == 0

    def element_in_relations(self, element: Sequence[Polynomial]) -> bool:
        gb = groebner(
            [column_vec(self.b_matrix(), j) for j in range(self.b_matrix().source.rank)],
            self.cover,
        )
        return not gb.normal_form_vec(element_vec(element))


def free_module_presentation(
    ring: GradedRing, gen_degrees, potential: Optional[Polynomial] = None
) -> ModulePresentation:
    return ModulePresentation(ring, gen_degrees, None, potential)


def residue_field_presentation(
    ring: GradedRing, potential: Optional[Polynomial] = None, twist: int = 0
) -> ModulePresentation:
    """k = B/(x_1..x_n) (or A/m over A), twisted so the generator is in degree -twist."""
    cover = FreeModule(ring, (0,))
    cols = [[ring.variable(v)] for v in ring.variables]
    src = FreeModule(ring, ring.weights)
    rel = GradedMatrix.from_columns(src, cover, 0, cols)
    return ModulePresentation(ring, (0,), rel, potential).twist(twist)


# --- Hilbert functions -------------------------------------------------------


def hilbert_function(module: ModulePresentation, lo: int, hi: int) -> list:
    """dim_k M_e for e in [lo, hi], each degree an independent dense rank."""
    if hi < lo:
        raise ModuleError("empty degree window")
    cover = module.cover
    b = module.b_matrix()
    field = module.ring.field
    out = []
    for e in range(lo, hi + 1):
        ambient = slices.slice_dim(cover, e)
        if ambient == 0:
            out.append(0)
            continue
        dense = slices.matrix_slice(b, e)
        out.append(ambient - linalg.rank(field, dense))
    return out


def is_finite_dimensional(module: ModulePresentation, probe_hi: int | None = None) -> bool:
    """True when the Hilbert function is eventually zero.

    For a module generated in degrees <= D, max-weight consecutive zeros
    above D certify vanishing in all higher degrees, since each graded piece
    is spanned by variable multiples of lower ones.
    """
    if module.rank == 0:
        return True
    amax = max(module.ring.weights)
    top = max(module.gen_degrees)
    if probe_hi is None:
        # scale the probe by the relation degrees, else a long-lived cyclic
        # quotient (B/x^d for large d) looks infinite-dimensional
        rel_top = max(module.b_matrix().source.gen_degrees, default=top)
        probe_hi = max(top, rel_top) + 4 * amax * max(1, module.rank)
    hi = max(probe_hi, top + amax + 1)
    tail = hilbert_function(module, hi - amax + 1, hi)
    return all(v == 0 for v in tail)


# --- tails and syzygies ------------------------------------------------------


def tail_with_inclusion(module: ModulePresentation, p: int):
    """Presentation of M_{>=p} together with the inclusion into M's cover."""
    ring = module.ring
    amax = max(ring.weights) if ring.nvars else 1
    cover = module.cover
    gen_cols = []
    gen_degs = []
    for j, g in enumerate(module.gen_degrees):
        if g >= p:
            col = [ring.zero()] * module.rank
            col[j] = ring.one()
            gen_cols.append(col)
            gen_degs.append(g)
        else:
            for d in range(p, p + amax):
                for mono in ring.monomials_of_degree(d - g):
                    col = [ring.zero()] * module.rank
                    col[j] = ring.monomial(mono)
                    gen_cols.append(col)
                    gen_degs.append(d)
    if not gen_cols:
        zero = ModulePresentation(ring, (), None, module.potential)
        return zero, GradedMatrix.zero(FreeModule(ring, ()), cover, 0)
    src = FreeModule(ring, gen_degs)
    inclusion = GradedMatrix.from_columns(src, cover, 0, gen_cols)
    # relations: preimages of M's relation submodule under the inclusion
    b = module.b_matrix()
    big_src = FreeModule(
        ring, tuple(gen_degs) + tuple(b.source.gen_degrees)
    )
    combined = GradedMatrix.from_columns(
        big_src, cover, 0, inclusion.columns() + b.columns()
    )
    ker = kernel(combined)
    head_vecs = []
    n = len(gen_degs)
    for j in range(ker.source.rank):
        vec = column_vec(ker, j)
        head = {(pos, exps): c for (pos, exps), c in vec.items() if pos < n}
        if head:
            head_vecs.append(head)
    head_vecs = minimal_generator_vecs(head_vecs, src, potential=module.potential)
    rel = vecs_to_matrix(head_vecs, src)
    pres = ModulePresentation(ring, gen_degs, rel, module.potential)
    return pres, inclusion


def truncate_tail(module: ModulePresentation, p: int) -> ModulePresentation:
    """The tail submodule M_{>=p} with induced relations."""
    return tail_with_inclusion(module, p)[0]


def syzygy_module(module: ModulePresentation, k: int) -> ModulePresentation:
    """The k-th syzygy in a minimal resolution over the module's base ring."""
    if k < 0:
        raise ModuleError("negative syzygy index")
    if k == 0:
        return module
    res = minimal_resolution(module.relations, k + 1, potential=module.potential)
    if len(res) < k:
        return ModulePresentation(module.ring, (), None, module.potential)
    gens = res[k - 1].source.gen_degrees
    rel = res[k] if len(res) > k else None
    return ModulePresentation(module.ring, gens, rel, module.potential)


def is_mcm(module: ModulePresentation) -> bool:
    """Over a hypersurface: the minimal B-resolution has length at most 1."""
    if module.rank == 0:
        return True
    cover = module.cover
    b = module.b_matrix()
    vecs = [column_vec(b, j) for j in range(b.source.rank)]
    vecs = minimal_generator_vecs(vecs, cover)
    if not vecs:
        return True
    d1 = vecs_to_matrix(vecs, cover)
    return kernel(d1).source.rank == 0


# --- Ext against A ------------------------------------------------------------


def ext_against_A(
    module: ModulePresentation, i_max: int, lo: int, hi: int
) -> dict:
    """Graded dims of Ext^i_A(M, A) for 0 <= i <= i_max on the degree window.

    Computed as the cohomology of the A-dual of a minimal A-free resolution,
    degree by degree.
    """
    if not module.over_a:
        raise ModuleError("ext_against_A expects a module over A")
    w = module.potential
    res = minimal_resolution(module.relations, i_max + 1, potential=w)
    gens, _ = minimize_presentation(module.gen_degrees, module.relations)
    modules = [FreeModule(module.ring, gens)]
    for d in res:
        modules.append(d.source)
    duals = [d.transpose_dual() for d in res]
    # each dual map's slice rank serves both neighbouring cohomology spots
    ranks = [
        {e: slices.afree_rank(dual, e, w) for e in range(lo, hi + 1)}
        for dual in duals
    ]
    table: dict = {}
    for i in range(0, i_max + 1):
        if i >= len(modules):
            table[i] = {e: 0 for e in range(lo, hi + 1)}
            continue
        hom_i = modules[i].dual()
        row = {}
        for e in range(lo, hi + 1):
            dim_i = slices.afree_slice_dim(hom_i, e, w)
            rank_out = ranks[i][e] if i < len(duals) else 0
            rank_in = ranks[i - 1][e] if i >= 1 else 0
            row[e] = dim_i - rank_out - rank_in
        table[i] = row
    return table


def ext_vanishing_window(module: ModulePresentation, i_max: int = 4) -> tuple:
    """(vanishes, window) for Ext^i, 1 <= i <= i_max, on a derived window."""
    amax = max(module.ring.weights)
    top = max(module.gen_degrees, default=0)
    w_deg = module.potential.degree if module.over_a else 0
    slack = 3 * amax * max(1, module.rank)
    lo = -(abs(top) + w_deg + slack)
    hi = abs(top) + w_deg + slack
    table = ext_against_A(module, i_max, lo, hi)
    ok = all(
        v == 0 for i in range(1, i_max + 1) for v in table.get(i, {}).values()
    )
    return ok, (lo, hi)


# --- Hom spaces ----------------------------------------------------------------


@dataclass
class ModuleMap:
    """Degree-0 map of presented modules, given on covers."""

    source: ModulePresentation
    target: ModulePresentation
    matrix: GradedMatrix

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(other.source, self.target, self.matrix.compose(other.matrix))

    def is_zero_map(self) -> bool:
        tgt = self.target
        return all(
            tgt.element_in_relations(self.matrix.column(j))
            for j in range(self.matrix.source.rank)
        )


@dataclass
class HomSpace:
    """Finite-dimensional space of morphisms with an explicit basis."""

    source: object
    target: object
    dimension: int
    basis: list
    flags: dict = dc_field(default_factory=dict)


class _QuotientCache:
    """Per-call cache of slice quotients of a fixed presentation."""

    def __init__(self, module: ModulePresentation):
        self.module = module
        self.cover = module.cover
        self.b = module.b_matrix()
        self.field = module.ring.field
        self._cache: dict = {}

    def at(self, e: int) -> slices.SliceQuotient:
        if e not in self._cache:
            dense = slices.matrix_slice(self.b, e)
            self._cache[e] = slices.SliceQuotient(
                self.field, dense, slices.slice_dim(self.cover, e)
            )
        return self._cache[e]


def _hom_solution_space(M: ModulePresentation, N: ModulePresentation):
    """Solution space of degree-0 maps M -> N in quotient coordinates.

    Returns (nullspace basis, quotient cache, per-generator coordinate
    offsets).  Unknowns are the images of M's generators written in slice
    bases of N; constraints say M's relations map into N's relations.
    """
    if M.ring != N.ring or (M.potential or None) != (N.potential or None):
        raise ModuleError("Hom requires matching ring and potential")
    ring = M.ring
    field = ring.field
    nq = _QuotientCache(N)
    offsets = [0]
    for g in M.gen_degrees:
        offsets.append(offsets[-1] + nq.at(g).dim)
    total = offsets[-1]
    rows: list = []
    b = M.b_matrix()
    for c in range(b.source.rank):
        delta = b.source.gen_degrees[c]
        out_q = nq.at(delta)
        if out_q.dim == 0:
            continue
        block_cols = []
        for j, g in enumerate(M.gen_degrees):
            r = b.entries[j][c]
            in_q = nq.at(g)
            cols = []
            if in_q.dim and not r.is_zero and N.rank:
                mult = slices.matrix_slice(GradedMatrix.scalar(N.cover, r), g)
                for idx in range(in_q.dim):
                    amb = in_q.lift(
                        [field.one if t == idx else field.zero for t in range(in_q.dim)]
                    )
                    image = linalg.matvec(field, mult, amb)
                    cols.append(out_q.project(image))
            else:
                cols = [[field.zero] * out_q.dim for _ in range(in_q.dim)]
            block_cols.append(cols)
        for r_idx in range(out_q.dim):
            row = []
            for cols in block_cols:
                for col in cols:
                    row.append(col[r_idx])
            rows.append(row)
    if total == 0:
        return [], nq, offsets
    if not rows:
        basis = [
            [field.one if i == j else field.zero for i in range(total)]
            for j in range(total)
        ]
        return basis, nq, offsets
    dense = linalg.as_matrix(field, rows, total)
    return linalg.nullspace(field, dense), nq, offsets


def _solution_to_map(M, N, nq: _QuotientCache, offsets, coords) -> ModuleMap:
    ring = M.ring
    cols = []
    for j, g in enumerate(M.gen_degrees):
        q = nq.at(g)
        amb = q.lift(coords[offsets[j] : offsets[j + 1]])
        basis = slices.slice_basis(N.cover, g)
        polys = [dict() for _ in range(N.rank)]
        for coeff, (pos, mono) in zip(amb, basis):
            if coeff:
                polys[pos][mono] = coeff
        cols.append([Polynomial(ring, t) for t in polys])
    matrix = GradedMatrix.from_columns(M.cover, N.cover, 0, cols)
    return ModuleMap(M, N, matrix)


def _map_to_coords(M, N, nq: _QuotientCache, offsets, mmap: ModuleMap):
    field = M.ring.field
    out = []
    for j, g in enumerate(M.gen_degrees):
        q = nq.at(g)
        amb = slices.vector_slice(mmap.matrix.column(j), N.cover, g)
        out.extend(q.project(amb))
    return out


def module_hom(M: ModulePresentation, N: ModulePresentation) -> HomSpace:
    """All degree-0 module maps M -> N with an explicit basis."""
    sols, nq, offsets = _hom_solution_space(M, N)
    basis = [_solution_to_map(M, N, nq, offsets, v) for v in sols]
    return HomSpace(M, N, len(sols), basis, flags={"kind": "module_hom"})


def stable_hom(M: ModulePresentation, N: ModulePresentation) -> HomSpace:
    """Hom(M, N) modulo maps factoring through the free cover of N.

    Sound as the singularity-category Hom when Ext^i_A(M, A) = 0 for i > 0;
    the certification route taken is recorded in the flags.
    """
    flags = {"kind": "stable_hom"}
    if M.mcm_certified:
        flags["ext_certificate"] = "structural"
    elif is_mcm(M):
        flags["ext_certificate"] = "structural-mcm"
    else:
        ok, window = ext_vanishing_window(M)
        flags["ext_certificate"] = "window" if ok else "violated"
        flags["ext_window"] = window
        if not ok:
            flags["warning"] = "Ext vanishing precondition failed; quotient still computed"
    sols, nq, offsets = _hom_solution_space(M, N)
    if not sols:
        return HomSpace(M, N, 0, [], flags)
    field = M.ring.field
    cover_free = free_module_presentation(M.ring, N.gen_degrees, N.potential)
    free_sols, fq, foffsets = _hom_solution_space(M, cover_free)
    r_vectors = []
    for v in free_sols:
        fmap = _solution_to_map(M, cover_free, fq, foffsets, v)
        pmap = ModuleMap(M, N, fmap.matrix.retarget(M.cover, N.cover, 0))
        r_vectors.append(_map_to_coords(M, N, nq, offsets, pmap))
    total = len(sols[0])
    r_mat = linalg.from_columns(field, r_vectors, total)
    hom_mat = linalg.from_columns(field, sols, total)
    stacked = linalg.hstack(field, r_mat, hom_mat)
    _, pivots = linalg.rref(field, stacked)
    r_rank = sum(1 for p in pivots if p < len(r_vectors))
    chosen = [p - len(r_vectors) for p in pivots if p >= len(r_vectors)]
    basis = [_solution_to_map(M, N, nq, offsets, sols[j]) for j in chosen]
    dim = len(sols) - r_rank
    flags["factoring_rank"] = r_rank
    return HomSpace(M, N, dim, basis, flags)


def dsing_hom(M: ModulePresentation, N: ModulePresentation, p: int = 0) -> HomSpace:
    """Hom(M, N[p]) in the graded singularity category of A.

    Both arguments are replaced by syzygies: Hom(M, N[p]) =
    stable_hom(syz^k M, syz^(k-p) N) once syz^k M is maximal Cohen-Macaulay,
    with k >= max(p, 0) and a cap on the extra search depth.
    """
    if not M.over_a or not N.over_a:
        raise ModuleError("dsing_hom expects modules over A")
    cap = max(p, 0) + M.ring.nvars + 2
    current = M
    k = max(p, 0)
    current = syzygy_module(M, k) if k else M
    while not (current.mcm_certified or is_mcm(current)):
        k += 1
        if k > cap:
            raise ModuleError("syzygy cap exceeded while stabilizing the source")
        current = syzygy_module(current, 1)
    n_shifted = syzygy_module(N, k - p) if k - p else N
    if current.is_zero() or n_shifted.is_zero():
        return HomSpace(M, N, 0, [], flags={"kind": "dsing_hom", "depth": k, "zero": True})
    out = stable_hom(current.minimize(), n_shifted.minimize())
    out.flags["kind"] = "dsing_hom"
    out.flags["depth"] = k
    out.flags["shift"] = p
    return out


# --- Gorenstein parameter --------------------------------------------------------


def gorenstein_parameter(ring: GradedRing, w: Optional[Polynomial] = None) -> int:
    """Sum of the weights, minus deg W for the hypersurface quotient."""
    total = sum(ring.weights)
    if w is None:
        return total
    if w.is_zero or not w.is_homogeneous:
        raise ModuleError("potential must be nonzero homogeneous")
    return total - w.degree
