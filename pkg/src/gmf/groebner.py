"""Groebner bases for submodules of graded free modules.

Elements of a free module are sparse maps (position, exponents) -> scalar.
The module order is position-over-term: lower generator index wins, ties
within a position by weighted grevlex.  Kernels are computed by the
elimination trick (adjoin tag generators and keep the basis elements whose
original block vanishes), lifts by division with cofactor tracking, and
minimal resolutions by iterated kernels pruned to minimal generating sets.

Everything here assumes homogeneous input and preserves homogeneity; the
quotient ring A = B/W is never materialized.  A-module computations append
W-multiples of the ambient generators, which is sound because A-module maps
are exactly the B-module maps annihilated by W.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .freemod import FreeModule, GradedMatrix
from .rings import Polynomial, grevlex_key

Term = tuple  # (position, exponent tuple)
Vec = dict  # Term -> scalar


class GroebnerError(ValueError):
    pass


class LiftError(ValueError):
    """Raised when the target map does not factor through the given map."""

    def __init__(self, message: str, witness_column: int):
        super().__init__(message)
        self.witness_column = witness_column


# --- term order --------------------------------------------------------------


class ModuleOrder:
    """Position-over-term order, optionally with a leading elimination block."""

    __slots__ = ("weights", "split")

    def __init__(self, weights: tuple, split: int | None = None):
        self.weights = weights
        self.split = split

    def key(self, term: Term):
        pos, exps = term
        block = 0
        if self.split is not None and pos < self.split:
            block = 1
        return (block, -pos, grevlex_key(self.weights, exps))


# --- sparse vector helpers ----------------------------------------------------


def vec_degree(vec: Vec, ambient: FreeModule):
    """Common degree of a homogeneous vector, None for zero; raises if mixed."""
    degs = {
        ambient.gen_degrees[pos] + ambient.ring.monomial_degree(exps)
        for (pos, exps) in vec
    }
    if not degs:
        return None
    if len(degs) > 1:
        raise GroebnerError("inhomogeneous module element")
    return degs.pop()


def _vec_add_scaled(field, target: Vec, source: Vec, mono, coeff):
    """target += coeff * x^mono * source, in place."""
    for (pos, exps), c in source.items():
        key = (pos, tuple(a + b for a, b in zip(exps, mono)))
        s = field.add(target.get(key, field.zero), field.mul(c, coeff))
        if s:
            target[key] = s
        else:
            target.pop(key, None)


def _vec_scale(field, vec: Vec, coeff) -> Vec:
    return {t: field.mul(c, coeff) for t, c in vec.items()}


def _poly_map_add(field, ring, target: dict, source: dict, mono, coeff):
    """Cofactor update: target += coeff * x^mono * source (maps idx -> Polynomial)."""
    for idx, poly in source.items():
        inc = poly.monomial_times(mono, coeff)
        cur = target.get(idx)
        acc = inc if cur is None else cur + inc
        if acc.is_zero:
            target.pop(idx, None)
        else:
            target[idx] = acc


def _leading(vec: Vec, order: ModuleOrder):
    term = max(vec, key=order.key)
    return term, vec[term]


def _divides(lead: Term, term: Term) -> bool:
    return lead[0] == term[0] and all(a <= b for a, b in zip(lead[1], term[1]))


def column_vec(matrix: GradedMatrix, j: int) -> Vec:
    vec: Vec = {}
    for i in range(matrix.target.rank):
        p = matrix.entries[i][j]
        for exps, c in p.terms.items():
            vec[(i, exps)] = c
    return vec


def element_vec(element: Sequence[Polynomial]) -> Vec:
    vec: Vec = {}
    for i, p in enumerate(element):
        for exps, c in p.terms.items():
            vec[(i, exps)] = c
    return vec


def vec_element(vec: Vec, ambient: FreeModule) -> list:
    ring = ambient.ring
    polys = [dict() for _ in range(ambient.rank)]
    for (pos, exps), c in vec.items():
        polys[pos][exps] = c
    return [Polynomial(ring, terms) for terms in polys]


def vecs_to_matrix(vecs: list, ambient: FreeModule, degree: int = 0) -> GradedMatrix:
    """Matrix with the given homogeneous vectors as columns; fresh source."""
    col_degrees = []
    cols = []
    for vec in vecs:
        d = vec_degree(vec, ambient)
        if d is None:
            continue
        col_degrees.append(d - degree)
        cols.append(vec_element(vec, ambient))
    source = FreeModule(ambient.ring, col_degrees)
    return GradedMatrix.from_columns(source, ambient, degree, cols)


def _canonical_vec_key(vec: Vec, ambient: FreeModule, order: ModuleOrder):
    deg = vec_degree(vec, ambient)
    terms = tuple(sorted(((pos, exps, str(c)) for (pos, exps), c in vec.items())))
    return (deg if deg is not None else -1, terms)


# --- division -----------------------------------------------------------------


def _reduce(vec: Vec, basis: list, order: ModuleOrder, field, want_cofactors=False):
    """Full normal form of vec against basis; optionally track quotients.

    Returns (remainder, quotients) where quotients[i] is the Polynomial q_i
    with vec = sum q_i basis[i] + remainder.
    """
    work = dict(vec)
    remainder: Vec = {}
    quots: list = [None] * len(basis) if want_cofactors else None
    by_pos: dict = {}
    for i, (g, lead, lc) in enumerate(basis):
        by_pos.setdefault(lead[0], []).append((i, g, lead, lc))
    while work:
        term, coeff = _leading(work, order)
        reduced = False
        for i, g, lead, lc in by_pos.get(term[0], ()):
            if _divides(lead, term):
                mono = tuple(a - b for a, b in zip(term[1], lead[1]))
                factor = field.div(coeff, lc)
                _vec_add_scaled(field, work, g, mono, field.neg(factor))
                if want_cofactors:
                    q = quots[i]
                    add = {mono: factor}
                    if q is None:
                        quots[i] = dict(add)
                    else:
                        s = field.add(q.get(mono, field.zero), factor)
                        if s:
                            q[mono] = s
                        else:
                            q.pop(mono, None)
                reduced = True
                break
        if not reduced:
            remainder[term] = coeff
            del work[term]
    return remainder, quots


# --- Buchberger ---------------------------------------------------------------


def _buchberger(gens: list, ambient: FreeModule, order: ModuleOrder, track: bool):
    """Complete gens to a reduced Groebner basis.

    Returns a list of (vec, lead, lc) and, when track is set, a parallel list
    of cofactor maps {original index -> Polynomial} expressing each basis
    element in terms of the input generators.
    """
    ring = ambient.ring
    field = ring.field
    basis: list = []
    cofactors: list = []

    def push(vec: Vec, cof):
        lead, lc = _leading(vec, order)
        inv = field.inv(lc)
        vec = _vec_scale(field, vec, inv)
        if cof is not None:
            cof = {
                idx: poly.scale(inv) for idx, poly in cof.items() if not poly.is_zero
            }
        basis.append((vec, lead, field.one))
        cofactors.append(cof)

    for idx, vec in enumerate(gens):
        if not vec:
            continue
        if vec_degree(vec, ambient) is None:
            continue
        cof = {idx: ring.one()} if track else None
        push(dict(vec), cof)

    pairs: list = []

    def queue_pairs(k: int):
        vk, leadk, _ = basis[k]
        for i in range(k):
            vi, leadi, _ = basis[i]
            if leadi[0] != leadk[0]:
                continue
            lcm = tuple(max(a, b) for a, b in zip(leadi[1], leadk[1]))
            deg = ring.monomial_degree(lcm) + ambient.gen_degrees[leadi[0]]
            heapq.heappush(pairs, (deg, i, k, lcm))

    for k in range(len(basis)):
        queue_pairs(k)

    while pairs:
        _, i, k, lcm = heapq.heappop(pairs)
        vi, leadi, lci = basis[i]
        vk, leadk, lck = basis[k]
        spair: Vec = {}
        mono_i = tuple(a - b for a, b in zip(lcm, leadi[1]))
        mono_k = tuple(a - b for a, b in zip(lcm, leadk[1]))
        _vec_add_scaled(field, spair, vi, mono_i, field.inv(lci))
        _vec_add_scaled(field, spair, vk, mono_k, field.neg(field.inv(lck)))
        if not spair:
            continue
        rem, quots = _reduce(
            spair, basis, order, field, want_cofactors=track
        )
        if not rem:
            continue
        cof = None
        if track:
            cof = {}
            _poly_map_add(field, ring, cof, cofactors[i], mono_i, field.inv(lci))
            _poly_map_add(
                field, ring, cof, cofactors[k], mono_k, field.neg(field.inv(lck))
            )
            for g_idx, q in enumerate(quots or []):
                if q:
                    for mono, c in q.items():
                        _poly_map_add(
                            field, ring, cof, cofactors[g_idx], mono, field.neg(c)
                        )
        push(rem, cof)
        queue_pairs(len(basis) - 1)

    return _interreduce(basis, cofactors, ambient, order, track)


def _interreduce(basis, cofactors, ambient, order, track):
    ring = ambient.ring
    field = ring.field
    # minimal: drop elements whose lead is divisible by another kept lead
    indices = sorted(range(len(basis)), key=lambda i: order.key(basis[i][1]))
    kept: list = []
    for i in indices:
        lead = basis[i][1]
        if any(_divides(basis[j][1], lead) for j in kept):
            continue
        kept.append(i)
    reduced = []
    reduced_cof = []
    for i in kept:
        vec, lead, lc = basis[i]
        others = [basis[j] for j in kept if j != i]
        rem, quots = _reduce(vec, others, order, field, want_cofactors=track)
        if not rem:
            continue
        newlead, newlc = _leading(rem, order)
        cof = None
        if track:
            cof = dict(cofactors[i] or {})
            other_cofs = [cofactors[j] for j in kept if j != i]
            for g_idx, q in enumerate(quots or []):
                if q:
                    for mono, c in q.items():
                        _poly_map_add(
                            field, ring, cof, other_cofs[g_idx], mono, field.neg(c)
                        )
            inv = field.inv(newlc)
            cof = {k: p.scale(inv) for k, p in cof.items() if not p.is_zero}
        rem = _vec_scale(field, rem, field.inv(newlc))
        reduced.append((rem, newlead, field.one))
        reduced_cof.append(cof)
    return reduced, reduced_cof


# --- public engine -------------------------------------------------------------


class ModuleGroebnerBasis:
    """A reduced Groebner basis of a submodule of a graded free module."""

    def __init__(self, ambient: FreeModule, elements, order: ModuleOrder, cofactors=None):
        self.ambient = ambient
        self.elements = elements  # list of (vec, lead, lc) with lc == 1
        self.order = order
        self.cofactors = cofactors

    def __len__(self):
        return len(self.elements)

    def generators(self) -> list:
        """Basis elements as lists of Polynomials."""
        return [vec_element(vec, self.ambient) for (vec, _, _) in self.elements]

    def normal_form_vec(self, vec: Vec) -> Vec:
        field = self.ambient.ring.field
        rem, _ = _reduce(vec, self.elements, self.order, field)
        return rem

    def reduce_with_cofactors(self, vec: Vec):
        field = self.ambient.ring.field
        return _reduce(vec, self.elements, self.order, field, want_cofactors=True)

    def contains_vec(self, vec: Vec) -> bool:
        return not self.normal_form_vec(vec)


def groebner(generators: Iterable, ambient: FreeModule, track: bool = False) -> ModuleGroebnerBasis:
    """Buchberger-complete basis of the submodule the generators span.

    Generators may be given as lists of Polynomials or as sparse vecs.
    Raises GroebnerError on inhomogeneous input.
    """
    order = ModuleOrder(ambient.ring.weights)
    vecs = []
    for g in generators:
        vec = g if isinstance(g, dict) else element_vec(g)
        vec_degree(vec, ambient)  # homogeneity check
        vecs.append(vec)
    basis, cofs = _buchberger(vecs, ambient, order, track)
    return ModuleGroebnerBasis(ambient, basis, order, cofs if track else None)


def groebner_of_matrix(matrix: GradedMatrix, track: bool = False) -> ModuleGroebnerBasis:
    cols = [column_vec(matrix, j) for j in range(matrix.source.rank)]
    return groebner(cols, matrix.target, track=track)


def normal_form(element: Sequence[Polynomial], gb: ModuleGroebnerBasis) -> list:
    """Remainder of an ambient element modulo the submodule; no term of the
    result is divisible by a basis leading term."""
    if len(element) != gb.ambient.rank:
        raise GroebnerError("ambient rank mismatch")
    vec = element_vec(element)
    vec_degree(vec, gb.ambient)
    return vec_element(gb.normal_form_vec(vec), gb.ambient)


# --- kernels -------------------------------------------------------------------


def kernel(f: GradedMatrix) -> GradedMatrix:
    """Columns generating ker f, with a fresh source carrying column degrees.

    Elimination computation: complete {(f_j, e_j)} in F_tgt (+) F_src under a
    block order dominated by the target part; basis elements with vanishing
    target block generate the syzygy module.  The output is pruned to a
    minimal generating set.
    """
    ring = f.ring
    t = f.target.rank
    s = f.source.rank
    ext_degrees = tuple(f.target.gen_degrees) + tuple(
        g + f.degree for g in f.source.gen_degrees
    )
    ext = FreeModule(ring, ext_degrees)
    order = ModuleOrder(ring.weights, split=t)
    zero_exps = (0,) * ring.nvars
    gens = []
    for j in range(s):
        vec = dict(column_vec(f, j))
        vec[(t + j, zero_exps)] = ring.field.one
        gens.append(vec)
    basis, _ = _buchberger(gens, ext, order, track=False)
    syzygies = []
    for vec, lead, _ in basis:
        if lead[0] >= t:
            shifted = {(pos - t, exps): c for (pos, exps), c in vec.items()}
            syzygies.append(shifted)
    src_grading = FreeModule(ring, tuple(g + f.degree for g in f.source.gen_degrees))
    syzygies = minimal_generator_vecs(syzygies, src_grading)
    cols = []
    degrees = []
    for vec in syzygies:
        degrees.append(vec_degree(vec, src_grading) - f.degree)
        cols.append(vec_element(vec, FreeModule(ring, f.source.gen_degrees)))
    fresh = FreeModule(ring, degrees)
    return GradedMatrix.from_columns(fresh, FreeModule(ring, f.source.gen_degrees), 0, cols)


def lift(target_map: GradedMatrix, through: GradedMatrix) -> GradedMatrix:
    """h with through o h = target_map; errors carry the witness column.

    Requires matching targets; the image containment is checked column by
    column via normal forms.
    """
    if target_map.target != through.target:
        raise GroebnerError("lift requires maps into the same module")
    gb = groebner_of_matrix(through, track=True)
    ring = through.ring
    h_cols = []
    for j in range(target_map.source.rank):
        vec = column_vec(target_map, j)
        rem, quots = gb.reduce_with_cofactors(vec)
        if rem:
            raise LiftError(
                f"column {j} of the target map is not in the image", witness_column=j
            )
        col = [ring.zero() for _ in range(through.source.rank)]
        for g_idx, q in enumerate(quots or []):
            if not q:
                continue
            cof = gb.cofactors[g_idx] or {}
            for orig_idx, poly in cof.items():
                inc = Polynomial(ring, dict(q)) * poly
                col[orig_idx] = col[orig_idx] + inc
        h_cols.append(col)
    return GradedMatrix.from_columns(
        target_map.source,
        through.source,
        target_map.degree - through.degree,
        h_cols,
    )


# --- minimal generating sets and presentations ----------------------------------


def minimal_generator_vecs(vecs: list, ambient: FreeModule, potential: Polynomial | None = None) -> list:
    """Greedy minimal homogeneous generating set (ascending degree).

    With a potential W the span is taken over A = B/W, realized by seeding
    the membership basis with W times each ambient generator.
    """
    ring = ambient.ring
    field = ring.field
    order = ModuleOrder(ring.weights)
    seeds = []
    if potential is not None:
        for i in range(ambient.rank):
            seeds.append({(i, exps): c for exps, c in potential.terms.items()})
    survivors: list = []
    basis, _ = _buchberger(list(seeds), ambient, order, track=False)
    keyed = sorted(vecs, key=lambda v: _canonical_vec_key(v, ambient, order))
    for vec in keyed:
        if not vec:
            continue
        rem, _ = _reduce(vec, basis, order, field)
        if not rem:
            continue
        survivors.append(vec)
        basis, _ = _buchberger(
            seeds + [dict(v) for v in survivors], ambient, order, track=False
        )
    return survivors


def minimize_presentation(gen_degrees: tuple, relations: GradedMatrix):
    """Pivot out unit entries: (new generator degrees, new relation matrix).

    A unit (nonzero constant) entry at (i, c) lets generator i be rewritten in
    terms of the others; the pivot is the row-major-first unit each pass.
    """
    ring = relations.ring
    field = ring.field
    gens = list(gen_degrees)
    cols = [list(relations.column(j)) for j in range(relations.source.rank)]

    def find_unit():
        for i in range(len(gens)):
            for c in range(len(cols)):
                if cols[c][i].is_unit_constant():
                    return i, c
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        i, c = hit
        u = cols[c][i].constant_value()
        inv = field.inv(u)
        pivot_col = cols[c]
        for cc in range(len(cols)):
            if cc == c:
                continue
            f = cols[cc][i]
            if f.is_zero:
                continue
            factor = f.scale(inv)
            cols[cc] = [a - factor * b for a, b in zip(cols[cc], pivot_col)]
        del cols[c]
        del gens[i]
        cols = [col[:i] + col[i + 1 :] for col in cols]

    cols = [col for col in cols if any(not p.is_zero for p in col)]
    module = FreeModule(ring, gens)
    if not cols:
        return tuple(gens), GradedMatrix.zero(FreeModule(ring, ()), module, 0)
    degrees = []
    for col in cols:
        d = vec_degree(element_vec(col), module)
        degrees.append(d)
    src = FreeModule(ring, degrees)
    return tuple(gens), GradedMatrix.from_columns(src, module, 0, cols)


# --- resolutions -----------------------------------------------------------------


def _syzygy_step(d: GradedMatrix, potential: Polynomial | None) -> GradedMatrix:
    """Minimal generators of ker(d) over B, or over A when W is given."""
    ring = d.ring
    if potential is None:
        ker = kernel(d)
        vecs = [column_vec(ker, j) for j in range(ker.source.rank)]
        vecs = minimal_generator_vecs(vecs, d.source)
        return vecs_to_matrix(vecs, d.source)
    # kernel over A: v with d(v) in W * F_tgt, i.e. first block of ker([d | W I])
    if d.degree != 0:
        raise GroebnerError("A-syzygy steps expect degree-0 differentials")
    w_id = GradedMatrix.scalar(d.target, potential)
    src = FreeModule(
        ring,
        tuple(d.source.gen_degrees)
        + tuple(g + potential.degree for g in d.target.gen_degrees),
    )
    combined = GradedMatrix.from_columns(
        src,
        d.target,
        0,
        d.columns() + w_id.columns(),
        check=True,
    )
    ker = kernel(combined)
    s = d.source.rank
    vecs = []
    for j in range(ker.source.rank):
        vec = column_vec(ker, j)
        head = {(pos, exps): c for (pos, exps), c in vec.items() if pos < s}
        if head:
            vecs.append(head)
    vecs = minimal_generator_vecs(vecs, d.source, potential=potential)
    return vecs_to_matrix(vecs, d.source)


def minimal_resolution(
    pres: GradedMatrix, steps: int, potential: Polynomial | None = None
) -> list:
    """Differentials [d_1 .. d_k], k <= steps, of a minimal free resolution
    of coker(pres) over B, or over A = B/W when the potential is given.

    Consecutive composites vanish (over the relevant ring), each kernel is
    generated exactly by the next matrix's columns, and no differential has
    a unit entry.  The list is shorter than steps when the resolution stops.
    """
    gens, rel = minimize_presentation(pres.target.gen_degrees, pres)
    module = FreeModule(pres.ring, gens)
    vecs = [column_vec(rel, j) for j in range(rel.source.rank)]
    vecs = minimal_generator_vecs(vecs, module, potential=potential)
    d1 = vecs_to_matrix(vecs, module)
    out = []
    current = d1
    for _ in range(steps):
        if current.source.rank == 0:
            break
        out.append(current)
        if len(out) == steps:
            break
        current = _syzygy_step(current, potential)
    return out
