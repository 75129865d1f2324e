"""Seeded corpora of valid matrix factorizations for randomized checks.

Objects are built only by operations that preserve validity: stabilized
modules, rank-1 divisor pairs, shifts, twists, direct sums and mapping
cones of actual morphisms.  Construction is deterministic in the seed, so
acceptance runs are reproducible bit for bit.
"""

from __future__ import annotations

import random
from typing import Optional

from .equivalence import stabilize
from .mf import MatrixFactorization, mf_cone, mf_hom
from .modules import residue_field_presentation, syzygy_module
from .rings import GradedRing, Polynomial, parse_polynomial


def base_objects(ring: GradedRing, potential: Polynomial, factors: Optional[list] = None) -> list:
    """Deterministic seed objects: stabilized residue field data and any
    supplied rank-1 divisor pairs u with u * (W/u) = W."""
    out = []
    k = residue_field_presentation(ring, potential)
    out.append(stabilize(k).mf)
    syz = syzygy_module(k, 1)
    if not syz.is_zero():
        out.append(stabilize(syz).mf)
    for text in factors or []:
        u = parse_polynomial(text, ring) if isinstance(text, str) else text
        out.append(MatrixFactorization.from_factor(potential, u))
    return [m for m in out if not m.is_zero_object]


def random_corpus(
    ring: GradedRing,
    potential: Polynomial,
    size: int,
    seed: int = 2024,
    factors: Optional[list] = None,
    max_rank: int = 6,
) -> list:
    """A list of ``size`` valid factorizations closed under the seeded ops."""
    rng = random.Random(seed)
    objs = base_objects(ring, potential, factors)
    if not objs:
        objs = [MatrixFactorization.zero(potential)]
    out = list(objs)
    guard = 0
    while len(out) < size and guard < 20 * size:
        guard += 1
        op = rng.choice(("twist", "shift", "sum", "cone"))
        a = rng.choice(out)
        if op == "twist":
            candidate = a.twist(rng.randint(-2, 2))
        elif op == "shift":
            candidate = a.shift()
        elif op == "sum":
            b = rng.choice(out)
            if a.rank + b.rank > max_rank:
                continue
            candidate = a.direct_sum(b)
        else:
            b = rng.choice(out)
            if a.rank + b.rank > max_rank:
                continue
            p = rng.randint(-1, 1)
            space = mf_hom(a, b.shift_by(p) if p else b, 0, 0)
            if space.dimension == 0:
                continue
            coeffs = [rng.randint(1, 5) for _ in range(space.dimension)]
            mor = None
            for c, basis_el in zip(coeffs, space.basis):
                term = basis_el.scale(c)
                mor = term if mor is None else mor + term
            candidate, _, _ = mf_cone(mor)
            if candidate.rank > max_rank:
                candidate, _ = candidate.minimize()
                if candidate.rank > max_rank or candidate.is_zero_object:
                    continue
        out.append(candidate)
    return out[:size]


def random_pairs(corpus: list, count: int, seed: int = 77) -> list:
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        pairs.append((rng.choice(corpus), rng.choice(corpus)))
    return pairs
