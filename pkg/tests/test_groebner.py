import random

import pytest

from gmf import QQ, FreeModule, GradedMatrix, GradedRing, parse_polynomial
from gmf import linalg, slices
from gmf.groebner import (
    GroebnerError,
    LiftError,
    groebner,
    kernel,
    lift,
    minimal_resolution,
    normal_form,
)


def _p(t, r):
    return parse_polynomial(t, r)


def _col_matrix(ring, target_degs, col_texts, col_degs):
    target = FreeModule(ring, target_degs)
    source = FreeModule(ring, col_degs)
    cols = [[_p(t, ring) for t in col] for col in col_texts]
    return GradedMatrix.from_columns(source, target, 0, cols)


# --- groebner -----------------------------------------------------------------


def test_groebner_monomial_ideal_complete(rxy):
    amb = FreeModule(rxy, [0])
    gb = groebner([[_p("x", rxy)], [_p("y", rxy)]], amb)
    leads = sorted(str(g[0]) for g in gb.generators())
    assert leads == ["x", "y"]


def test_groebner_difference_of_generators(rxy):
    amb = FreeModule(rxy, [0, 0])
    gb = groebner([[_p("1", rxy), _p("-1", rxy)]], amb)
    assert len(gb) == 1


def test_groebner_reduces_pair(rxy):
    amb = FreeModule(rxy, [0])
    gb = groebner([[_p("x^2", rxy)], [_p("x^2+x*y", rxy)]], amb)
    gens = sorted(str(g[0]) for g in gb.generators())
    assert gens == ["x*y", "x^2"]


def test_groebner_rejects_inhomogeneous(rxy):
    amb = FreeModule(rxy, [0])
    with pytest.raises(GroebnerError):
        groebner([[_p("x^2+x", rxy)]], amb)


# --- normal form -----------------------------------------------------------------


def test_normal_form_examples(rxy):
    amb = FreeModule(rxy, [0])
    gb = groebner([[_p("x", rxy)]], amb)
    assert normal_form([_p("x^2", rxy)], gb) == [_p("0", rxy)]
    assert normal_form([_p("y", rxy)], gb) == [_p("y", rxy)]
    gb2 = groebner([[_p("x^2", rxy)], [_p("x*y", rxy)]], amb)
    assert normal_form([_p("x^2+x*y", rxy)], gb2) == [_p("0", rxy)]


def test_normal_form_idempotent_random(rxy):
    rng = random.Random(11)
    amb = FreeModule(rxy, [0, 1])
    gens = [
        [_p("x^2", rxy), _p("0", rxy)],
        [_p("x*y", rxy), _p("y", rxy)],
    ]
    gb = groebner(gens, amb)
    monos2 = ["x^2", "x*y", "y^2"]
    for _ in range(50):
        v = [_p(rng.choice(monos2), rxy), _p(rng.choice(["x", "y"]), rxy)]
        nf = normal_form(v, gb)
        assert normal_form(nf, gb) == nf
        diff = [a - b for a, b in zip(v, nf)]
        assert normal_form(diff, gb) == [_p("0", rxy), _p("0", rxy)]


# --- kernel -----------------------------------------------------------------------


def test_kernel_koszul(rxy):
    f = _col_matrix(rxy, [0], [["x"], ["y"]], [1, 1])
    k = kernel(f)
    assert k.source.gen_degrees == (2,)
    assert [str(p) for p in k.column(0)] == ["y", "-x"]
    assert f.compose(k).is_zero


def test_kernel_identity_and_regular(rx):
    ident = GradedMatrix.identity(FreeModule(rx, [0, 1]))
    assert kernel(ident).source.rank == 0
    f = _col_matrix(rx, [0], [["x"]], [1])
    assert kernel(f).source.rank == 0


def _kernel_slice_oracle(f, e):
    """Independent dense check: slice dim of span(kernel cols) vs nullity."""
    field = f.ring.field
    k = kernel(f)
    cols = [k.column(j) for j in range(k.source.rank)]
    degs = list(k.source.gen_degrees)
    span = slices.columns_slice(cols, degs, f.source, e)
    nullity = slices.slice_dim(f.source, e) - linalg.rank(field, slices.matrix_slice(f, e))
    return linalg.rank(field, span), nullity


def test_kernel_completeness_against_dense_oracle(rxy):
    cases = [
        _col_matrix(rxy, [0], [["x"], ["y"]], [1, 1]),
        _col_matrix(rxy, [0], [["x^2"], ["x*y"], ["y^2"]], [2, 2, 2]),
        _col_matrix(rxy, [0, 1], [["x", "0"], ["x^2*y", "x^2"], ["0", "y^2"]], [1, 3, 3]),
    ]
    for f in cases:
        e_max = max(f.source.gen_degrees) + 3 * max(f.ring.weights) * f.source.rank
        for e in range(0, e_max + 1):
            got, want = _kernel_slice_oracle(f, e)
            assert got == want, (f, e)


# --- lift --------------------------------------------------------------------------


def test_lift_power(rx):
    f = _col_matrix(rx, [0], [["x"]], [1])
    target = GradedMatrix.scalar(FreeModule(rx, [0]), _p("x^3", rx))
    h = lift(target, f)
    assert [str(p) for p in h.column(0)] == ["x^2"]
    assert f.compose(h) == target


def test_lift_through_identity(rxy):
    ident = GradedMatrix.identity(FreeModule(rxy, [0]))
    f = _col_matrix(rxy, [0], [["x*y"]], [2])
    assert lift(f, ident) == f


def test_lift_multiplication_through_koszul_syzygy(rxy):
    # through = [y, -x]: rank two onto the ideal; W * Id_B factors through it
    through = GradedMatrix.from_columns(
        FreeModule(rxy, [1, 1]), FreeModule(rxy, [0]), 0,
        [[_p("y", rxy)], [_p("-x", rxy)]],
    )
    w_id = GradedMatrix.scalar(FreeModule(rxy, [0]), _p("x*y", rxy))
    h = lift(w_id, through)
    assert through.compose(h) == w_id
    assert h.degree == 2 and h.source.rank == 1 and h.target.rank == 2


def test_lift_error_reports_witness(rx):
    f = _col_matrix(rx, [0], [["x^2"]], [2])
    bad = _col_matrix(rx, [0], [["x"]], [1])
    with pytest.raises(LiftError) as err:
        lift(bad, f)
    assert err.value.witness_column == 0


# --- minimal resolutions -----------------------------------------------------------


def test_resolution_k_over_one_variable(rx):
    pres = _col_matrix(rx, [0], [["x"]], [1])
    res = minimal_resolution(pres, 5)
    assert len(res) == 1
    assert res[0].source.gen_degrees == (1,)


def test_resolution_koszul(rxy):
    pres = _col_matrix(rxy, [0], [["x"], ["y"]], [1, 1])
    res = minimal_resolution(pres, 5)
    assert [d.source.gen_degrees for d in res] == [(1, 1), (2,)]
    assert res[0].compose(res[1]).is_zero


def test_resolution_periodic_over_quotient(rx):
    w = _p("x^3", rx)
    pres = _col_matrix(rx, [0], [["x"]], [1])
    res = minimal_resolution(pres, 4, potential=w)
    entries = [str(d.entries[0][0]) for d in res]
    assert entries == ["x", "x^2", "x", "x^2"]
    assert [d.source.gen_degrees[0] for d in res] == [1, 3, 4, 6]


def test_resolution_minimality_no_units(rxy):
    # start from a redundant, unit-laden presentation of k
    pres = GradedMatrix.from_columns(
        FreeModule(rxy, [1, 1, 0]),
        FreeModule(rxy, [0, 0]),
        0,
        [
            [_p("x", rxy), _p("0", rxy)],
            [_p("y", rxy), _p("y", rxy)],
            [_p("1", rxy), _p("1", rxy)],
        ],
    )
    res = minimal_resolution(pres, 4)
    for d in res:
        for row in d.entries:
            for p in row:
                assert not p.is_unit_constant()
    # composites vanish
    for a, b in zip(res, res[1:]):
        assert a.compose(b).is_zero
