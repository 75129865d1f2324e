import pytest

from gmf import QQ, FreeModule, GradedMatrix, GradedRing, parse_polynomial
from gmf.modules import (
    ModuleError,
    ModulePresentation,
    dsing_hom,
    ext_against_A,
    free_module_presentation,
    gorenstein_parameter,
    hilbert_function,
    is_finite_dimensional,
    is_mcm,
    module_hom,
    residue_field_presentation,
    stable_hom,
    syzygy_module,
    truncate_tail,
)


def _p(t, r):
    return parse_polynomial(t, r)


def _quotient_module(rx, power, w):
    # A / x^power over A = Q[x]/w
    rel = GradedMatrix.from_columns(
        FreeModule(rx, [power]), FreeModule(rx, [0]), 0, [[_p(f"x^{power}", rx)]]
    )
    return ModulePresentation(rx, (0,), rel, w)


# --- hilbert ---------------------------------------------------------------


def test_hilbert_quotient_over_itself(rx):
    a = free_module_presentation(rx, [0], _p("x^3", rx))
    assert hilbert_function(a, 0, 5) == [1, 1, 1, 0, 0, 0]


def test_hilbert_residue_field(rxy):
    k = residue_field_presentation(rxy)
    assert hilbert_function(k, 0, 3) == [1, 0, 0, 0]


def test_hilbert_koszul_cokernel(rxy):
    rel = GradedMatrix.from_columns(
        FreeModule(rxy, [1, 1]), FreeModule(rxy, [0]), 0,
        [[_p("x", rxy)], [_p("y", rxy)]],
    )
    m = ModulePresentation(rxy, (0,), rel)
    assert hilbert_function(m, 0, 4) == [1, 0, 0, 0, 0]


def test_hilbert_rejects_empty_window(rx):
    with pytest.raises(ModuleError):
        hilbert_function(residue_field_presentation(rx), 3, 1)


# --- truncation --------------------------------------------------------------


def test_truncate_free_module(rx):
    t = truncate_tail(free_module_presentation(rx, [0]), 2)
    assert t.gen_degrees == (2,) and t.relations.source.rank == 0


def test_truncate_residue_field_to_zero(rx):
    t = truncate_tail(residue_field_presentation(rx), 1)
    assert t.is_zero()


def test_truncate_twisted_quotient(rx):
    a1 = free_module_presentation(rx, [0], _p("x^3", rx)).twist(1)
    t = truncate_tail(a1, 0)
    assert hilbert_function(t, -2, 3) == [0, 0, 1, 1, 0, 0]


def test_hilbert_of_tail_agrees_above_cut(rxy):
    m = free_module_presentation(rxy, [0, 1])
    for p in (0, 1, 2):
        t = truncate_tail(m, p)
        h_m = hilbert_function(m, p, p + 4)
        h_t = hilbert_function(t, p, p + 4)
        assert h_m == h_t
        assert all(v == 0 for v in hilbert_function(t, p - 3, p - 1))


# --- syzygies ---------------------------------------------------------------


def test_syzygy_over_polynomial_ring_is_free(rx):
    s = syzygy_module(residue_field_presentation(rx), 1)
    assert s.gen_degrees == (1,) and s.relations.source.rank == 0


def test_syzygy_periodic_over_quotient(rx):
    k = residue_field_presentation(rx, _p("x^3", rx))
    s = syzygy_module(k, 1)
    assert s.gen_degrees == (1,)
    assert [str(p) for p in s.relations.column(0)] == ["x^2"]


def test_syzygy_zero_is_identity(rx):
    k = residue_field_presentation(rx)
    assert syzygy_module(k, 0) is k


def test_mcm_detection(rx):
    w = _p("x^3", rx)
    assert is_mcm(residue_field_presentation(rx, w))
    rxy = GradedRing(["x", "y"], [1, 1], QQ)
    k2 = residue_field_presentation(rxy, _p("x^3+y^3", rxy))
    assert not is_mcm(k2)
    assert is_mcm(syzygy_module(k2, 1))


# --- ext ----------------------------------------------------------------------


def test_ext_free_module_vanishes(rx):
    a = free_module_presentation(rx, [0], _p("x^3", rx))
    table = ext_against_A(a, 3, -5, 8)
    assert all(v == 0 for i in range(1, 4) for v in table[i].values())
    assert sum(table[0].values()) == 3  # Hom(A, A) = A


def test_ext_socle_position(rx):
    k = residue_field_presentation(rx, _p("x^2", rx))
    table = ext_against_A(k, 3, -4, 6)
    assert all(v == 0 for i in range(1, 4) for v in table[i].values())
    assert {e: v for e, v in table[0].items() if v} == {1: 1}


def test_ext_dimension_shift_under_syzygy(rx):
    w = _p("x^4", rx)
    m = _quotient_module(rx, 2, w)
    s = syzygy_module(m, 1)
    t_m = ext_against_A(m, 3, -6, 8)
    t_s = ext_against_A(s, 2, -6, 8)
    for i in (1, 2):
        assert t_s[i] == t_m[i + 1]


# --- hom spaces ------------------------------------------------------------------


def test_module_hom_examples(rx):
    w = _p("x^3", rx)
    a = free_module_presentation(rx, [0], w)
    k = residue_field_presentation(rx, w)
    ax2 = _quotient_module(rx, 2, w)
    assert module_hom(k, ax2).dimension == 0
    assert module_hom(ax2, k).dimension == 1
    assert module_hom(a, ax2).dimension == 1  # = dim (A/x^2)_0


def test_module_hom_basis_maps_are_well_defined(rx):
    w = _p("x^3", rx)
    ax2 = _quotient_module(rx, 2, w)
    k = residue_field_presentation(rx, w)
    space = module_hom(ax2, k)
    for b in space.basis:
        # each relation column of the source must map into the target relations
        img = b.matrix.compose(ax2.b_matrix())
        for j in range(img.source.rank):
            assert k.element_in_relations(img.column(j))


def test_stable_hom_examples(rx):
    w2, w3 = _p("x^2", rx), _p("x^3", rx)
    k2 = residue_field_presentation(rx, w2)
    assert stable_hom(k2, k2).dimension == 1
    a3 = free_module_presentation(rx, [0], w3)
    k3 = residue_field_presentation(rx, w3)
    assert stable_hom(a3, k3).dimension == 0
    ax2 = _quotient_module(rx, 2, w3)
    assert stable_hom(ax2, k3).dimension == 1


def test_stable_le_module_hom(rx):
    w = _p("x^4", rx)
    mods = [residue_field_presentation(rx, w), _quotient_module(rx, 2, w), _quotient_module(rx, 3, w)]
    for m in mods:
        for n in mods:
            assert stable_hom(m, n).dimension <= module_hom(m, n).dimension


def test_stable_equals_module_hom_without_free_factorizations(rx):
    # no degree-0 map k -> A exists over A = Q[x]/x^2, so nothing factors
    w = _p("x^2", rx)
    k = residue_field_presentation(rx, w)
    assert module_hom(k, k).dimension == stable_hom(k, k).dimension == 1


def test_dsing_hom_examples(rx):
    w2 = _p("x^2", rx)
    k2 = residue_field_presentation(rx, w2)
    assert dsing_hom(k2, k2, 0).dimension == 1
    a2 = free_module_presentation(rx, [0], w2)
    for p in (-2, 0, 1, 3):
        assert dsing_hom(a2, k2, p).dimension == 0
    # [2] acts as the twist by deg W, so Hom(k, k[2]) lands in a shifted slice
    assert dsing_hom(k2, k2, 2).dimension == 0


def test_dsing_hom_syzygy_pair_invariance(rx):
    w = _p("x^3", rx)
    m = residue_field_presentation(rx, w)
    n = _quotient_module(rx, 2, w)
    for p in (-2, -1, 0, 1, 2):
        base = dsing_hom(m, n, p).dimension
        shifted = dsing_hom(syzygy_module(m, 1), syzygy_module(n, 1), p).dimension
        assert base == shifted


# --- gorenstein parameter ----------------------------------------------------------


def test_gorenstein_values():
    r3 = GradedRing(["x", "y", "z"], [1, 1, 1], QQ)
    assert gorenstein_parameter(r3) == 3
    assert gorenstein_parameter(r3, _p("x^3+y^3+z^3", r3)) == 0
    rx = GradedRing(["x"], [1], QQ)
    for n in range(1, 5):
        assert gorenstein_parameter(rx, _p(f"x^{n + 1}", rx)) == -n


def test_gorenstein_matches_socle_position(rx):
    for n in range(1, 5):
        w = _p(f"x^{n + 1}", rx)
        a = gorenstein_parameter(rx, w)
        k = residue_field_presentation(rx, w)
        table = ext_against_A(k, 2, -2, n + 4)
        hom_row = {e: v for e, v in table[0].items() if v}
        assert hom_row == {-a: 1}


def test_zero_module_accepted_everywhere(rx):
    w = _p("x^3", rx)
    z = ModulePresentation(rx, (), None, w)
    k = residue_field_presentation(rx, w)
    assert hilbert_function(z, -2, 4) == [0] * 7
    assert truncate_tail(z, 1).is_zero()
    assert syzygy_module(z, 2).is_zero()
    assert all(v == 0 for row in ext_against_A(z, 3, -4, 4).values() for v in row.values())
    assert module_hom(z, k).dimension == 0
    assert module_hom(k, z).dimension == 0
    assert stable_hom(z, k).dimension == 0
    assert dsing_hom(z, k, 1).dimension == 0
    assert is_mcm(z) and is_finite_dimensional(z)


def test_finite_dimensionality_probe(rx):
    assert is_finite_dimensional(free_module_presentation(rx, [0], _p("x^3", rx)))
    assert not is_finite_dimensional(free_module_presentation(rx, [0]))
    rxy = GradedRing(["x", "y"], [1, 1], QQ)
    assert not is_finite_dimensional(free_module_presentation(rxy, [0], _p("x^3+y^3", rxy)))
