import pytest

from gmf import QQ, FreeModule, GradedMatrix, GradedRing, parse_polynomial
from gmf.equivalence import (
    check_acyclic_tensor,
    check_finite_resolution_contractible,
    check_full_faithfulness,
    check_round_trip,
    cok,
    cok_on_morphism,
    ext_certificate,
    module_round_trip,
    stabilize,
)
from gmf.mf import MatrixFactorization, MFMorphism, mf_cone, mf_hom, mf_validate
from gmf.modules import (
    ModulePresentation,
    dsing_hom,
    free_module_presentation,
    hilbert_function,
    residue_field_presentation,
    syzygy_module,
)


def _p(t, r):
    return parse_polynomial(t, r)


def _pair(rx, a_pow, w_pow):
    return MatrixFactorization.from_factor(_p(f"x^{w_pow}", rx), _p(f"x^{a_pow}", rx))


# --- cok ------------------------------------------------------------------------


def test_cok_hilbert_values(rx):
    assert hilbert_function(cok(_pair(rx, 1, 3)).module, 0, 3) == [1, 0, 0, 0]
    assert hilbert_function(cok(_pair(rx, 2, 3)).module, 0, 3) == [1, 1, 0, 0]


def test_cok_trivial_pair_is_zero(rx):
    triv = MatrixFactorization.from_factor(_p("x^3", rx), _p("1", rx))
    assert cok(triv).module.is_zero()


def test_cok_functoriality(rx):
    x = _pair(rx, 1, 4)
    y = _pair(rx, 2, 4)
    ident = cok_on_morphism(MFMorphism.identity(x))
    assert ident.matrix == GradedMatrix.identity(x.module0)
    sp_xy = mf_hom(x, y)
    sp_yx = mf_hom(y, x)
    for u in sp_xy.basis:
        for v in sp_yx.basis:
            left = cok_on_morphism(v.compose(u))
            right = cok_on_morphism(v).compose(cok_on_morphism(u))
            assert left.matrix == right.matrix


def test_cok_of_multiplication_is_zero_map(rx):
    w = _p("x^2", rx)
    x = MatrixFactorization.from_factor(w, _p("x", rx))
    target = x.twist(1)
    f = MFMorphism(
        x,
        target,
        GradedMatrix(x.module1, target.module1, 0, ((_p("x", rx),),)),
        GradedMatrix(x.module0, target.module0, 0, ((_p("x", rx),),)),
    )
    assert cok_on_morphism(f).is_zero_map()


# --- acyclicity --------------------------------------------------------------------


def test_acyclic_tensor_examples(rx, rxy):
    assert check_acyclic_tensor(_pair(rx, 1, 3), 0, 14)["exact"]
    xy_pair = MatrixFactorization.from_factor(_p("x*y", rxy), _p("x", rxy))
    assert check_acyclic_tensor(xy_pair, 0, 12)["exact"]


def test_acyclic_tensor_negative_control(rxy):
    # rank-2 pair with one corrupted entry: degree bookkeeping holds but
    # the composites are no longer W * Id, and exactness fails
    w = _p("x^3+y^3", rxy)
    good = stabilize(residue_field_presentation(rxy, w)).mf
    rows = [list(row) for row in good.p0.entries]
    rows[0][0] = _p("0", rxy)
    bad = MatrixFactorization(
        w,
        good.p1,
        GradedMatrix(good.p0.source, good.p0.target, good.p0.degree, rows),
        check=False,
    )
    assert not mf_validate(bad)["valid"]
    report = check_acyclic_tensor(bad, 0, 10)
    assert not report["exact"] and report["failing_degrees"]


# --- stabilize -----------------------------------------------------------------------


def test_stabilize_residue_field_one_variable(rx):
    for n in (1, 2, 3):
        res = stabilize(residue_field_presentation(rx, _p(f"x^{n + 1}", rx)))
        assert res.depth == 0
        assert str(res.mf.p1.entries[0][0]) == "x"
        assert str(res.mf.p0.entries[0][0]) == f"x^{n}" if n > 1 else "x"


def test_stabilize_free_module_is_zero(rx):
    a = free_module_presentation(rx, [0], _p("x^3", rx))
    assert stabilize(a).mf.is_zero_object


def test_stabilize_quotient(rx):
    w = _p("x^3", rx)
    rel = GradedMatrix.from_columns(FreeModule(rx, [2]), FreeModule(rx, [0]), 0, [[_p("x^2", rx)]])
    ax2 = ModulePresentation(rx, (0,), rel, w)
    res = stabilize(ax2)
    assert str(res.mf.p1.entries[0][0]) == "x^2" and str(res.mf.p0.entries[0][0]) == "x"


def test_stabilize_two_variable_residue_field(rxy):
    w = _p("x^3+y^3", rxy)
    res = stabilize(residue_field_presentation(rxy, w))
    assert res.depth == 1 and res.mf.rank == 2
    assert mf_validate(res.mf)["valid"]


def test_stabilize_zero_module(rx):
    z = ModulePresentation(rx, (), None, _p("x^2", rx))
    assert stabilize(z).mf.is_zero_object


# --- certificates -----------------------------------------------------------------------


def test_ext_certificate_for_cokernels(rx, rxy):
    assert ext_certificate(_pair(rx, 1, 3))["vanishes"]
    w = _p("x^3+y^3", rxy)
    assert ext_certificate(stabilize(residue_field_presentation(rxy, w)).mf)["vanishes"]


def test_finite_resolution_forces_contractibility(rx):
    triv = MatrixFactorization.from_factor(_p("x^3", rx), _p("1", rx))
    rep = check_finite_resolution_contractible(triv)
    assert rep["finite_resolution_detected"] and rep["consistent"]
    rep2 = check_finite_resolution_contractible(_pair(rx, 1, 3))
    assert not rep2["finite_resolution_detected"] and rep2["consistent"]


# --- full faithfulness ---------------------------------------------------------------------


def test_full_faithfulness_basic_pairs(rx, rxy):
    x = _pair(rx, 1, 3)
    y = _pair(rx, 2, 3)
    assert check_full_faithfulness(x, x, range(-2, 3))["match"]
    assert check_full_faithfulness(x, y, range(-2, 3))["match"]
    xy = _p("x*y", rxy)
    a = MatrixFactorization.from_factor(xy, _p("x", rxy))
    b = MatrixFactorization.from_factor(xy, _p("y", rxy))
    rep = check_full_faithfulness(a, b, range(0, 2))
    assert rep["match"]
    assert all(r["mf_dim"] == 0 for r in rep["rows"])


def test_self_hom_dimension_one_across_bridge(rx):
    y = _pair(rx, 1, 2)
    rep = check_full_faithfulness(y, y, range(0, 1))
    assert rep["rows"][0]["mf_dim"] == 1 and rep["rows"][0]["stable_dim"] == 1


# --- round trips ------------------------------------------------------------------------------


def test_round_trip_basic(rx):
    for n in (1, 2, 3):
        x = _pair(rx, 1, n + 1)
        assert check_round_trip(x)["isomorphic"] is True


def test_round_trip_trivial(rx):
    triv = MatrixFactorization.from_factor(_p("x^3", rx), _p("1", rx))
    assert check_round_trip(triv)["isomorphic"] is True


def test_round_trip_with_contractible_summand(rxy):
    xy = _p("x*y", rxy)
    a = MatrixFactorization.from_factor(xy, _p("x", rxy))
    triv = MatrixFactorization.from_factor(xy, _p("1", rxy))
    rep = check_round_trip(a.direct_sum(triv))
    assert rep["isomorphic"] is True and rep["contractibles_removed"] == 1


def test_module_round_trip_inputs(rx):
    w = _p("x^3", rx)
    k = residue_field_presentation(rx, w)
    rel = GradedMatrix.from_columns(FreeModule(rx, [2]), FreeModule(rx, [0]), 0, [[_p("x^2", rx)]])
    ax2 = ModulePresentation(rx, (0,), rel, w)
    syz = syzygy_module(k, 1)
    for m in (k, ax2, syz):
        rep = module_round_trip(m, window=(-2, 6), shifts=range(-3, 4))
        assert rep["match"], rep


# --- translation compatibility ------------------------------------------------------------------


def test_cok_commutes_with_shift_up_to_stable_iso(rx):
    x = _pair(rx, 1, 3)
    n = cok(_pair(rx, 2, 3)).module
    left = cok(x.shift()).module
    right = cok(x).module
    for p in (-2, -1, 0, 1, 2):
        assert dsing_hom(left, n, p).dimension == dsing_hom(right, n, p + 1).dimension


def test_bridge_agreement_on_exotic_rings():
    # seeded mini-corpora over rings with nonstandard weights and potentials
    from gmf import GF
    from gmf.randmf import random_corpus, random_pairs

    specs = [
        (GradedRing(["x"], [1], GF(32003)), "x^5", ["x^2"]),
        (GradedRing(["x", "y"], [1, 2], QQ), "x^4+y^2", []),
        (GradedRing(["x", "y"], [1, 1], GF(32003)), "x^2*y+y^3", ["y"]),
        (GradedRing(["x", "y"], [2, 3], GF(32003)), "x^3+y^2", []),
    ]
    for ring, wtext, factors in specs:
        w = _p(wtext, ring)
        corpus = random_corpus(ring, w, size=4, seed=31, factors=factors, max_rank=4)
        for x, y in random_pairs(corpus, 3, seed=13):
            assert check_full_faithfulness(x, y, range(-2, 3))["match"], (wtext, "bridge")
        assert check_round_trip(corpus[0])["isomorphic"] is True, wtext
