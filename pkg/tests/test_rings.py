import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmf import GF, QQ, GradedRing, ParseError, parse_polynomial
from gmf.rings import grevlex_key


def test_parse_homogeneous_detection():
    r = GradedRing(["x", "y"], [1, 1], QQ)
    p = parse_polynomial("x^3+y^3", r)
    assert p.is_homogeneous and p.degree == 3


def test_parse_commutator_is_zero():
    r = GradedRing(["x", "y"], [1, 1], QQ)
    assert parse_polynomial("x*y - y*x", r).is_zero


def test_weighted_degree():
    r = GradedRing(["x", "y"], [3, 2], QQ)
    p = parse_polynomial("x^2+y^3", r)
    assert p.is_homogeneous and p.degree == 6


def test_parse_errors():
    r = GradedRing(["x"], [1], QQ)
    with pytest.raises(ParseError):
        parse_polynomial("x + z", r)
    with pytest.raises(ParseError):
        parse_polynomial("x ** 2", r)
    with pytest.raises(ParseError):
        parse_polynomial("2x", r)
    with pytest.raises(ParseError):
        parse_polynomial("(x", r)
    with pytest.raises(ParseError):
        parse_polynomial("1/5 * x", GradedRing(["x"], [1], GF(5)))


def test_rational_coefficients():
    r = GradedRing(["x"], [1], QQ)
    p = parse_polynomial("1/2*x + 1/2*x", r)
    assert str(p) == "x"


def test_inhomogeneous_marker():
    r = GradedRing(["x"], [1], QQ)
    p = parse_polynomial("x^2 + x", r)
    assert not p.is_homogeneous and p.degree is None


def test_grevlex_order_standard():
    # x^2 > x*y > y^2 > x > y > 1 in grevlex on two equal weights
    w = (1, 1)
    ordered = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
    keys = [grevlex_key(w, e) for e in ordered]
    assert keys == sorted(keys, reverse=True)


def test_monomials_of_degree_weighted():
    r = GradedRing(["x", "y"], [3, 2], QQ)
    assert set(r.monomials_of_degree(6)) == {(2, 0), (0, 3)}
    assert r.monomials_of_degree(1) == ()
    assert r.monomials_of_degree(0) == ((0, 0),)


def _poly_on(ring, draw):
    nterms = draw(st.integers(0, 6))
    terms = {}
    for _ in range(nterms):
        exps = tuple(draw(st.integers(0, 4)) for _ in range(ring.nvars))
        coeff = draw(st.fractions(min_value=-9, max_value=9, max_denominator=7))
        if coeff:
            terms[exps] = coeff
    return ring.from_terms(terms)


@st.composite
def _poly_pairs(draw):
    nvars = draw(st.integers(1, 3))
    ring = GradedRing([f"x{i}" for i in range(nvars)], [1] * nvars, QQ)
    return _poly_on(ring, draw), _poly_on(ring, draw)


@given(_poly_pairs())
@settings(max_examples=150, deadline=None)
def test_print_parse_roundtrip(pair):
    p, _ = pair
    assert parse_polynomial(str(p), p.ring) == p


@given(_poly_pairs())
@settings(max_examples=60, deadline=None)
def test_ring_ops_commute_with_parse(pair):
    p, q = pair
    assert parse_polynomial(f"({p}) + ({q})", p.ring) == p + q
    assert parse_polynomial(f"({p}) * ({q})", p.ring) == p * q


@given(st.text(alphabet="xy01+-*^()/ _z", max_size=30))
@settings(max_examples=300, deadline=None)
def test_parser_rejects_or_parses_never_crashes(text):
    ring = GradedRing(["x", "y"], [1, 1], QQ)
    try:
        result = parse_polynomial(text, ring)
    except ParseError:
        return
    assert result.ring is ring
