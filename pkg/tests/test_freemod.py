import random

import pytest

from gmf import QQ, FreeModule, GradedMatrix, GradedRing, GradingError, matrix_compose, parse_polynomial, validate_matrix


def _p(text, ring):
    return parse_polynomial(text, ring)


def test_compose_basic(rxy):
    b = FreeModule(rxy, [0])
    b1 = FreeModule(rxy, [1])
    b2 = FreeModule(rxy, [2])
    f = GradedMatrix(b1, b, 0, ((_p("x", rxy),),))
    g = GradedMatrix(b2, b1, 0, ((_p("y", rxy),),))
    assert matrix_compose(f, g).entries[0][0] == _p("x*y", rxy)


def test_compose_identity(rxy):
    b = FreeModule(rxy, [1, 3])
    f = GradedMatrix(b, FreeModule(rxy, [0, 2]), 0, (
        (_p("x", rxy), _p("y^3", rxy)),
        (_p("0", rxy), _p("x", rxy)),
    ))
    assert matrix_compose(f, GradedMatrix.identity(b)) == f


def test_compose_degree_addition(rx):
    m = FreeModule(rx, [0])
    f = GradedMatrix(m, m, 1, ((_p("x", rx),),))
    g = GradedMatrix(m, m, 2, ((_p("x^2", rx),),))
    h = matrix_compose(f, g)
    assert h.degree == 3 and h.entries[0][0] == _p("x^3", rx)


def test_compose_interface_mismatch(rxy):
    a = FreeModule(rxy, [0])
    b = FreeModule(rxy, [1])
    f = GradedMatrix(b, a, 0, ((_p("x", rxy),),))
    with pytest.raises(GradingError):
        matrix_compose(f, f)


def test_validate_matrix_violation(rxy):
    target = FreeModule(rxy, [0])
    source = FreeModule(rxy, [2])
    bad = GradedMatrix(source, target, 0, ((_p("y", rxy),),), check=False)
    report = validate_matrix(bad)
    assert not report["valid"]
    assert report["violations"][0] == {
        "row": 0, "col": 0, "forced_degree": 2, "actual_degree": 1,
    }


def test_validate_zero_and_good(rx):
    z = GradedMatrix.zero(FreeModule(rx, [5]), FreeModule(rx, [0]), 0)
    assert validate_matrix(z)["valid"]
    p1 = GradedMatrix(FreeModule(rx, [1]), FreeModule(rx, [0]), 0, ((_p("x", rx),),))
    assert validate_matrix(p1)["valid"]


def test_twist_inverse(rxy):
    m = FreeModule(rxy, [0, 2, 5])
    assert m.twist(3).twist(-3) == m


def test_compose_associativity_random(rxy):
    rng = random.Random(5)
    monos = ["x", "y", "x^2", "x*y", "y^2", "0"]
    for _ in range(40):
        degs = [rng.randint(0, 2) for _ in range(3)]
        m0 = FreeModule(rxy, [0])
        m1 = FreeModule(rxy, [degs[0]])
        m2 = FreeModule(rxy, [degs[0] + degs[1]])
        m3 = FreeModule(rxy, [degs[0] + degs[1] + degs[2]])

        def pick(d):
            opts = [t for t in monos if _p(t, rxy).is_zero or _p(t, rxy).degree == d]
            return _p(rng.choice(opts) if opts else "0", rxy)

        f = GradedMatrix(m1, m0, 0, ((pick(degs[0]),),))
        g = GradedMatrix(m2, m1, 0, ((pick(degs[1]),),))
        h = GradedMatrix(m3, m2, 0, ((pick(degs[2]),),))
        assert matrix_compose(matrix_compose(f, g), h) == matrix_compose(f, matrix_compose(g, h))
