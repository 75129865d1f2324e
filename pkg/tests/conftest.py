import pytest

from gmf import GF, QQ, GradedRing, parse_polynomial

FP = GF(32003)


@pytest.fixture
def rx():
    return GradedRing(["x"], [1], QQ)


@pytest.fixture
def rxy():
    return GradedRing(["x", "y"], [1, 1], QQ)


@pytest.fixture
def rxyz_p():
    return GradedRing(["x", "y", "z"], [1, 1, 1], FP)


def poly(text, ring):
    return parse_polynomial(text, ring)
