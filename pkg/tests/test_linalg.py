import os
import random
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from gmf import GF, QQ
from gmf import linalg
from gmf._kernels import HAVE_NUMBA, rref_modp_numpy

FP = GF(32003)


def _random_dense(rng, m, n, p):
    return np.array([[rng.randrange(p) if rng.random() < 0.5 else 0 for _ in range(n)] for _ in range(m)], dtype=np.int64)


def test_rref_rank_modp_matches_fraction_rank():
    rng = random.Random(9)
    for _ in range(30):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        a = _random_dense(rng, m, n, 11)
        gf = GF(11)
        r1 = linalg.rank(gf, a)
        r2 = linalg.rank(QQ, [[Fraction(int(x)) for x in row] for row in a])
        # entries < 11 are small enough that the rational rank agrees
        assert r1 == r2


def test_nullspace_is_kernel():
    rng = random.Random(21)
    for field in (FP, QQ):
        for _ in range(25):
            m, n = rng.randint(1, 7), rng.randint(1, 7)
            if field.is_prime_field:
                a = _random_dense(rng, m, n, field.p)
            else:
                a = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(m)]
            basis = linalg.nullspace(field, a)
            mshape, nshape = linalg.shape(field, a)
            assert len(basis) == nshape - linalg.rank(field, a)
            for v in basis:
                assert all(x == field.zero for x in linalg.matvec(field, a, v))


def test_solve_consistency():
    rng = random.Random(3)
    for field in (FP, QQ):
        for _ in range(25):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            if field.is_prime_field:
                a = _random_dense(rng, m, n, field.p)
                x = [rng.randrange(field.p) for _ in range(n)]
            else:
                a = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(m)]
                x = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
            b = linalg.matvec(field, a, x)
            sol = linalg.solve(field, a, b)
            assert sol is not None
            assert linalg.matvec(field, a, sol) == b


def test_solve_reports_inconsistent():
    a = [[Fraction(1)], [Fraction(0)]]
    assert linalg.solve(QQ, a, [Fraction(0), Fraction(1)]) is None


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
def test_numba_and_numpy_kernels_agree():
    from gmf._kernels import _rref_modp_numba

    rng = np.random.default_rng(17)
    p = 32003
    for _ in range(20):
        m, n = rng.integers(1, 30), rng.integers(1, 30)
        a = rng.integers(0, p, size=(m, n), dtype=np.int64)
        r1, piv1 = _rref_modp_numba(a.copy(), p)
        r2, piv2 = rref_modp_numpy(a.copy(), p)
        assert int(r1) == r2
        assert list(piv1[: int(r1)]) == list(piv2[:r2])


def test_pure_numpy_env_flag_selects_fallback():
    code = (
        "import os; os.environ['GMF_PURE_NUMPY']='1';"
        "from gmf import _kernels; assert not _kernels.use_numba();"
        "import numpy as np;"
        "r,p = _kernels.rref_modp(np.array([[2,4],[1,2]],dtype=np.int64), 5);"
        "assert r==1, r; print('ok')"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "ok"
