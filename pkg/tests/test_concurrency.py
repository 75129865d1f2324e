"""The stated concurrency contract: immutable values, pure operations,
safe concurrent invocation.  Exercised with a thread pool computing the
same quantities as a serial baseline."""

from concurrent.futures import ThreadPoolExecutor

from gmf import QQ, GradedRing, parse_polynomial
from gmf.equivalence import check_full_faithfulness, cok, stabilize
from gmf.mf import MatrixFactorization, mf_hom_dim
from gmf.modules import dsing_hom, hilbert_function, residue_field_presentation


def test_concurrent_hom_dimensions_match_serial(rx):
    w = parse_polynomial("x^5", rx)
    objs = [
        MatrixFactorization.from_factor(w, parse_polynomial(f"x^{i}", rx))
        for i in (1, 2, 3, 4)
    ]
    jobs = [(x, y, p) for x in objs for y in objs for p in (-2, -1, 0, 1, 2)]
    serial = [mf_hom_dim(x, y, p) for x, y, p in jobs]
    with ThreadPoolExecutor(max_workers=8) as pool:
        parallel = list(pool.map(lambda j: mf_hom_dim(*j), jobs))
    assert serial == parallel


def test_concurrent_module_computations(rxy):
    w = parse_polynomial("x^3+y^3", rxy)
    k = residue_field_presentation(rxy, w)
    x = stabilize(k).mf
    m = cok(x).module

    def job(p):
        return (
            dsing_hom(m, m, p).dimension,
            tuple(hilbert_function(m, 0, 6)),
        )

    shifts = list(range(-3, 4)) * 3
    serial = [job(p) for p in shifts]
    with ThreadPoolExecutor(max_workers=6) as pool:
        parallel = list(pool.map(job, shifts))
    assert serial == parallel


def test_concurrent_bridge_check(rx):
    w = parse_polynomial("x^4", rx)
    objs = [
        MatrixFactorization.from_factor(w, parse_polynomial(f"x^{i}", rx))
        for i in (1, 2, 3)
    ]

    def job(pair):
        x, y = pair
        return check_full_faithfulness(x, y, range(-2, 3))["match"]

    pairs = [(x, y) for x in objs for y in objs]
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(job, pairs))
    assert all(results)
