"""Acceptance criteria, one check each.

Every comparison is exact: coefficients are integers and must match with zero
tolerance through the pinned order.  Run directly (``python
tests/test_acceptance.py``) or under pytest; either way one PASS/FAIL line is
printed per criterion.
"""

import itertools
import sys
import time

import pytest

from ppfn import products
from ppfn.enumeration import enum_diagonal, enum_perpendicular
from ppfn.partitions import EMPTY, Partition, partitions_up_to
from ppfn.qseries import ProductForm
from ppfn.verify import Bounds, run_suite
from ppfn.vev import DIAGONAL, INF, PERPENDICULAR, BoundaryProblem, _delta, vev_diagonal, vev_infinite, vev_perpendicular

# pinned grids and orders (q-units); tolerance is zero everywhere
BOX_MAX = 4
EXAMPLE_ORDER = 15
FINITE_WALLS = (2, 3)
FINITE_HEIGHTS = (2, 3, 4)
FINITE_BOUNDARY_SIZE = 3
LIMIT_MAX = 4
LIMIT_MU_SIZE = 4
LIMIT_ORDER = 20
INFINITE_SIZE = 2
INFINITE_ORDER = 10
AMPLITUDE_MU_SIZE = 5
AMPLITUDE_MAX = 6
EXPONENT_MU_SIZE = 8
SYMMETRIC_MAX_N = 3
SYMMETRIC_ORDER = 14
DECOMP_MAX = 3
CAUCHY_MAX = 4
CHAIN_MU_SIZE = 3
CHAIN_ORDER = 12
LAW_SAMPLES = 100

RESULTS: dict[int, str] = {}


def _suite(name, bounds):
    rep = run_suite(name, bounds)
    failed = [r for r in rep.results if not r.passed]
    return not failed, f"{name} {len(rep.results) - len(failed)}/{len(rep.results)}"


def criterion_1():
    return _suite("macmahon", Bounds(max=BOX_MAX))


def criterion_2():
    one = Partition([1])
    diag = vev_infinite(BoundaryProblem(DIAGONAL, 2, INF, 2, one, EMPTY, one), EXAMPLE_ORDER)
    perp = vev_infinite(BoundaryProblem(PERPENDICULAR, 2, INF, 2, one, EMPTY, one), EXAMPLE_ORDER)
    cut = 2 * EXAMPLE_ORDER
    diag_closed = ProductForm.build([4], [2, 2], prefactor=6).expand(cut)  # q^3 (1+q)/(1-q)
    perp_closed = ProductForm.build([], [2], prefactor=6).expand(cut)  # q^3/(1-q)
    ok = (diag.cutoff == perp.cutoff == cut and diag.agrees_with(diag_closed) and perp.agrees_with(perp_closed)
          and diag.q_coeffs(5) == [0, 0, 0, 1, 2, 2] and perp.q_coeffs(5) == [0, 0, 0, 1, 1, 1])
    return ok, f"diagonal {diag.q_coeffs(6)}, perpendicular {perp.q_coeffs(6)} through q^{EXAMPLE_ORDER}"


def criterion_3():
    parts = list(partitions_up_to(FINITE_BOUNDARY_SIZE))
    total = bad = 0
    for L, M, N in itertools.product(FINITE_WALLS, FINITE_WALLS, FINITE_HEIGHTS):
        for lam, mu, nu in itertools.product(parts, repeat=3):
            for kind, vf, ef in ((DIAGONAL, vev_diagonal, enum_diagonal), (PERPENDICULAR, vev_perpendicular, enum_perpendicular)):
                p = BoundaryProblem(kind, L, N, M, lam, mu, nu)
                if not _delta(p):
                    continue
                total += 1
                bad += vf(p) != ef(L, N, M, lam, mu, nu, 0)
    return bad == 0 and total > 0, f"{total - bad}/{total} exact polynomial matches"


def criterion_4():
    return _suite("thm13", Bounds(max=LIMIT_MAX, max_size=LIMIT_MU_SIZE, order=LIMIT_ORDER))


def criterion_5():
    return _suite("prop12", Bounds(max_size=INFINITE_SIZE, order=INFINITE_ORDER))


def criterion_6():
    ok, detail = _suite("cor14", Bounds(max=AMPLITUDE_MAX, max_mu=AMPLITUDE_MU_SIZE))
    mus = list(partitions_up_to(EXPONENT_MU_SIZE))
    ident = all(products.exponent_identity(mu) for mu in mus)
    return ok and ident, f"{detail}; exponent identity {len(mus)} partitions"


def criterion_7():
    return _suite("thm15", Bounds(max=SYMMETRIC_MAX_N, max_size=5, order=SYMMETRIC_ORDER))


def criterion_8():
    a = _suite("decomposition", Bounds(max=DECOMP_MAX, max_size=CHAIN_MU_SIZE, order=CHAIN_ORDER))
    b = _suite("cauchy", Bounds(max=CAUCHY_MAX))
    return a[0] and b[0], f"{a[1]}; {b[1]}"


def criterion_9():
    return _suite("commutation", Bounds(count=LAW_SAMPLES))


CRITERIA = {
    1: ("boxed MacMahon vs enumeration", criterion_1),
    2: ("distinguishing example", criterion_2),
    3: ("finite vertex forms vs enumeration", criterion_3),
    4: ("limit-shape product", criterion_4),
    5: ("infinite walls: both kinds agree", criterion_5),
    6: ("double-P1 amplitude and exponent identity", criterion_6),
    7: ("symmetric plane partitions", criterion_7),
    8: ("MacMahon via decomposition, Cauchy, inverse chain", criterion_8),
    9: ("operator-algebra laws", criterion_9),
}


def run_criterion(n):
    title, fn = CRITERIA[n]
    t = time.perf_counter()
    ok, detail = fn()
    line = f"criterion {n} [{title}]: {'PASS' if ok else 'FAIL'} ({detail}; {time.perf_counter() - t:.1f}s)"
    RESULTS[n] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, line = run_criterion(n)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n)[0] for n in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
