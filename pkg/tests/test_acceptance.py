"""End-to-end acceptance checks for the whole pipeline.

Nine criteria, one test each, every one under a wall-clock budget.  Each
test prints a single pass/fail line; `pytest -v` shows the same verdict
through the test names.
"""

import math
import random
import time
from contextlib import contextmanager

from forest_cycles import (boundary, concat, d, grade, is_admissible,
                           multiple_log_series, phi, simplex_integral, star,
                           tau, tau_trees, tree_sum, verify_bounding,
                           verify_chain_map, z_from_x)
from forest_cycles.cli import random_forest
from forest_cycles.forest_algebra import forest_sum
from forest_cycles.hybrid import load_fixture, topological_part
from forest_cycles.numerics import check_diffLi, eval_topological_sum
from forest_cycles.tau import check_decomposable, check_internal_cancellation
from helpers import bare, csum, om, quiet_cycling_log, xspec


@contextmanager
def criterion(n, label, limit):
    t0 = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"criterion {n} ({label}): FAIL")
        raise
    elapsed = time.monotonic() - t0
    if elapsed >= limit:
        print(f"criterion {n} ({label}): FAIL (took {elapsed:.2f}s, limit {limit}s)")
        raise AssertionError(f"criterion {n} exceeded {limit}s: {elapsed:.2f}s")
    print(f"criterion {n} ({label}): PASS ({elapsed:.2f}s < {limit}s)")


def test_criterion_1_forest_dga_laws():
    with criterion(1, "forest differential laws", 10.0):
        rng = random.Random(20260823)
        forests = [random_forest(rng) for _ in range(200)]
        sums = [forest_sum([(F, 1)]) for F in forests]
        for S in sums:
            assert d(d(S)).is_zero()
        for A, B in zip(sums[0::2], sums[1::2]):
            if A.is_zero() or B.is_zero():
                continue
            eA = grade(A.terms()[0])[0]
            lhs = d(star(A, B))
            rhs = star(d(A), B) + star(A, d(B)).scale((-1) ** eA)
            assert lhs == rhs


def test_criterion_2_cycle_dga_laws():
    with criterion(2, "cycle differential laws", 10.0):
        for m in (2, 3, 4, 5):
            for T in tau_trees(xspec(m)):
                Z = phi(tree_sum(T))
                assert boundary(boundary(Z)).is_zero()
        ca = csum(([bare(u1=1), om(u1=1), om(a=1, u1=-1)], 1))
        cb = csum(([bare(u1=1), om(u1=1), om(b=1, u1=-1)], 1))
        flat = csum(([om(a=1), om(b=1)], 1))
        pairs = [(phi(tau(xspec(2))), ca), (ca, cb), (flat, ca)]
        for A, B in pairs:
            nA = A.terms()[0].n
            lhs = boundary(concat(A, B))
            rhs = concat(boundary(A), B) + concat(A, boundary(B)).scale((-1) ** nA)
            assert lhs == rhs


def test_criterion_3_worked_boundary_fixtures():
    with criterion(3, "worked boundary fixtures", 1.0):
        ca = csum(([bare(u1=1), om(u1=1), om(a=1, u1=-1)], 1))
        assert boundary(ca) == csum(([bare(a=1), om(a=1)], 1))
        cab = csum(([om(u1=-1), om(u1=1, a=1, b=1), om(u1=1, b=1)], 1))
        three_terms = csum(
            ([om(a=1, b=1), om(b=1)], 1),
            ([om(a=1, b=1), om(a=-1)], -1),
            ([om(b=1), om(a=1)], 1),
        )
        assert boundary(cab) == three_terms


def test_criterion_4_chain_map():
    with criterion(4, "chain map on all tree-sum trees", 30.0), \
            quiet_cycling_log():
        total = 0
        for m in (2, 3, 4, 5):
            for T in tau_trees(xspec(m)):
                total += 1
                rep = verify_chain_map(T)
                assert rep.passed, f"m={m}: {rep.difference}"
        assert total == 22


def test_criterion_5_tau_combinatorics():
    with criterion(5, "tree sum combinatorics", 10.0):
        for m, count in [(2, 1), (3, 2), (4, 5), (5, 14), (6, 42), (7, 132)]:
            assert len(tau(xspec(m))) == count
        for m in (2, 3, 4, 5):
            assert check_internal_cancellation(xspec(m)).passed
        for m in (3, 4, 5):
            assert check_decomposable(xspec(m)).all_two_trees


def test_criterion_6_admissibility():
    with criterion(6, "admissibility of tree images", 30.0):
        for m in (2, 3, 4):
            for t, _ in phi(tau(xspec(m))):
                rep = is_admissible(t)
                assert rep.admissible, rep.certificate


def test_criterion_7_bounding_identities():
    with criterion(7, "bounding identities", 5.0):
        for name, scale in (("double_log", 1), ("triple_log", -1)):
            chain, target, meta = load_fixture(name)
            assert target == phi(tau(xspec(meta["tau_m"]))).scale(scale)
            rep = verify_bounding(chain, target)
            assert rep.passed, rep.summary()
            assert not rep.offending


def test_criterion_8_numeric_correspondence():
    with criterion(8, "numeric correspondence", 30.0):
        assert abs(simplex_integral([3.0]) - math.log(2 / 3)) < 1e-9
        for xs in ([3.0], [6.0, 3.0], [12.0, 6.0, 2.0]):
            m = len(xs)
            value = simplex_integral(xs)
            series = multiple_log_series(z_from_x(xs)).real
            assert abs(value - (-1) ** m * series) < 1e-6
        for name in ("double_log", "triple_log"):
            chain, _, meta = load_fixture(name)
            xs = [float(v) for v in meta["xs"]]
            assignment = {f"x{i + 1}": v for i, v in enumerate(xs)}
            value = eval_topological_sum(topological_part(chain), assignment)
            expected = meta["integral_sign"] * simplex_integral(xs)
            assert abs(value - expected) < 1e-6


def test_criterion_9_diff_identity():
    with criterion(9, "difference quotient identity", 5.0):
        points = [(0.3, 0.4), (0.2, 0.3), (-0.4, 0.25), (0.5, -0.35), (0.45, 0.45)]
        for x, y in points:
            assert check_diffLi(x, y) < 1e-5
