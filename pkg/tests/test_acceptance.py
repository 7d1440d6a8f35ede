"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction

import pytest

from holant_lab.cyclo import ONE, ZERO, Cyc12, cyc
from holant_lab.dichotomy import (
    HARD,
    PLANAR_ONLY,
    TRACTABLE,
    classify,
    coordinates_equivalence_check,
    hardness_witness,
    real_disjunction_scan,
)
from holant_lab.gadgets import REAL_CASE, STARTER_FACTOR, builtin_matrix, finisher_set, verify_identity_suite
from holant_lab.grid import EdgeLabeledGraph, brute_force_tensor, contract, graph_to_grid
from holant_lab.holant import Mod3ViolationAnomaly, holant_eval_graph, solve_tractable, symmetrize
from holant_lab.instances import random_cubic_graph, random_cubic_multigraph
from holant_lab.interp import IterationFamily, run_reduction, unary_family_check

from conftest import naive_holant, random_cyc, random_grid, report_criterion

ERRATUM = "charpoly_M9"


# -- 1 -----------------------------------------------------------------------------


def _identity_run():
    start = time.perf_counter()
    records = verify_identity_suite()
    return records, time.perf_counter() - start


@pytest.mark.xfail(
    strict=True,
    reason="the published B9 omits the -2X^3 term of -tr(M9); the exact check fails by design",
)
def test_criterion_1_identity_catalogue():
    records, elapsed = _identity_run()
    failed = [r.name for r in records if not r.passed]
    ok = not failed and elapsed <= 10
    detail = f"{len(records) - len(failed)}/{len(records)} records exact, {elapsed:.2f}s"
    if failed:
        detail += f"; failing: {', '.join(failed)}"
    report_criterion(1, "identity catalogue", ok, detail)
    assert ok, "\n".join(r.report_line() for r in records if not r.passed)


def test_criterion_1_everything_but_the_erratum():
    records, elapsed = _identity_run()
    by_name = {r.name: r for r in records}
    assert elapsed <= 10
    assert [r.name for r in records if not r.passed] == [ERRATUM]
    assert by_name["charpoly_M9_corrected"].passed
    for name in ("det_M4", "charpoly_M4", "charpoly_M7", "charpoly_M8", "esp_10_11", "esp_13_14",
                 "det_M12_on_curve", "det_M13_at_Xm1", "trace_15_16",
                 "starter_M4", "starter_M7", "starter_M8", "starter_M9"):
        assert by_name[name].passed, name


# -- 2 -----------------------------------------------------------------------------


def test_criterion_2_symmetrization_oracle():
    rng = random.Random(2002)
    start = time.perf_counter()
    graphs = points = naive = 0
    ok = True
    try:
        while graphs < 50:
            n = rng.choice((4, 6, 8, 10))
            g = random_cubic_multigraph(n, rng)
            P = symmetrize(g)
            for k in range(5):
                a, b = random_cyc(rng), random_cyc(rng)
                direct = holant_eval_graph(g, [a, ONE, b])
                ok &= P.evaluate(a, b) == direct
                if k == 0:
                    ok &= naive_holant(g, [a, ONE, b]) == direct
                    naive += 1
                points += 1
            graphs += 1
    except Mod3ViolationAnomaly as exc:
        ok = False
        print("mod-3 assertion fired:", exc)
    elapsed = time.perf_counter() - start
    ok &= elapsed <= 120
    report_criterion(2, "symmetrization oracle", ok,
                     f"{graphs} graphs, {points} points, {naive} naive cross-checks, {elapsed:.1f}s")
    assert ok


# -- 3 -----------------------------------------------------------------------------


def _m4_family() -> IterationFamily:
    fs = finisher_set(2, 3)
    return IterationFamily(builtin_matrix(4).at(2, 3), [2, 1, 3], fs.matrices)


def _random_family(rng: random.Random) -> IterationFamily:
    while True:
        M = [[random_cyc(rng, 3) for _ in range(2)] for _ in range(2)]
        s = [random_cyc(rng, 3), random_cyc(rng, 3)]
        if unary_family_check(M, s).ok:
            return IterationFamily(M, s)


def test_criterion_3_interpolation_end_to_end():
    rng = random.Random(3003)
    start = time.perf_counter()
    runs, grids, ok = 0, 0, True
    while grids < 24:
        grid = random_grid(rng, max_slots=3, max_edges=12)
        if not grid.slots():
            continue
        target = [random_cyc(rng), random_cyc(rng)]
        brute = brute_force_tensor(grid.fill_slots(target)).values[0]
        for fam in (_m4_family(), _random_family(rng)):
            rec = run_reduction(grid, target, fam, extra_checks=2, compare_direct=True)
            ok &= rec.residual_ok and rec.equal and rec.result == brute
            runs += 1
        grids += 1
    elapsed = time.perf_counter() - start
    ok &= elapsed <= 120
    report_criterion(3, "interpolation end-to-end", ok, f"{grids} grids, {runs} reductions, {elapsed:.1f}s")
    assert ok


# -- 4 -----------------------------------------------------------------------------

CATALOGUE = [
    ("1", "1", False, TRACTABLE),
    ("0", "0", False, TRACTABLE),
    ("1", "-1", False, TRACTABLE),
    ("i", "i", False, TRACTABLE),
    ("-i", "-i", False, TRACTABLE),
    ("0", "1", False, HARD),
    ("2", "3", False, HARD),
    ("1+i", "1", False, HARD),
    ("2", "2", True, PLANAR_ONLY),
    ("2", "2", False, HARD),
    ("0", "2", False, HARD),
]


def test_criterion_4_classifier_catalogue():
    mismatches = [(a, b, p) for a, b, p, want in CATALOGUE if classify(cyc(a), cyc(b), p).verdict != want]
    rng = random.Random(4004)
    equiv = sum(coordinates_equivalence_check(random_cyc(rng), random_cyc(rng)) for _ in range(1000))
    ok = not mismatches and equiv == 1000
    report_criterion(4, "classifier catalogue", ok,
                     f"{len(CATALOGUE) - len(mismatches)}/{len(CATALOGUE)} verdicts, {equiv}/1000 equivalence checks")
    assert ok, mismatches


# -- 5 -----------------------------------------------------------------------------


def _bounded(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.randint(1, 5))


def test_criterion_5_witness_completeness():
    rng = random.Random(5005)
    points, anomalies, unverified, nonreal = 0, 0, 0, 0
    kinds: dict[str, int] = {}
    start = time.perf_counter()
    while points < 600:
        if rng.random() < 0.3:
            a, b = Cyc12(_bounded(rng)), Cyc12(_bounded(rng))
        else:
            a = Cyc12(*(_bounded(rng) for _ in range(4)))
            b = Cyc12(*(_bounded(rng) for _ in range(4)))
        if classify(a, b).verdict != HARD:
            continue
        w = hardness_witness(a, b)
        points += 1
        nonreal += not (a.is_real() and b.is_real())
        kinds[w.kind] = kinds.get(w.kind, 0) + 1
        anomalies += w.is_anomaly
        unverified += not w.verify()
    elapsed = time.perf_counter() - start
    ok = anomalies == 0 and unverified == 0 and nonreal > 0
    summary = ", ".join(f"{k}: {v}" for k, v in sorted(kinds.items()))
    report_criterion(5, "witness completeness", ok,
                     f"{points} Hard points ({nonreal} non-real), {anomalies} anomalies, "
                     f"{unverified} failed re-verification, {elapsed:.1f}s; {summary}")
    assert ok


# -- 6 -----------------------------------------------------------------------------


def _disjunction_holds(X: Fraction, Y: Fraction) -> bool:
    """Independent evaluation of the real-case gadget conditions through the polynomial evaluator."""
    x, y = Cyc12(X), Cyc12(Y)
    for j in (4, 7, 8, 9):
        B, C, D = (p.evaluate(X=x, Y=y) for p in REAL_CASE[j])
        k, h = STARTER_FACTOR[j]
        if D and B**3 * D != C**3 and (x - 1) ** k * h.evaluate(X=x, Y=y):
            return True
    return False


def test_criterion_6_real_disjunction_scan():
    start = time.perf_counter()
    rep = real_disjunction_scan((-10, 10), (-10, 10), Fraction(1, 10))
    elapsed = time.perf_counter() - start
    # spot-check the scan with a separate evaluation route
    rng = random.Random(6006)
    spot_bad = 0
    for _ in range(400):
        X, Y = Fraction(rng.randint(-100, 100), 10), Fraction(rng.randint(-100, 100), 10)
        if X == 1 or 4 * X**3 == Y**2 or (X, Y) in ((0, -1), (-1, 0)):
            continue
        spot_bad += not _disjunction_holds(X, Y)
    ok = not rep.counterexamples and elapsed <= 300 and spot_bad == 0 and rep.total == 201 * 201
    report_criterion(6, "real disjunction scan", ok,
                     f"{rep.total} points, {rep.checked} checked, {len(rep.counterexamples)} counterexamples, "
                     f"excluded {rep.excluded}, {elapsed:.1f}s")
    assert ok, rep.counterexamples[:10]


# -- 7 -----------------------------------------------------------------------------


def test_criterion_7_performance():
    g = random_cubic_graph(24, random.Random(7007))
    start = time.perf_counter()
    serial = holant_eval_graph(g, [2, 1, 3], jobs=1)
    elapsed = time.perf_counter() - start
    parallel = holant_eval_graph(g, [2, 1, 3], jobs=4)
    independent = contract(graph_to_grid(g, [2, 1, 3], [1, 0, 0, 1])).values[0]
    same_bytes = str(serial).encode() == str(parallel).encode()
    ok = elapsed <= 60 and same_bytes and serial == independent
    report_criterion(7, "performance", ok,
                     f"24 vertices, 2^23 paired assignments in {elapsed:.2f}s, jobs 1 vs 4 identical: {same_bytes}, "
                     f"matches tensor contraction: {serial == independent}")
    assert ok


# -- 8 -----------------------------------------------------------------------------


def _bipartite_cubic_multigraph(n: int, rng: random.Random) -> EdgeLabeledGraph:
    half = n // 2
    left = [v for v in range(half) for _ in range(3)]
    right = [v for v in range(half, n) for _ in range(3)]
    rng.shuffle(right)
    return EdgeLabeledGraph(n, tuple(zip(left, right)))


def test_criterion_8_tractable_solvers():
    rng = random.Random(8008)
    results = {"X=1": 0, "X=Y=0": 0, "y=0": 0}
    for _ in range(20):
        g = random_cubic_multigraph(rng.choice((2, 4, 6, 8, 10)), rng)
        a = random_cyc(rng) or ONE
        b = a.inverse()
        results["X=1"] += solve_tractable(g, "X=1", a, b) == naive_holant(g, [a, ONE, b])

        n = rng.choice((2, 4, 6, 8, 10))
        g0 = _bipartite_cubic_multigraph(n, rng) if rng.random() < 0.5 else random_cubic_multigraph(n, rng)
        results["X=Y=0"] += solve_tractable(g0, "X=Y=0", ZERO, ZERO) == naive_holant(g0, [ZERO, ONE, ZERO])

        x, z = random_cyc(rng), random_cyc(rng)
        results["y=0"] += solve_tractable(g, "y=0", x, z) == naive_holant(g, [x, ZERO, z])
    ok = all(v == 20 for v in results.values())
    report_criterion(8, "tractable solvers", ok, ", ".join(f"{k}: {v}/20" for k, v in results.items()))
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
