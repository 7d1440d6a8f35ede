from __future__ import annotations

import random

import numpy as np
import pytest

from holant_lab.cyclo import ONE, ZERO, ZETA, I, cyc
from holant_lab.gadgets import (
    B9_CORRECTED,
    PUBLISHED_REAL_CASE,
    REAL_CASE,
    STARTER_FACTOR,
    InvalidRegion,
    NotCubeRoot,
    UnknownGadget,
    builtin_matrix,
    finisher_set,
    gadget_ids,
    holographic_diag_transform,
    starter_set,
    vc_simulation_params,
    verify_identity_suite,
)
from holant_lab.linalg import det, matvec
from holant_lab.poly import ab_to_xy, poly_charpoly

from conftest import random_cyc, to_complex


def test_builtin_matrix_examples():
    m4 = builtin_matrix(4).at(cyc(2), cyc(3))
    assert m4[0] == [cyc(8), cyc(4), cyc(3)]
    m10 = builtin_matrix(10).at(cyc(2), cyc(3))
    assert m10 == [[cyc(9), cyc(11)], [cyc(7), cyc(28)]]
    assert builtin_matrix("M6").id == 6
    assert builtin_matrix("vc2x2").id == "abEqual"
    for gid in (1, 2, 3, 17, "nope"):
        with pytest.raises(UnknownGadget):
            builtin_matrix(gid)
    assert set(range(4, 17)) <= set(gadget_ids())


def test_numeric_matrices_match_symbolic(rng):
    # det of the numeric matrix equals the symbolic det evaluated at the point
    from holant_lab.poly import poly_det

    for gid in range(4, 17):
        entry = builtin_matrix(gid)
        a, b = random_cyc(rng), random_cyc(rng)
        used = poly_det(entry.matrix).variables()
        point = {k: v for k, v in (("a", a), ("b", b)) if k in used}
        assert det(entry.at(a, b)) == poly_det(entry.matrix).evaluate(**point)


def test_identity_suite():
    records = verify_identity_suite()
    names = {r.name: r for r in records}
    for key in ("det_M4", "esp_10_11", "trace_15_16", "charpoly_M9_corrected"):
        assert names[key].passed, names[key].report_line()
    failed = [r.name for r in records if not r.passed]
    # the published B9 lacks the -2X^3 term; the corrected record passes
    assert failed == ["charpoly_M9"]
    assert "FAIL" in names["charpoly_M9"].report_line()


def test_b9_erratum_by_direct_trace(rng):
    M9 = builtin_matrix(9).matrix
    B = ab_to_xy(poly_charpoly(M9)[0])
    assert B == B9_CORRECTED
    assert B != PUBLISHED_REAL_CASE[9][0]
    # numeric confirmation: -trace at a random point
    a, b = random_cyc(rng), random_cyc(rng)
    m = builtin_matrix(9).at(a, b)
    X, Y = a * b, a**3 + b**3
    assert -(m[0][0] + m[1][1] + m[2][2]) == B9_CORRECTED.evaluate(X=X, Y=Y)


def test_real_case_matches_numeric_charpoly(rng):
    for j in (4, 7, 8, 9):
        for _ in range(3):
            a, b = random_cyc(rng), random_cyc(rng)
            m = np.array([[to_complex(v) for v in row] for row in builtin_matrix(j).at(a, b)])
            coeffs = np.poly(m)  # x^3 + B x^2 + C x + D
            X, Y = a * b, a**3 + b**3
            for k, p in enumerate(REAL_CASE[j]):
                exact = to_complex(p.evaluate(X=X, Y=Y))
                assert abs(coeffs[k + 1] - exact) <= 1e-6 * max(1.0, abs(exact))


def test_starter_factor_numeric(rng):
    for j, (k, h) in STARTER_FACTOR.items():
        a, b = random_cyc(rng), random_cyc(rng)
        M = builtin_matrix(j).at(a, b)
        s = [a, ONE, b]
        cols = [s, matvec(M, s), matvec(M, matvec(M, s))]
        d = det([[cols[c][r] for c in range(3)] for r in range(3)])
        X, Y = a * b, a**3 + b**3
        assert d == (X - 1) ** k * (b**3 - a**3) * h.evaluate(X=X, Y=Y)


def test_finisher_set_examples():
    fs = finisher_set(2, 3)
    assert fs.branch == "ab!=0" and fs.reduced_det == cyc(-95)
    assert fs.cross_det != 0
    fs0 = finisher_set(0, 2)
    assert fs0.branch == "ab=0" and fs0.swapped
    with pytest.raises(InvalidRegion):
        finisher_set(1, 1)
    with pytest.raises(InvalidRegion):
        finisher_set(1, ZETA**4)


def test_finisher_cross_det_nonzero_on_random_points():
    rng = random.Random(99)
    checked = 0
    while checked < 100:
        a, b = random_cyc(rng), random_cyc(rng)
        if a * b == ONE or a**3 == b**3:
            continue
        fs = finisher_set(a, b)
        # independent: float determinant of the cross products of the float matrices
        crosses = []
        for m in fs.matrices:
            r0 = np.array([to_complex(v) for v in m[0]])
            r1 = np.array([to_complex(v) for v in m[1]])
            crosses.append(np.cross(r0, r1))
        approx = np.linalg.det(np.array(crosses))
        hadamard = float(np.prod([np.linalg.norm(c) for c in crosses]))
        assert abs(approx - to_complex(fs.cross_det)) <= 1e-9 * max(1.0, hadamard)
        assert fs.cross_det != 0
        checked += 1


def test_starter_set_examples():
    st = starter_set(2, 3)
    assert all(v != 0 for v in st.pair_dets.values())
    starter_set(0, 2)
    with pytest.raises(InvalidRegion):
        starter_set(1, 1)


def test_vc_simulation_examples():
    p = vc_simulation_params(1, 2)
    assert p.case == 1
    assert p.unaries["theta"] == [cyc(-3), cyc(3)]
    assert p.unaries["gamma"] == [cyc(-1), cyc("1/6")]
    assert p.unaries["rho"] == [cyc(-2), ONE]
    assert p.claimed_output == [ZERO, ONE, ONE]

    p = vc_simulation_params(0, 2)
    assert p.case == 2 and p.unaries["theta"] == [cyc(2), cyc("1/2")]
    assert p.claimed_output == [cyc("1/2"), ONE, cyc(4)]
    assert p.next_step is not None and p.next_step.case == 1

    p = vc_simulation_params(I, I)
    assert p.case == 3
    assert p.unaries["theta"] == [(6 * I).inverse(), -I / 24]
    assert p.unaries["gamma"] == [3 * I, I]
    assert p.claimed_output == [ZERO, ONE, cyc("-5/2") * I]
    with pytest.raises(InvalidRegion):
        vc_simulation_params(1, 1)
    with pytest.raises(InvalidRegion):
        vc_simulation_params(0, 0)


def test_holographic_transform():
    assert holographic_diag_transform(2, 3, 1) == (cyc(2), cyc(3))
    w = ZETA**4
    assert holographic_diag_transform(1, w, w) == (w * w, w * w)
    with pytest.raises(NotCubeRoot):
        holographic_diag_transform(1, 2, I)
