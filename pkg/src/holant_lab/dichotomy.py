"""Complexity classification of Hol(a, b) and machine-checkable hardness witnesses."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .cyclo import ONE, ZERO, Cyc12, cyc
from .gadgets import (
    REAL_CASE,
    STARTER_FACTOR,
    InvalidRegion,
    builtin_matrix,
    finisher_set,
    holographic_diag_transform,
    starter_set,
    unary_trace_det,
    vc_simulation_params,
)
from .interp import unary_family_check
from .linalg import det, det2, matvec
from .poly import MPoly

log = logging.getLogger(__name__)

__all__ = [
    "TRACTABLE",
    "PLANAR_ONLY",
    "HARD",
    "NotHard",
    "PreconditionViolation",
    "Coordinates",
    "Classification",
    "NormCertificate",
    "HardnessWitness",
    "classify",
    "classify_xz",
    "coordinates_equivalence_check",
    "distinct_norm_2x2",
    "distinct_norm_3x3",
    "esp_disjunctive",
    "real_ratio_2x2",
    "hardness_witness",
    "real_disjunction_scan",
    "ScanReport",
]

TRACTABLE = "Tractable"
PLANAR_ONLY = "PlanarTractableGeneralHard"
HARD = "Hard"

TWO_I = cyc("2*i")

CITE_DEGENERATE = "[a,1,b] with ab = 1 is degenerate (a tensor product of unary signatures)"
CITE_ZERO = "X = Y = 0: [0,1,0] edges count bipartite 2-colorings"
CITE_XM1 = "X = -1, Y in {0, 2i, -2i}: known polynomial-time family"
CITE_PLANAR = "4X^3 = Y^2: holographic reduction to planar matchgates"
CITE_HOL_0_M1 = "Hol(0,-1) is known to be #P-hard"
CITE_REAL_EQUAL = "#[a,1,a] | [1,0,0,1] for real a outside {0, 1, -1} is known to be #P-hard"
CITE_VC = "counting vertex covers on 3-regular graphs is #P-hard"
CITE_EQUAL_BASE = "#[0,1,0] | [0,1,1,0] is #P-hard and holographically equivalent to a [c,1,c] problem"


class NotHard(ValueError):
    pass


class PreconditionViolation(ValueError):
    pass


@dataclass(frozen=True)
class Coordinates:
    a: Cyc12
    b: Cyc12
    X: Cyc12
    Y: Cyc12
    Z: Cyc12

    @classmethod
    def of(cls, a, b) -> Coordinates:
        a, b = cyc(a), cyc(b)
        X, Y = a * b, a**3 + b**3
        return cls(a, b, X, Y, Y * Y / 4)

    def consistent(self) -> bool:
        again = Coordinates.of(self.a, self.b)
        return again == self and self.Z * 4 == self.Y * self.Y

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("a", "b", "X", "Y", "Z")}


@dataclass(frozen=True)
class Classification:
    verdict: str
    case: int | None
    citation: str | None
    planar: bool
    coords: Coordinates

    def __str__(self) -> str:
        if self.verdict == TRACTABLE:
            return f"Tractable (case {self.case}: {self.citation})"
        if self.verdict == PLANAR_ONLY:
            return f"{PLANAR_ONLY} ({self.citation})"
        return HARD

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "case": self.case,
            "citation": self.citation,
            "planar": self.planar,
            "point": self.coords.to_json(),
        }


def _equal_case(c: Coordinates) -> bool:
    return c.X**3 * 4 == c.Y * c.Y


def classify(a, b, planar: bool = False) -> Classification:
    """Verdict for Hol(a, b) on 3-regular graphs (planar ones when ``planar``)."""
    c = Coordinates.of(a, b)
    if c.X == ONE:
        return Classification(TRACTABLE, 1, CITE_DEGENERATE, planar, c)
    if not c.X and not c.Y:
        return Classification(TRACTABLE, 2, CITE_ZERO, planar, c)
    if c.X == -ONE and c.Y in (ZERO, TWO_I, -TWO_I):
        return Classification(TRACTABLE, 3, CITE_XM1, planar, c)
    if planar and _equal_case(c):
        return Classification(PLANAR_ONLY, None, CITE_PLANAR, planar, c)
    return Classification(HARD, None, None, planar, c)


def classify_xz(X, Z, planar: bool = False) -> str:
    """The same dichotomy stated in (X, Z) with Z = (Y/2)^2."""
    X, Z = cyc(X), cyc(Z)
    if X == ONE or (not X and not Z) or (X == -ONE and Z in (ZERO, -ONE)):
        return TRACTABLE
    if planar and X**3 == Z:
        return PLANAR_ONLY
    return HARD


def coordinates_equivalence_check(a, b) -> bool:
    c = Coordinates.of(a, b)
    return all(classify_xz(c.X, c.Z, p) == classify(a, b, p).verdict for p in (False, True))


# -- norm certificates ---------------------------------------------------------------


@dataclass
class NormCertificate:
    kind: str  # distinct-2x2 | distinct-3x3 | esp-disjunctive | inconclusive
    lhs: Cyc12
    rhs: Cyc12
    gadgets: tuple = ()
    zero_eigenvalue: bool = False
    detail: dict = field(default_factory=dict)

    @property
    def distinct(self) -> bool:
        return self.kind != "inconclusive"

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "gadgets": list(self.gadgets),
            "zero_eigenvalue": self.zero_eigenvalue,
        }
        out.update({k: str(v) for k, v in self.detail.items()})
        return out


def distinct_norm_2x2(tr, dt, gadgets: tuple = ()) -> NormCertificate:
    """Eigenvalues of a 2x2 matrix with this trace and determinant have distinct norms
    when det != 0 and tr^2 conj(det) != conj(tr)^2 det."""
    tr, dt = cyc(tr), cyc(dt)
    lhs = tr * tr * dt.conj()
    rhs = tr.conj() * tr.conj() * dt
    if not dt:
        return NormCertificate("inconclusive", lhs, rhs, gadgets, zero_eigenvalue=True)
    return NormCertificate("distinct-2x2" if lhs != rhs else "inconclusive", lhs, rhs, gadgets)


def distinct_norm_3x3(B, C, D, gadgets: tuple = ()) -> NormCertificate:
    """For x^3 + B x^2 + C x + D: not all roots share a norm when D != 0 and
    C |C|^2 != conj(B) |B|^2 D."""
    B, C, D = cyc(B), cyc(C), cyc(D)
    lhs = C * C * C.conj()
    rhs = B.conj() * B * B.conj() * D
    if not D:
        return NormCertificate("inconclusive", lhs, rhs, gadgets, zero_eigenvalue=True)
    return NormCertificate("distinct-3x3" if lhs != rhs else "inconclusive", lhs, rhs, gadgets)


def real_ratio_2x2(tr, dt, gadgets: tuple = ()) -> NormCertificate:
    """Exact completion of the 2x2 test for a real eigenvalue ratio r.

    With u = tr^2 / det = r + 2 + 1/r, the two eigenvalues share a norm iff u
    is real and 0 <= u <= 4.  So tr^2 conj(det) real and outside
    [0, 4 |det|^2] certifies distinct norms even when the symmetric test
    above is inconclusive.
    """
    tr, dt = cyc(tr), cyc(dt)
    w = tr * tr * dt.conj()
    bound = dt * dt.conj() * 4
    if dt and w.is_real() and (w.sign() < 0 or (w - bound).sign() > 0):
        return NormCertificate("distinct-2x2-real-ratio", w, bound, gadgets)
    return NormCertificate("inconclusive", w, bound, gadgets, zero_eigenvalue=not dt)


def _tr_det(M) -> tuple[Cyc12, Cyc12]:
    return M[0][0] + M[1][1], M[0][0] * M[1][1] - M[0][1] * M[1][0]


def esp_disjunctive(M, delta, gadgets: tuple = ()) -> NormCertificate:
    """One of M, M + delta I has eigenvalues of distinct norm when tr/delta or
    det/delta^2 is not fixed by conjugation."""
    delta = cyc(delta)
    M = [[cyc(v) for v in r] for r in M]
    tr, dt = _tr_det(M)
    shifted = [[M[0][0] + delta, M[0][1]], [M[1][0], M[1][1] + delta]]
    _, dt_shift = _tr_det(shifted)
    if not delta:
        raise PreconditionViolation("delta = 0")
    if not dt:
        raise PreconditionViolation("det(M) = 0")
    if not dt_shift:
        raise PreconditionViolation("det(M + delta I) = 0")
    if not (tr * tr - dt * 4):
        raise PreconditionViolation("discriminant tr(M)^2 - 4 det(M) = 0")
    t_ratio = tr / delta
    d_ratio = dt / (delta * delta)
    if not t_ratio.is_real():
        return NormCertificate("esp-disjunctive", t_ratio, t_ratio.conj(), gadgets, detail={"ratio": "trace"})
    if not d_ratio.is_real():
        return NormCertificate("esp-disjunctive", d_ratio, d_ratio.conj(), gadgets, detail={"ratio": "det"})
    return NormCertificate("inconclusive", t_ratio, t_ratio.conj(), gadgets)


# -- witness steps ---------------------------------------------------------------------
#
# Every recorded check is an inequality lhs != rhs.  Each step name has a
# builder (used while searching) and a replay (used by verify); where possible
# the replay takes an independent route through the numeric gadget matrices.


def _xy_eval(p: MPoly, c: Coordinates) -> Cyc12:
    return p.evaluate(X=c.X, Y=c.Y)


def _real_bcd(j: int, c: Coordinates):
    return tuple(_xy_eval(p, c) for p in REAL_CASE[j])


def _numeric_bcd(j: int, c: Coordinates):
    M = builtin_matrix(j).at(c.a, c.b)
    minors = ZERO
    for p in range(3):
        for q in range(p + 1, 3):
            minors = minors + M[p][p] * M[q][q] - M[p][q] * M[q][p]
    return -(M[0][0] + M[1][1] + M[2][2]), minors, -det(M)


def _starter_factor_xy(j: int, c: Coordinates) -> Cyc12:
    return _xy_eval(STARTER_FACTOR[j][1], c)


def _starter_factor_numeric(j: int, c: Coordinates) -> Cyc12:
    M = builtin_matrix(j).at(c.a, c.b)
    s = [c.a, ONE, c.b]
    ms = matvec(M, s)
    mms = matvec(M, ms)
    full = det([[s[r], ms[r], mms[r]] for r in range(3)])
    k = STARTER_FACTOR[j][0]
    return full / ((c.X - 1) ** k * (c.b**3 - c.a**3))


def _unary_xy(g: int, c: Coordinates):
    tr, dt = unary_trace_det(g)
    return _xy_eval(tr, c), _xy_eval(dt, c)


def _unary_numeric(g: int, c: Coordinates):
    return _tr_det(builtin_matrix(g).at(c.a, c.b))


_ESP_SHIFT = {10: lambda X: X - 1, 13: lambda X: (X - 1) ** 2}


def _esp_parts(g: int, c: Coordinates):
    M = builtin_matrix(g).at(c.a, c.b)
    delta = _ESP_SHIFT[g](c.X)
    tr, dt = _tr_det(M)
    _, dts = _tr_det([[M[0][0] + delta, M[0][1]], [M[1][0], M[1][1] + delta]])
    return delta, tr, dt, dts


def _equal_parts(c: Coordinates):
    omega = c.b / c.a
    a2, b2 = holographic_diag_transform(c.a, c.b, omega)
    assert a2 == b2
    M = builtin_matrix("abEqual").at(a2)
    return a2, M, [a2, ONE]


def _steps(c: Coordinates, independent: bool) -> dict[str, Callable[[Any], tuple[Cyc12, Cyc12]]]:
    bcd = _numeric_bcd if independent else _real_bcd
    h = _starter_factor_numeric if independent else _starter_factor_xy
    unary = _unary_numeric if independent else _unary_xy

    def norm3(j):
        cert = distinct_norm_3x3(*bcd(j, c))
        return cert.lhs, cert.rhs

    def norm2(g):
        cert = distinct_norm_2x2(*unary(g, c))
        return cert.lhs, cert.rhs

    def norm2_real(g):
        cert = real_ratio_2x2(*unary(g, c))
        return cert.lhs, cert.rhs

    def esp_ratio(g, which):
        delta, tr, dt, _ = _esp_parts(g, c)
        r = tr / delta if which == "trace" else dt / (delta * delta)
        return r, r.conj()

    def family(which):
        a2, M, s = _equal_parts(c)
        cert = unary_family_check(M, s)
        if which == "det":
            return cert.det, ZERO
        if which == "norm":
            return cert.lhs, cert.rhs
        if which == "norm_real":
            cert = real_ratio_2x2(M[0][0] + M[1][1], cert.det)
            return cert.lhs, cert.rhs
        return cert.eigvec_det, ZERO

    return {
        "charpoly_D": lambda j: (bcd(j, c)[2], ZERO),
        "norm_3x3": norm3,
        "starter_factor": lambda j: (h(j, c), ZERO),
        "det_2x2": lambda g: (unary(g, c)[1], ZERO),
        "norm_2x2": norm2,
        "norm_2x2_real_ratio": norm2_real,
        "esp_shift": lambda g: (_esp_parts(g, c)[0], ZERO),
        "esp_det": lambda g: (_esp_parts(g, c)[2], ZERO),
        "esp_det_shifted": lambda g: (_esp_parts(g, c)[3], ZERO),
        "esp_disc": lambda g: ((lambda p: p[1] * p[1] - p[2] * 4)(_esp_parts(g, c)), ZERO),
        "esp_trace_ratio": lambda g: esp_ratio(g, "trace"),
        "esp_det_ratio": lambda g: esp_ratio(g, "det"),
        "equal_param_nonreal": lambda g: (lambda a2: (a2, a2.conj()))(_equal_parts(c)[0]),
        "family_det": lambda g: family("det"),
        "family_norm": lambda g: family("norm"),
        "family_norm_real_ratio": lambda g: family("norm_real"),
        "family_eigvec": lambda g: family("eigvec"),
        "finisher_rank": lambda g: (finisher_set(c.a, c.b).cross_det, ZERO),
        "starter_pair": lambda g: (_starter_pair(c, g), ZERO),
        "vc_denominator": lambda g: (_vc_denominator(c, g), ZERO),
    }


def _starter_pair(c: Coordinates, key: str) -> Cyc12:
    F = builtin_matrix("F").at(c.a, c.b)
    s = [c.a, ONE, c.b]
    vec = {
        "Fs": matvec(F, s),
        "FM4s": matvec(F, matvec(builtin_matrix(4).at(c.a, c.b), s)),
        "FM6s": matvec(F, matvec(builtin_matrix(6).at(c.a, c.b), s)),
    }
    left, right = key.split("|")
    return det2(vec[left], vec[right])


def _vc_denominator(c: Coordinates, name: str) -> Cyc12:
    a, b, X = c.a, c.b, c.X
    return {
        "1-ab": 1 - X,
        "a^2": a * a,
        "b(1+ab)": b * (1 + X),
        "ab-1": X - 1,
        "a": a,
        "b": b,
    }[name]


# steps whose check is "lhs real and outside [0, rhs]" rather than lhs != rhs
_OUTSIDE = {"norm_2x2_real_ratio", "family_norm_real_ratio"}


@dataclass
class Step:
    step: str
    gadget: Any
    lhs: Cyc12
    rhs: Cyc12

    @property
    def relation(self) -> str:
        return "outside[0,rhs]" if self.step in _OUTSIDE else "ne"

    @property
    def passed(self) -> bool:
        if self.step in _OUTSIDE:
            return self.lhs.is_real() and (self.lhs.sign() < 0 or (self.lhs - self.rhs).sign() > 0)
        return self.lhs != self.rhs

    def to_json(self) -> dict:
        out = {
            "step": self.step,
            "gadget": self.gadget,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "outcome": "pass" if self.passed else "fail",
        }
        if self.step in _OUTSIDE:
            out["relation"] = self.relation
        return out


@dataclass
class HardnessWitness:
    coords: Coordinates
    classification: Classification
    trail: list[Step]
    terminal: dict
    citations: list[str]

    @property
    def kind(self) -> str:
        return self.terminal["kind"]

    @property
    def is_anomaly(self) -> bool:
        return self.kind == "anomaly"

    def to_json(self) -> dict:
        return {
            "point": self.coords.to_json(),
            "classification": self.classification.to_json(),
            "trail": [s.to_json() for s in self.trail],
            "terminal": self.terminal,
            "citations": self.citations,
        }

    def verify(self) -> bool:
        """Replay every recorded check and confirm the terminal is supported."""
        if not self.coords.consistent():
            return False
        steps = _steps(self.coords, independent=True)
        for s in self.trail:
            lhs, rhs = steps[s.step](s.gadget)
            if (lhs, rhs) != (s.lhs, s.rhs):
                log.warning("step %s/%s replays to %s vs %s", s.step, s.gadget, lhs, rhs)
                return False
        return self.is_anomaly or _terminal_supported(self)


def _terminal_supported(w: HardnessWitness) -> bool:
    """All required steps for the terminal's gadgets pass, and at least one alternative does."""
    term = w.terminal
    if term["kind"] == "citation":
        return True

    def relevant(s: Step) -> bool:
        return s.gadget in term["gadgets"] or s.step in _SHARED_STEPS

    required = [s for s in w.trail if s.step in term["required_steps"] and relevant(s)]
    alternatives = [s for s in w.trail if s.step in term.get("alternative_steps", ()) and relevant(s)]
    if {s.step for s in required} != set(term["required_steps"]) or not all(s.passed for s in required):
        return False
    return not term.get("alternative_steps") or any(s.passed for s in alternatives)


_SHARED_STEPS = {"finisher_rank", "starter_pair", "vc_denominator"}


def _record(trail: list[Step], steps, name: str, gadget) -> Step:
    lhs, rhs = steps[name](gadget)
    st = Step(name, gadget, lhs, rhs)
    trail.append(st)
    return st


def _steps_lookup(trail: list[Step], name: str, gadget) -> Step:
    return next(s for s in trail if s.step == name and s.gadget == gadget)


def _vc_terminal(c: Coordinates, trail: list[Step], steps) -> dict:
    vc = vc_simulation_params(c.a, c.b)
    names = {1: ["1-ab", "a^2", "b(1+ab)", "ab-1"], 2: ["b"], 3: ["a"]}[vc.case]
    # case 2 may have swapped the roles of a and b
    if vc.case == 2 and not c.b:
        names = ["a"]
    for n in names:
        _record(trail, steps, "vc_denominator", n)
    return vc.to_json()


def hardness_witness(a, b) -> HardnessWitness:
    """Replay the case analysis at a concrete Hard point and record every check."""
    cls = classify(a, b, planar=False)
    if cls.verdict != HARD:
        raise NotHard(f"({a}, {b}) is {cls}")
    c = cls.coords
    steps = _steps(c, independent=False)
    trail: list[Step] = []
    citations: list[str] = []

    def done(terminal: dict) -> HardnessWitness:
        return HardnessWitness(c, cls, trail, terminal, citations)

    if _equal_case(c):
        a2 = _equal_parts(c)[0]
        nonreal = _record(trail, steps, "equal_param_nonreal", "abEqual")
        if not nonreal.passed:
            citations.append(CITE_REAL_EQUAL)
            return done({"kind": "citation", "transformed_a": str(a2), "reason": CITE_REAL_EQUAL})
        checks = [_record(trail, steps, n, "abEqual") for n in ("family_det", "family_eigvec")]
        norm = _record(trail, steps, "family_norm", "abEqual")
        if not norm.passed:
            norm = _record(trail, steps, "family_norm_real_ratio", "abEqual")
        if all(s.passed for s in checks) and norm.passed:
            citations.append(CITE_EQUAL_BASE)
            return done({
                "kind": "ab-equal-unary",
                "gadgets": ["abEqual"],
                "transformed_a": str(a2),
                "required_steps": ["equal_param_nonreal", "family_det", "family_eigvec"],
                "alternative_steps": ["family_norm", "family_norm_real_ratio"],
            })
        return done({"kind": "anomaly", "reason": "equal-case family check inconclusive", "state": c.to_json()})

    if c.X.is_real() and c.Y.is_real():
        if not c.X and c.Y == -ONE:
            citations.append(CITE_HOL_0_M1)
            return done({"kind": "citation", "reason": CITE_HOL_0_M1})
        for j in (4, 7, 8, 9):
            checks = [_record(trail, steps, n, j) for n in ("charpoly_D", "norm_3x3", "starter_factor")]
            if all(s.passed for s in checks):
                fin = finisher_set(c.a, c.b)
                _record(trail, steps, "finisher_rank", "F")
                vc = _vc_terminal(c, trail, steps)
                citations.append(CITE_VC)
                return done({
                    "kind": "distinct-3x3",
                    "gadgets": [j],
                    "required_steps": ["charpoly_D", "norm_3x3", "starter_factor", "finisher_rank", "vc_denominator"],
                    "finishers": fin.certificate(),
                    "vc_simulation": vc,
                })
        return done({"kind": "anomaly", "reason": "no real-case gadget applies", "state": c.to_json()})

    def unary_terminal(kind: str, gadgets: list, required: list[str], alternatives: list[str]) -> HardnessWitness:
        try:
            st = starter_set(c.a, c.b)
        except InvalidRegion as exc:
            return done({"kind": "anomaly", "reason": f"starter set invalid: {exc}", "state": c.to_json()})
        for key in st.pair_dets:
            _record(trail, steps, "starter_pair", key)
        vc = _vc_terminal(c, trail, steps)
        citations.append(CITE_VC)
        return done({
            "kind": kind,
            "gadgets": gadgets,
            "required_steps": required + ["starter_pair", "vc_denominator"],
            "alternative_steps": alternatives,
            "starters": st.certificate(),
            "vc_simulation": vc,
        })

    for g in (10, 11, 12, 13, 14, 15, 16):
        d = _record(trail, steps, "det_2x2", g)
        if not d.passed:
            continue
        n = _record(trail, steps, "norm_2x2", g)
        if n.passed:
            return unary_terminal("distinct-2x2", [g], ["det_2x2"], ["norm_2x2"])

    for g, partner in ((10, 11), (13, 14)):
        pre = [_record(trail, steps, n, g) for n in ("esp_shift", "esp_det", "esp_det_shifted", "esp_disc")]
        if not all(s.passed for s in pre):
            continue
        ratios = [_record(trail, steps, n, g) for n in ("esp_trace_ratio", "esp_det_ratio")]
        if any(s.passed for s in ratios):
            return unary_terminal(
                "esp-disjunctive",
                [g, partner],
                ["esp_shift", "esp_det", "esp_det_shifted", "esp_disc"],
                ["esp_trace_ratio", "esp_det_ratio"],
            )

    # a real eigenvalue ratio defeats the symmetric test; settle it exactly
    for g in (10, 11, 12, 13, 14, 15, 16):
        if not _steps_lookup(trail, "det_2x2", g).passed:
            continue
        if _record(trail, steps, "norm_2x2_real_ratio", g).passed:
            return unary_terminal("distinct-2x2-real-ratio", [g], ["det_2x2"], ["norm_2x2", "norm_2x2_real_ratio"])

    log.error("hardness strategy exhausted at %s", c.to_json())
    return done({"kind": "anomaly", "reason": "strategy exhausted", "state": c.to_json()})


# -- real disjunction scan -------------------------------------------------------------


def _int_terms(p: MPoly) -> tuple[int, list[tuple[int, int, int]]]:
    """Total degree and integer (coefficient, i, j) terms of an X, Y polynomial."""
    out, deg = [], 0
    for exps, coeff in p.terms.items():
        assert coeff.is_rational() and coeff.c0.denominator == 1, p
        i, j = exps[2], exps[3]
        deg = max(deg, i + j)
        out.append((int(coeff.c0), i, j))
    return deg, out


def _compile() -> dict[int, list[tuple[int, list]]]:
    table = {}
    for j in (4, 7, 8, 9):
        B, C, D = REAL_CASE[j]
        table[j] = [_int_terms(B), _int_terms(C), _int_terms(D), _int_terms(STARTER_FACTOR[j][1])]
    return table


def _ev(compiled, p: int, q: int, d: int) -> Fraction:
    deg, terms = compiled
    total = 0
    for coeff, i, j in terms:
        total += coeff * p**i * q**j * d ** (deg - i - j)
    return Fraction(total, d**deg)


def _scan_rows(args) -> tuple[dict, list, dict]:
    xs, ys, table = args
    excluded = {"X=1": 0, "4X^3=Y^2": 0, "(X,Y)=(-1,0)": 0, "(X,Y)=(0,-1)": 0}
    winners = {j: 0 for j in table}
    bad = []
    for X in xs:
        for Y in ys:
            if X == 1:
                excluded["X=1"] += 1
                continue
            if 4 * X**3 == Y * Y:
                excluded["4X^3=Y^2"] += 1
                continue
            if X == -1 and Y == 0:
                excluded["(X,Y)=(-1,0)"] += 1
                continue
            if X == 0 and Y == -1:
                excluded["(X,Y)=(0,-1)"] += 1
                continue
            d = X.denominator * Y.denominator
            p, q = X.numerator * Y.denominator, Y.numerator * X.denominator
            for j, (cb, cc, cd, ch) in table.items():
                D = _ev(cd, p, q, d)
                if not D:
                    continue
                B, C = _ev(cb, p, q, d), _ev(cc, p, q, d)
                if B**3 * D == C**3 or not _ev(ch, p, q, d):
                    continue
                winners[j] += 1
                break
            else:
                bad.append((X, Y))
    return excluded, bad, winners


@dataclass
class ScanReport:
    x_range: tuple[Fraction, Fraction]
    y_range: tuple[Fraction, Fraction]
    step: Fraction
    total: int
    excluded: dict
    winners: dict
    counterexamples: list

    @property
    def checked(self) -> int:
        return self.total - sum(self.excluded.values())

    def to_json(self) -> dict:
        return {
            "x_range": [str(v) for v in self.x_range],
            "y_range": [str(v) for v in self.y_range],
            "step": str(self.step),
            "points": self.total,
            "checked": self.checked,
            "excluded": self.excluded,
            "first_success_by_gadget": {str(k): v for k, v in self.winners.items()},
            "citation_points": [["0", "-1"]] if self.excluded["(X,Y)=(0,-1)"] else [],
            "counterexamples": [[str(x), str(y)] for x, y in self.counterexamples],
        }


def _grid(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    count = int((hi - lo) // step)
    return [lo + k * step for k in range(count + 1)]


def real_disjunction_scan(x_range, y_range, step, jobs: int = 1) -> ScanReport:
    """Check on a rational grid that some real-case gadget condition holds at every
    non-excluded point."""
    x_lo, x_hi = (Fraction(v) for v in x_range)
    y_lo, y_hi = (Fraction(v) for v in y_range)
    step = Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    xs, ys = _grid(x_lo, x_hi, step), _grid(y_lo, y_hi, step)
    table = _compile()
    jobs = max(1, min(jobs, len(xs)))
    chunks = [xs[k::jobs] for k in range(jobs)]
    tasks = [(chunk, ys, table) for chunk in chunks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_rows, tasks))
    else:
        parts = [_scan_rows(t) for t in tasks]
    excluded: dict = {}
    winners: dict = {}
    bad: list = []
    for ex, b, w in parts:
        for k, v in ex.items():
            excluded[k] = excluded.get(k, 0) + v
        for k, v in w.items():
            winners[k] = winners.get(k, 0) + v
        bad.extend(b)
    bad.sort()
    return ScanReport((x_lo, x_hi), (y_lo, y_hi), step, len(xs) * len(ys), excluded, winners, bad)
