"""Polynomial interpolation: simulating an arbitrary unary signature.

A grid with n SLOT generators has Holant ``sum_i c_i x^i y^(n-i)`` when every
SLOT carries ``[x, y]``.  Filling the SLOTs with n+1 pairwise independent
vectors ``v_k = F M^k s`` (or ``M^k s``) gives a Vandermonde system for the
``c_i``; once they are known the Holant at any target follows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cyclo import ZERO, Cyc12
from .grid import SignatureGrid
from .linalg import Matrix, SingularMatrix, Vector, as_matrix, as_vector, det, det2, matvec, solve

__all__ = [
    "InterpolationError",
    "PreconditionError",
    "SelectionFailure",
    "SingularSystem",
    "IterationFamily",
    "InterpolationPlan",
    "ReductionRecord",
    "FamilyCertificate",
    "select_independent",
    "vandermonde_solve",
    "interpolate_unary_reduction",
    "run_reduction",
    "unary_family_check",
]


class InterpolationError(ArithmeticError):
    pass


class PreconditionError(InterpolationError):
    pass


class SelectionFailure(InterpolationError):
    def __init__(self, message: str, class_counts: list[int] | None = None):
        super().__init__(message)
        self.class_counts = class_counts or []


class SingularSystem(InterpolationError):
    pass


@dataclass
class IterationFamily:
    M: Matrix
    s: Vector
    finishers: list[Matrix] | None = None
    bound: int | None = None

    def __post_init__(self):
        self.M = as_matrix(self.M)
        self.s = as_vector(self.s)
        if self.finishers is not None:
            self.finishers = [as_matrix(f) for f in self.finishers]
        size = len(self.M)
        if any(len(r) != size for r in self.M) or len(self.s) != size:
            raise PreconditionError("M must be square and match the length of s")
        if not det(self.M):
            raise PreconditionError("det(M) = 0")
        if not any(self.s):
            raise PreconditionError("s = 0")
        if self.bound is not None and self.bound < 1:
            raise PreconditionError("bound must be at least 1")
        if self.finishers is None:
            if size != 2:
                raise PreconditionError("unary mode needs a 2x2 recurrence; supply finishers for 3x3")
        else:
            if len(self.finishers) != 3 or any(len(f) != 2 or len(f[0]) != size for f in self.finishers):
                raise PreconditionError(f"binary mode needs three 2x{size} finishers")

    @property
    def binary(self) -> bool:
        return self.finishers is not None

    def vectors(self, count: int) -> list[Vector]:
        """``M^k s`` for k = 0 .. count-1."""
        out, w = [], self.s
        for _ in range(count):
            out.append(w)
            w = matvec(self.M, w)
        return out


@dataclass
class InterpolationPlan:
    finisher: int | None
    ks: list[int]
    points: list[Vector]
    iterations: int

    @property
    def ratios(self) -> list[Cyc12]:
        return [x / y for x, y in self.points]

    def to_json(self) -> dict:
        return {
            "finisher": self.finisher,
            "ks": self.ks,
            "points": [[str(v) for v in p] for p in self.points],
            "ratios": [str(r) for r in self.ratios],
        }


def _class_key(v: Vector):
    """Projective class of a nonzero 2-vector; None marks the class of [1, 0]."""
    return None if not v[1] else v[0] / v[1]


def select_independent(fam: IterationFamily, n: int) -> InterpolationPlan:
    """First n+1 pairwise independent points with nonzero second coordinate."""
    if n < 0:
        raise PreconditionError("n must be non-negative")
    need = n + 1
    bound = fam.bound if fam.bound is not None else (n + 2) ** 3
    finishers = fam.finishers if fam.binary else [None]
    seen: list[dict] = [{} for _ in finishers]
    w = fam.s
    for k in range(bound + 1):
        for idx, f in enumerate(finishers):
            v = matvec(f, w) if f is not None else w
            if not any(v):
                continue
            key = _class_key(v)
            if key is not None and key not in seen[idx]:
                seen[idx][key] = (k, v)
        counts = [len(d) for d in seen]
        if max(counts) >= need:
            best = counts.index(max(counts))
            chosen = sorted(seen[best].values())[:need]
            return InterpolationPlan(
                best if fam.binary else None,
                [k for k, _ in chosen],
                [v for _, v in chosen],
                k + 1,
            )
        w = matvec(fam.M, w)
    raise SelectionFailure(
        f"no finisher reached {need} independent usable points within {bound + 1} iterations "
        f"(classes per finisher: {[len(d) for d in seen]})",
        [len(d) for d in seen],
    )


def _newton_monomial(r: Sequence[Cyc12], w: Sequence[Cyc12]) -> list[Cyc12]:
    """Coefficients of the polynomial through (r_k, w_k), lowest degree first."""
    m = len(r)
    dd = list(w)
    for level in range(1, m):
        for k in range(m - 1, level - 1, -1):
            dd[k] = (dd[k] - dd[k - 1]) / (r[k] - r[k - level])
    coeffs = [ZERO] * m
    coeffs[0] = dd[m - 1]
    # Horner on the Newton form from the top
    for k in range(m - 2, -1, -1):
        shifted = [ZERO] + coeffs[:-1]
        coeffs = [s - r[k] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] = coeffs[0] + dd[k]
    return coeffs


def vandermonde_solve(points: Sequence[Sequence], values: Sequence, n: int) -> list[Cyc12]:
    """Solve ``values_k = sum_i c_i X_k^i Y_k^(n-i)`` for ``c_0 .. c_n``."""
    pts = [as_vector(p) for p in points]
    vals = as_vector(values)
    if len(pts) != n + 1 or len(vals) != n + 1:
        raise PreconditionError(f"need exactly {n + 1} points and values")
    for i in range(len(pts)):
        if not any(pts[i]):
            raise SingularSystem(f"point {i} is zero")
        for j in range(i):
            if not det2(pts[i], pts[j]):
                raise SingularSystem(f"points {j} and {i} are linearly dependent")
    if all(y for _, y in pts):
        ratios = [x / y for x, y in pts]
        scaled = [v / y**n for v, (_, y) in zip(vals, pts)]
        return _newton_monomial(ratios, scaled)
    rows = [[x**i * y ** (n - i) for i in range(n + 1)] for x, y in pts]
    try:
        return solve(rows, vals)
    except SingularMatrix as exc:
        raise SingularSystem(str(exc)) from exc


def _eval_form(coeffs: Sequence[Cyc12], x: Cyc12, y: Cyc12) -> Cyc12:
    n = len(coeffs) - 1
    acc = ZERO
    for i, c in enumerate(coeffs):
        if c:
            acc = acc + c * x**i * y ** (n - i)
    return acc


@dataclass
class ReductionRecord:
    plan: InterpolationPlan | None
    coefficients: list[Cyc12]
    values: list[Cyc12]
    result: Cyc12
    residual_ok: bool
    extra_checked: int = 0
    direct: Cyc12 | None = None

    @property
    def equal(self) -> bool | None:
        return None if self.direct is None else self.direct == self.result

    def to_json(self) -> dict:
        out = {
            "plan": self.plan.to_json() if self.plan else None,
            "coefficients": [str(c) for c in self.coefficients],
            "values": [str(v) for v in self.values],
            "interpolated": str(self.result),
            "residual_ok": self.residual_ok,
            "extra_points_checked": self.extra_checked,
        }
        if self.direct is not None:
            out["direct"] = str(self.direct)
            out["verdict"] = "EQUAL" if self.equal else "DIFFER"
        return out


def _point_for(fam: IterationFamily, plan: InterpolationPlan, w: Vector) -> Vector:
    return matvec(fam.finishers[plan.finisher], w) if fam.binary else w


def run_reduction(
    grid: SignatureGrid,
    target: Sequence,
    fam: IterationFamily,
    method: str = "contract",
    extra_checks: int = 0,
    compare_direct: bool = False,
) -> ReductionRecord:
    """Interpolate the Holant of ``grid`` with SLOTs set to ``target``.

    ``extra_checks`` additional iterates beyond the plan are evaluated and
    checked against the recovered coefficients.
    """
    from .holant import holant_eval_grid

    x, y = as_vector(target)
    n = len(grid.slots())
    direct = holant_eval_grid(grid.fill_slots([x, y]), method) if compare_direct else None
    if n == 0:
        value = holant_eval_grid(grid, method)
        return ReductionRecord(None, [value], [value], value, True, 0, direct)
    plan = select_independent(fam, n)
    values = [holant_eval_grid(grid.fill_slots(p), method) for p in plan.points]
    coeffs = vandermonde_solve(plan.points, values, n)
    residual_ok = all(_eval_form(coeffs, px, py) == v for (px, py), v in zip(plan.points, values))
    checked = 0
    if extra_checks:
        last = max(plan.ks)
        ws = fam.vectors(last + 1 + extra_checks)[last + 1 :]
        for w in ws:
            p = _point_for(fam, plan, w)
            if not any(p):
                continue
            residual_ok &= _eval_form(coeffs, *p) == holant_eval_grid(grid.fill_slots(p), method)
            checked += 1
    return ReductionRecord(plan, coeffs, values, _eval_form(coeffs, x, y), residual_ok, checked, direct)


def interpolate_unary_reduction(
    grid: SignatureGrid, target: Sequence, fam: IterationFamily, method: str = "contract"
) -> Cyc12:
    """Holant of ``grid`` with every SLOT set to ``target``, computed only from
    oracle calls at the family's signatures."""
    rec = run_reduction(grid, target, fam, method)
    if not rec.residual_ok:
        raise InterpolationError("recovered coefficients do not reproduce the oracle values")
    return rec.result


@dataclass
class FamilyCertificate:
    ok: bool
    det: Cyc12
    lhs: Cyc12
    rhs: Cyc12
    eigvec_det: Cyc12
    reasons: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "certificate" if self.ok else "inconclusive"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "det": str(self.det),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "eigvec_det": str(self.eigvec_det),
            "reasons": self.reasons,
        }


def unary_family_check(M: Sequence[Sequence], s: Sequence) -> FamilyCertificate:
    """Exact sufficient test that ``M^k s`` yields unboundedly many independent vectors.

    Needs det M != 0, eigenvalues of distinct norm (so their ratio is not a
    root of unity), and s not an eigenvector.
    """
    M, s = as_matrix(M), as_vector(s)
    tr = M[0][0] + M[1][1]
    d = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    lhs = tr * tr * d.conj()
    rhs = tr.conj() * tr.conj() * d
    ev = det2(matvec(M, s), s)
    reasons = []
    if not d:
        reasons.append("det(M) = 0")
    if lhs == rhs:
        reasons.append("eigenvalue norms not certified distinct")
    if not ev:
        reasons.append("s is an eigenvector of M")
    return FamilyCertificate(not reasons, d, lhs, rhs, ev, reasons)

